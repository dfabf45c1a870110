#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "uqr/sphere.hpp"

namespace uqr {

struct WeightedAtom {
  SpherePoint point;
  double weight = 0.0;
};

/// Atoms closer than this (chordal) are merged by compaction.
constexpr double kAtomMergeTolerance = 1e-9;

/// Probability measure with finitely many atoms.
///
/// Every instance is compacted: atoms sorted lexicographically by coordinates,
/// coincident atoms merged with weights added, zero weights dropped and the total
/// renormalized to 1.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;

  /// Compacts `atoms`. Throws std::invalid_argument on negative or non-finite
  /// weights, zero total mass, or mixed dimensions.
  explicit DiscreteMeasure(std::vector<WeightedAtom> atoms);

  static DiscreteMeasure dirac(const SpherePoint& p);
  /// Equal weights on the given points.
  static DiscreteMeasure uniform(const std::vector<SpherePoint>& points);

  const std::vector<WeightedAtom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  int dimension() const noexcept { return atoms_.empty() ? 0 : atoms_.front().point.dimension(); }

  double total_mass() const;
  double max_weight() const;
  /// Σ w φ(x), summed in atom order.
  double integrate(const std::function<double(const SpherePoint&)>& phi) const;

 private:
  std::vector<WeightedAtom> atoms_;
};

/// Sorts, merges atoms within `tol`, drops zero weights and renormalizes.
std::vector<WeightedAtom> compact_atoms(std::vector<WeightedAtom> atoms, double tol = kAtomMergeTolerance);

/// Multinomial resampling: `count` i.i.d. draws proportional to weight, each with
/// weight 1/count (repeated draws merge).
DiscreteMeasure resample(const DiscreteMeasure& mu, std::size_t count, std::uint64_t seed);

}  // namespace uqr
