#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "uqr/sphere.hpp"

namespace uqr {

/// Root-finder failure: a preimage could not be certified by forward evaluation.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

struct EndomorphismDescriptor {
  int dimension = 2;
  int degree = 2;
  double distortion = 1.0;
};

struct PreimageAtom {
  SpherePoint point;
  int index = 1;  ///< local index i(x, f)
};

struct PreimageSet {
  std::vector<PreimageAtom> atoms;
  int index_sum() const noexcept;
};

/// Preimage atoms closer than this (chordal) are one atom; indices add.
constexpr double kPreimageMergeTolerance = 1e-9;
/// Forward-evaluation residual a certified preimage must meet.
constexpr double kPreimageResidual = 1e-8;

/// A uniformly quasiregular self-map of S^n of degree d >= 2.
class Endomorphism {
 public:
  virtual ~Endomorphism() = default;

  virtual EndomorphismDescriptor descriptor() const = 0;
  virtual std::string family() const = 0;

  virtual SpherePoint evaluate(const SpherePoint& x) const = 0;
  /// Complete solution set of f(x) = y with local indices summing to the degree.
  virtual PreimageSet preimages(const SpherePoint& y) const = 0;

  /// Candidate periodic points of period <= max_period. Families without a
  /// periodic-point solver return an empty list.
  virtual std::vector<SpherePoint> periodic_points(int max_period) const;

  int dimension() const { return descriptor().dimension; }
  int degree() const { return descriptor().degree; }
};

using EndomorphismPtr = std::shared_ptr<const Endomorphism>;

/// True iff at `trials` random targets the preimage indices sum to the degree.
bool verify_degree(const Endomorphism& f, int trials, std::uint64_t seed);

/// Distinct points of f^{-1}(a) ∪ ... ∪ f^{-depth}(a) ∪ {a}, stopping early once
/// more than `cap` points are found.
std::vector<SpherePoint> backward_orbit(const Endomorphism& f, const SpherePoint& a, int depth,
                                        std::size_t cap);

/// Cheap exceptional-seed screen: a point whose backward orbit stays tiny.
bool looks_exceptional(const Endomorphism& f, const SpherePoint& a);

/// Merges atoms closer than `tol` (chordal) and adds their indices.
PreimageSet merge_preimages(std::vector<PreimageAtom> atoms, double tol);

}  // namespace uqr
