#include "uqr/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uqr/random.hpp"

namespace uqr {

std::vector<WeightedAtom> compact_atoms(std::vector<WeightedAtom> atoms, double tol) {
  for (const auto& a : atoms) {
    if (!std::isfinite(a.weight) || a.weight < 0.0) {
      throw std::invalid_argument("measure: weights must be finite and nonnegative");
    }
    if (a.point.dimension() != atoms.front().point.dimension()) {
      throw std::invalid_argument("measure: atoms live on spheres of different dimension");
    }
  }
  std::erase_if(atoms, [](const WeightedAtom& a) { return a.weight == 0.0; });
  std::sort(atoms.begin(), atoms.end(),
            [](const WeightedAtom& a, const WeightedAtom& b) { return a.point.lex_less(b.point); });

  // Sweep on the first coordinate: only atoms whose first coordinates differ by
  // less than tol can be merged.
  std::vector<WeightedAtom> out;
  out.reserve(atoms.size());
  std::vector<char> taken(atoms.size(), 0);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (taken[i]) continue;
    WeightedAtom merged = atoms[i];
    for (std::size_t j = i + 1; j < atoms.size() && atoms[j].point[0] - atoms[i].point[0] < tol; ++j) {
      if (!taken[j] && chordal_distance(atoms[i].point, atoms[j].point) < tol) {
        merged.weight += atoms[j].weight;
        taken[j] = 1;
      }
    }
    out.push_back(merged);
  }

  double total = 0.0;
  for (const auto& a : out) total += a.weight;
  if (!out.empty() && !(total > 0.0)) throw std::invalid_argument("measure: zero total mass");
  for (auto& a : out) a.weight /= total;
  return out;
}

DiscreteMeasure::DiscreteMeasure(std::vector<WeightedAtom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("measure: no atoms");
  atoms_ = compact_atoms(std::move(atoms));
  if (atoms_.empty()) throw std::invalid_argument("measure: zero total mass");
}

DiscreteMeasure DiscreteMeasure::dirac(const SpherePoint& p) { return DiscreteMeasure({{p, 1.0}}); }

DiscreteMeasure DiscreteMeasure::uniform(const std::vector<SpherePoint>& points) {
  std::vector<WeightedAtom> atoms;
  atoms.reserve(points.size());
  for (const auto& p : points) atoms.push_back({p, 1.0});
  return DiscreteMeasure(std::move(atoms));
}

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

double DiscreteMeasure::max_weight() const {
  double m = 0.0;
  for (const auto& a : atoms_) m = std::max(m, a.weight);
  return m;
}

double DiscreteMeasure::integrate(const std::function<double(const SpherePoint&)>& phi) const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight * phi(a.point);
  return s;
}

DiscreteMeasure resample(const DiscreteMeasure& mu, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("resample: count must be positive");
  const auto& atoms = mu.atoms();
  std::vector<double> cdf(atoms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    acc += atoms[i].weight;
    cdf[i] = acc;
  }
  Engine eng(seed);
  std::vector<WeightedAtom> drawn;
  drawn.reserve(count);
  const double w = 1.0 / static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double u = uniform01(eng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    drawn.push_back({atoms[static_cast<std::size_t>(it - cdf.begin())].point, w});
  }
  return DiscreteMeasure(std::move(drawn));
}

}  // namespace uqr
