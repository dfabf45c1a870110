#include "uqr/endomorphism.hpp"

#include <algorithm>

#include "uqr/polynomial.hpp"

namespace uqr {

int PreimageSet::index_sum() const noexcept {
  int s = 0;
  for (const auto& a : atoms) s += a.index;
  return s;
}

std::vector<SpherePoint> Endomorphism::periodic_points(int /*max_period*/) const { return {}; }

PreimageSet merge_preimages(std::vector<PreimageAtom> atoms, double tol) {
  std::vector<SpherePoint> pts;
  pts.reserve(atoms.size());
  for (const auto& a : atoms) pts.push_back(a.point);
  PreimageSet out;
  for (const auto& cl : cluster_points(pts, tol)) {
    PreimageAtom merged = atoms[cl.front()];
    merged.index = 0;
    for (auto i : cl) merged.index += atoms[i].index;
    out.atoms.push_back(merged);
  }
  return out;
}

bool verify_degree(const Endomorphism& f, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_degree: trials must be positive");
  const int d = f.degree();
  for (const auto& y : sample_uniform(static_cast<std::size_t>(trials), seed, f.dimension())) {
    if (f.preimages(y).index_sum() != d) return false;
  }
  return true;
}

std::vector<SpherePoint> backward_orbit(const Endomorphism& f, const SpherePoint& a, int depth,
                                        std::size_t cap) {
  std::vector<SpherePoint> seen{a};
  std::vector<SpherePoint> frontier{a};
  auto known = [&](const SpherePoint& p) {
    return std::any_of(seen.begin(), seen.end(), [&](const SpherePoint& q) {
      return chordal_distance(p, q) < kPreimageMergeTolerance;
    });
  };
  for (int level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<SpherePoint> next;
    for (const auto& y : frontier) {
      for (const auto& atom : f.preimages(y).atoms) {
        if (known(atom.point)) continue;
        seen.push_back(atom.point);
        next.push_back(atom.point);
        if (seen.size() > cap) return seen;
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

bool looks_exceptional(const Endomorphism& f, const SpherePoint& a) {
  // Exceptional sets of uqr maps of degree >= 2 are finite with at most a handful
  // of points; any other point has a backward orbit of size >= d + 1 after one step.
  return backward_orbit(f, a, 3, 3).size() <= 2;
}

}  // namespace uqr
