#include "uqr/julia.hpp"

#include <cmath>
#include <stdexcept>

#include "uqr/random.hpp"

namespace uqr {

double escape_radius(const Poly& p) {
  const int d = poly_degree(p);
  if (d < 2) throw std::invalid_argument("escape radius: polynomial degree must be >= 2");
  double lower = 0.0;
  for (int k = 0; k < d; ++k) lower += std::abs(p[static_cast<std::size_t>(k)]);
  return std::max(2.0, 2.0 * (1.0 + lower) / std::abs(p[static_cast<std::size_t>(d)]));
}

std::vector<SpherePoint> escape_time_boundary(const Poly& p, const EscapeTimeOptions& options) {
  if (!(options.spacing > 0.0)) throw std::invalid_argument("escape time: spacing must be positive");
  if (options.max_iterations < 1) throw std::invalid_argument("escape time: max_iterations must be positive");
  const double R = escape_radius(p);
  const int M = static_cast<int>(std::ceil(R / options.spacing));
  const int W = 2 * M + 1;
  std::vector<char> bounded(static_cast<std::size_t>(W) * static_cast<std::size_t>(W), 0);
  auto at = [&](int i, int j) -> char& {
    return bounded[static_cast<std::size_t>(i + M) * static_cast<std::size_t>(W) + static_cast<std::size_t>(j + M)];
  };
  for (int i = -M; i <= M; ++i) {
    for (int j = -M; j <= M; ++j) {
      Complex z(i * options.spacing, j * options.spacing);
      bool escaped = false;
      for (int it = 0; it < options.max_iterations; ++it) {
        if (std::abs(z) > R) {
          escaped = true;
          break;
        }
        z = horner(p, z);
      }
      at(i, j) = escaped ? 0 : 1;
    }
  }
  std::vector<SpherePoint> out;
  for (int i = -M; i <= M; ++i) {
    for (int j = -M; j <= M; ++j) {
      if (!at(i, j)) continue;
      const bool edge = i == -M || i == M || j == -M || j == M || !at(i - 1, j) || !at(i + 1, j) ||
                        !at(i, j - 1) || !at(i, j + 1);
      if (edge) out.push_back(stereo_lift(Complex(i * options.spacing, j * options.spacing)));
    }
  }
  return out;
}

SpherePoint repelling_fixed_point(const RationalMap& f) {
  double best = 1.0;
  SpherePoint pick;
  bool found = false;
  for (const auto& p : f.periodic_points(1)) {
    const double m = f.multiplier_at_fixed_point(p);
    if (m > best + 1e-6) {
      best = m;
      pick = p;
      found = true;
    }
  }
  if (!found) throw std::runtime_error("no repelling fixed point found");
  return pick;
}

std::vector<SpherePoint> backward_orbit_julia(const RationalMap& f, std::size_t count, std::uint64_t seed) {
  Engine eng(derive_seed(seed, stream::kSeedPoints));
  SpherePoint x = repelling_fixed_point(f);
  std::vector<SpherePoint> out;
  out.reserve(count);
  out.push_back(x);
  while (out.size() < count) {
    const auto pre = f.preimages(x).atoms;
    const auto pick = static_cast<std::size_t>(uniform01(eng) * static_cast<double>(pre.size()));
    x = pre[std::min(pick, pre.size() - 1)].point;
    out.push_back(x);
  }
  return out;
}

std::vector<SpherePoint> julia_reference(const RationalMap& f, std::uint64_t seed, std::size_t count,
                                         const EscapeTimeOptions& options) {
  if (f.is_polynomial()) {
    Poly p = f.numerator();
    const Complex lead = f.denominator().front();
    for (auto& c : p) c /= lead;
    return escape_time_boundary(p, options);
  }
  return backward_orbit_julia(f, count, seed);
}

}  // namespace uqr
