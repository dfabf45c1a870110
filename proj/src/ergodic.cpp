#include "uqr/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uqr/parallel.hpp"

namespace uqr {

namespace {

// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Per-atom dictionary values of some transform of the atom, reduced in atom order.
template <class Fill>
std::vector<double> reduce_atoms(const DiscreteMeasure& mu, std::size_t width, unsigned threads, Fill&& fill) {
  const auto& atoms = mu.atoms();
  std::vector<double> slots(atoms.size() * width, 0.0);
  parallel_for(atoms.size(), threads, [&](std::size_t i) {
    fill(atoms[i].point, std::span<double>(slots.data() + i * width, width));
  });
  std::vector<double> acc(width, 0.0);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) acc[j] += atoms[i].weight * slots[i * width + j];
  }
  return acc;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Indices of `points` sorted by first coordinate, for band searches.
struct SortedByFirst {
  std::vector<double> key;
  std::vector<std::size_t> order;

  explicit SortedByFirst(const std::vector<SpherePoint>& points) : order(points.size()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return points[a][0] < points[b][0] || (points[a][0] == points[b][0] && a < b);
    });
    key.reserve(points.size());
    for (auto i : order) key.push_back(points[i][0]);
  }
};

}  // namespace

double weak_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const TestDictionary& dict) {
  const auto a = dict.integrals(mu);
  const auto b = dict.integrals(nu);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]) / (1.0 + dict.info(i).grad_sup));
  }
  return m;
}

double balance_residual(const Endomorphism& f, const DiscreteMeasure& mu, const TestDictionary& dict,
                        unsigned threads) {
  const std::size_t width = dict.size();
  const double d = f.degree();
  const auto pushed = reduce_atoms(mu, width, threads, [&](const SpherePoint& a, std::span<double> out) {
    std::vector<double> v(width);
    for (const auto& x : f.preimages(a).atoms) {
      dict.values(x.point, v);
      for (std::size_t j = 0; j < width; ++j) out[j] += x.index * v[j] / d;
    }
  });
  return max_gap(pushed, dict.integrals(mu));
}

double invariance_residual(const Endomorphism& f, const DiscreteMeasure& mu, const TestDictionary& dict,
                           unsigned threads) {
  const auto composed = reduce_atoms(mu, dict.size(), threads, [&](const SpherePoint& a, std::span<double> out) {
    dict.values(f.evaluate(a), out);
  });
  return max_gap(composed, dict.integrals(mu));
}

std::vector<BallMass> atom_scan(const DiscreteMeasure& mu, const std::vector<double>& radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] < radii[i - 1]))) {
      throw std::invalid_argument("atom_scan: radii must be positive and strictly decreasing");
    }
  }
  const auto& atoms = mu.atoms();
  std::vector<SpherePoint> pts;
  pts.reserve(atoms.size());
  for (const auto& a : atoms) pts.push_back(a.point);
  const SortedByFirst sorted(pts);

  std::vector<BallMass> out;
  for (double r : radii) {
    double best = 0.0;
    for (std::size_t c = 0; c < atoms.size(); ++c) {
      const double x0 = pts[c][0];
      auto lo = std::lower_bound(sorted.key.begin(), sorted.key.end(), x0 - r) - sorted.key.begin();
      double mass = 0.0;
      for (auto k = static_cast<std::size_t>(lo); k < sorted.key.size() && sorted.key[k] <= x0 + r; ++k) {
        const std::size_t j = sorted.order[k];
        if (chordal_distance(pts[c], pts[j]) <= r) mass += atoms[j].weight;
      }
      best = std::max(best, mass);
    }
    out.push_back({r, best});
  }
  return out;
}

std::vector<SpherePoint> exceptional_scan(const Endomorphism& f, int depth, int bound) {
  if (depth < 1) throw std::invalid_argument("exceptional_scan: depth must be >= 1");
  if (bound < 1) throw std::invalid_argument("exceptional_scan: bound must be >= 1");
  const int n = f.dimension();
  std::vector<SpherePoint> candidates{SpherePoint::south(n), SpherePoint::north(n)};
  for (const auto& p : f.periodic_points(3)) {
    const bool dup = std::any_of(candidates.begin(), candidates.end(),
                                 [&](const SpherePoint& q) { return chordal_distance(p, q) < 1e-7; });
    if (!dup) candidates.push_back(p);
  }
  std::vector<SpherePoint> out;
  for (const auto& c : candidates) {
    if (backward_orbit(f, c, depth, static_cast<std::size_t>(bound)).size() <= static_cast<std::size_t>(bound)) {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<double> nearest_distances(const std::vector<SpherePoint>& queries, const std::vector<SpherePoint>& set) {
  if (set.empty()) throw std::invalid_argument("nearest_distances: empty reference set");
  const SortedByFirst sorted(set);
  std::vector<double> out(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const double x0 = queries[q][0];
    const auto start = static_cast<std::ptrdiff_t>(
        std::lower_bound(sorted.key.begin(), sorted.key.end(), x0) - sorted.key.begin());
    double best = 4.0;
    // Scan outward in both directions until the first-coordinate gap alone exceeds best.
    for (std::ptrdiff_t k = start; k < static_cast<std::ptrdiff_t>(sorted.key.size()); ++k) {
      if (sorted.key[static_cast<std::size_t>(k)] - x0 > best) break;
      best = std::min(best, chordal_distance(queries[q], set[sorted.order[static_cast<std::size_t>(k)]]));
    }
    for (std::ptrdiff_t k = start - 1; k >= 0; --k) {
      if (x0 - sorted.key[static_cast<std::size_t>(k)] > best) break;
      best = std::min(best, chordal_distance(queries[q], set[sorted.order[static_cast<std::size_t>(k)]]));
    }
    out[q] = best;
  }
  return out;
}

SupportReport support_vs_julia(const DiscreteMeasure& mu_hat, const std::vector<SpherePoint>& julia_reference,
                               double r) {
  if (julia_reference.empty()) throw std::invalid_argument("support_vs_julia: empty Julia reference");
  if (!(r > 0.0)) throw std::invalid_argument("support_vs_julia: r must be positive");
  std::vector<SpherePoint> support;
  support.reserve(mu_hat.size());
  for (const auto& a : mu_hat.atoms()) support.push_back(a.point);

  SupportReport rep;
  rep.support_size = support.size();
  rep.reference_size = julia_reference.size();
  const auto d1 = nearest_distances(support, julia_reference);
  const auto d2 = nearest_distances(julia_reference, support);
  rep.support_to_reference = *std::max_element(d1.begin(), d1.end());
  rep.reference_to_support = *std::max_element(d2.begin(), d2.end());
  rep.hausdorff = std::max(rep.support_to_reference, rep.reference_to_support);
  const auto covered = std::count_if(d2.begin(), d2.end(), [&](double d) { return d <= r; });
  rep.coverage = static_cast<double>(covered) / static_cast<double>(d2.size());
  return rep;
}

MixingReport mixing_correlation(const Endomorphism& f, const DiscreteMeasure& mu_hat, const TestFunction& phi,
                                const TestFunction& psi, int k_max) {
  if (k_max < 0) throw std::invalid_argument("mixing_correlation: k_max must be nonnegative");
  const auto& atoms = mu_hat.atoms();
  const auto K = static_cast<std::size_t>(k_max);
  std::vector<CompensatedSum> cross(K + 1);
  CompensatedSum mphi, mpsi, mphi1, mpsi1;
  for (const auto& a : atoms) {
    const double ps = psi(a.point);
    mpsi.add(a.weight * ps);
    SpherePoint x = a.point;
    for (std::size_t k = 0; k <= K; ++k) {
      const double ph = phi(x);
      if (k == 0) mphi.add(a.weight * ph);
      cross[k].add(a.weight * ph * ps);
      x = f.evaluate(x);
      if (k == 0) mphi1.add(a.weight * phi(x));
    }
    mpsi1.add(a.weight * psi(f.evaluate(a.point)));
  }
  MixingReport rep;
  for (std::size_t k = 0; k <= K; ++k) {
    rep.correlations.emplace_back(static_cast<int>(k), cross[k].value() - mphi.value() * mpsi.value());
  }
  rep.invariance_residual =
      std::max(std::abs(mphi1.value() - mphi.value()), std::abs(mpsi1.value() - mpsi.value()));
  return rep;
}

ConvergenceReport convergence_from_trajectory(const std::vector<DiscreteMeasure>& levels, int degree,
                                              int dimension, const TestDictionary& dict, int window_lo,
                                              int window_hi) {
  if (levels.size() < 2) throw std::invalid_argument("convergence: need at least two levels");
  const int k_max = static_cast<int>(levels.size()) - 1;
  ConvergenceReport rep;
  rep.bound_exponent = std::log(static_cast<double>(degree)) / dimension;
  rep.window_lo = window_lo < 0 ? std::min(1, k_max - 1) : window_lo;
  rep.window_hi = window_hi < 0 ? std::max(rep.window_lo, k_max - 2) : window_hi;
  if (rep.window_lo > rep.window_hi || rep.window_hi >= k_max) {
    throw std::invalid_argument("convergence: window must satisfy lo <= hi < k_max");
  }
  const auto ref = dict.integrals(levels.back());
  for (int k = 0; k < k_max; ++k) {
    const auto cur = dict.integrals(levels[static_cast<std::size_t>(k)]);
    double m = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) m = std::max(m, std::abs(cur[i] - ref[i]) / (1.0 + dict.info(i).grad_sup));
    rep.deviations.emplace_back(k, m);
  }
  rep.final_max_atom = levels.back().max_weight();

  // Deviations at rounding level carry no rate information and are left out.
  std::vector<double> xs, ys;
  for (int k = rep.window_lo; k <= rep.window_hi; ++k) {
    const double dev = rep.deviations[static_cast<std::size_t>(k)].second;
    if (dev > 1e-14) {
      xs.push_back(k);
      ys.push_back(-std::log(dev));
    }
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    rep.fitted_exponent = sxy / sxx;
    if (xs.size() > 2) {
      double rss = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (my + rep.fitted_exponent * (xs[i] - mx));
        rss += e * e;
      }
      rep.exponent_stderr = std::sqrt(rss / (n - 2.0) / sxx);
    }
    rep.fit_valid = true;
  }
  rep.converged = rep.fit_valid && rep.fitted_exponent >= rep.bound_exponent - 0.1 && rep.final_max_atom < 0.5;
  return rep;
}

ConvergenceReport convergence_rate(const Endomorphism& f, const SpherePoint& a, const TestDictionary& dict,
                                   int k_max, const PullbackConfig& config, int window_lo, int window_hi) {
  if (k_max < 2) throw std::invalid_argument("convergence_rate: k_max must be >= 2");
  const auto levels = pullback_trajectory(f, a, k_max, config);
  return convergence_from_trajectory(levels, f.degree(), f.dimension(), dict, window_lo, window_hi);
}

}  // namespace uqr
