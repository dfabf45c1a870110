// Acceptance harness: one PASS/FAIL line per criterion; exits 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "oracles.hpp"
#include "uqr/deviation.hpp"
#include "uqr/ergodic.hpp"
#include "uqr/julia.hpp"
#include "uqr/potential.hpp"
#include "uqr/pullback.hpp"
#include "uqr/reference_maps.hpp"

using namespace uqr;

namespace {

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Random seed points at chordal distance >= 0.1 from 0 and infinity.
std::vector<SpherePoint> random_seeds(std::size_t count, std::uint64_t root) {
  std::vector<SpherePoint> out;
  for (const auto& p : sample_uniform(4 * count, root)) {
    if (chordal_distance(p, SpherePoint::north(2)) < 0.1 || chordal_distance(p, SpherePoint::south(2)) < 0.1) continue;
    out.push_back(p);
    if (out.size() == count) break;
  }
  return out;
}

PullbackConfig unpruned() {
  PullbackConfig c;
  c.prune = PruneStrategy::none;
  c.threads = 0;
  return c;
}

PullbackConfig budget(std::size_t atoms, std::uint64_t seed) {
  PullbackConfig c;
  c.max_atoms = atoms;
  c.seed = seed;
  c.threads = 0;
  return c;
}

double chart_real(const SpherePoint& p) {
  const ChartPoint z = stereo_project(p);
  return z.infinite ? NAN : z.value.real();
}

bool contains(const std::vector<SpherePoint>& set, const SpherePoint& p) {
  for (const auto& q : set) {
    if (chordal_distance(p, q) < 1e-8) return true;
  }
  return false;
}

void criterion_1(const TestDictionary& dict) {
  const auto f = maps::power(2);
  const auto circle = DiscreteMeasure::uniform(circle_points(8192));
  double worst = 0.0, slowest = 0.0;
  std::uint64_t i = 0;
  for (const auto& a : random_seeds(20, 101)) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto mu = pullback_iterate(f, a, 12, budget(4096, ++i));
    slowest = std::max(slowest, seconds_since(t0));
    worst = std::max(worst, weak_distance(mu, circle, dict));
  }
  verdict(1, worst < 0.01 && slowest < 10.0,
          "z^2, 20 seeds, k=12, 4096 atoms: max weak distance to circle measure " + fmt("%.3e", worst) +
              " (< 0.01), slowest seed " + fmt("%.2f", slowest) + " s (< 10 s)");
}

void criterion_2(const TestDictionary& dict) {
  bool pass = true;
  std::string detail;
  for (int d : {2, 3}) {
    const auto e = exceptional_scan(maps::power(d), 8, 10);
    const bool exact = e.size() == 2 && contains(e, SpherePoint::north(2)) && contains(e, SpherePoint::south(2));
    pass &= exact;
    detail += "z^" + std::to_string(d) + " scan " + (exact ? "{0, inf}" : std::to_string(e.size()) + " points") + "; ";
    PullbackConfig c = unpruned();
    c.warn_exceptional = false;
    const auto rep = convergence_rate(maps::power(d), SpherePoint::south(2), dict, 8, c);
    pass &= !rep.converged;
    detail += std::string("seed 0 ") + (rep.converged ? "NOT flagged" : "flagged non-convergent") + "; ";
  }
  verdict(2, pass, detail);
}

void criterion_3() {
  const auto f = maps::chebyshev();
  const auto a = random_seeds(1, 303).front();
  const auto mu = pullback_iterate(f, a, 14, unpruned());
  bool pass = true;
  std::string detail = "z^2-2, k=14, moments:";
  for (int m = 1; m <= 6; ++m) {
    const double exact = oracle::arcsine_moment(m);
    const double quad = oracle::arcsine_moment_quadrature(m);
    if (std::abs(exact - quad) > 1e-9) pass = false;
    const double got = mu.integrate([m](const SpherePoint& p) { return std::pow(chart_real(p), m); });
    const double err = std::abs(got - exact) / std::max(1.0, std::abs(exact));
    pass &= err <= 0.03;
    detail += " m" + std::to_string(m) + "=" + fmt("%.4f", got) + "(" + fmt("%g", exact) + ")";
  }
  verdict(3, pass, detail + " within 3%");
}

// Largest dictionary gap between two measures, computed directly.
double level_gap(const TestDictionary& dict, const DiscreteMeasure& a, const DiscreteMeasure& b) {
  const auto x = dict.integrals(a), y = dict.integrals(b);
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

void criterion_4(const TestDictionary& dict) {
  struct Case {
    const char* name;
    RationalMap f;
  };
  const std::vector<Case> cases = {{"z^2", maps::power(2)}, {"z^2-2", maps::chebyshev()}, {"cubic", maps::generic_cubic()}};
  bool decay = true, ordered = true;
  std::string detail;
  const auto seeds = random_seeds(cases.size(), 404);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& f = cases[i].f;
    const auto mu4 = pullback_iterate(f, seeds[i], 4, unpruned());
    const auto mu12 = pullback_iterate(f, seeds[i], 12, unpruned());
    const double b4 = balance_residual(f, mu4, dict, 0), b12 = balance_residual(f, mu12, dict, 0);
    const double i4 = invariance_residual(f, mu4, dict, 0), i12 = invariance_residual(f, mu12, dict, 0);
    decay &= b4 >= 4.0 * b12 && i4 >= 4.0 * i12;
    ordered &= i4 <= b4 + 1e-9 && i12 <= b12 + 1e-9;
    detail += std::string(cases[i].name) + " balance " + fmt("%.2e", b4) + "->" + fmt("%.2e", b12) + ", invariance " +
              fmt("%.2e", i4) + "->" + fmt("%.2e", i12) + "; ";
  }
  // For mu_k = (f^k)^* delta_a / d^k, f_* mu_k = mu_{k-1} and f^* mu_k / d = mu_{k+1}:
  // invariance measures the gap to level k-1, balance the gap to level k+1.
  const auto f = maps::power(2);
  const auto levels = pullback_trajectory(f, seeds[0], 5, unpruned());
  const double inv_err = std::abs(invariance_residual(f, levels[4], dict) - level_gap(dict, levels[3], levels[4]));
  const double bal_err = std::abs(balance_residual(f, levels[4], dict) - level_gap(dict, levels[5], levels[4]));
  detail += std::string("decay >= 4x: ") + (decay ? "yes" : "no") + "; invariance <= balance + 1e-9: " +
            (ordered ? "yes" : "no") + " (z^2 k=4 level-gap identity errors " + fmt("%.1e", inv_err) + ", " +
            fmt("%.1e", bal_err) + ")";
  verdict(4, decay && ordered, detail);
}

// Arcsine mass of the largest chordal ball of radius r centred on the support, which
// sits next to the endpoint 2: [2 - 2 delta, 2] with chordal(2, 2 - delta) = r.
double arcsine_endpoint_ball(double r) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle::chordal(2.0, 2.0 - mid) < r ? lo : hi) = mid;
  }
  return std::acos(1.0 - lo) / std::numbers::pi;
}

void criterion_5() {
  bool pass = true;
  std::string detail = "max ball mass at r=0.01, k=14:";
  const auto names = maps::names();
  const auto seeds = random_seeds(names.size(), 505);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto f = maps::by_name(names[i]);
    const auto cfg = f.degree() == 2 ? unpruned() : budget(16384, 55 + i);
    const auto mu = pullback_iterate(f, seeds[i], 14, cfg);
    const double m = atom_scan(mu, {0.1, 0.01}).back().max_mass;
    pass &= m < 0.01;
    detail += " " + names[i] + "=" + fmt("%.4f", m);
    if (names[i] == "chebyshev") detail += "(arcsine oracle " + fmt("%.4f", arcsine_endpoint_ball(0.01)) + ")";
  }
  verdict(5, pass, detail + " (< 0.01)");
}

void criterion_6() {
  bool pass = true;
  std::string detail = "Hausdorff distance, k=14, 2^14 atoms:";
  const std::vector<std::string> names = {"z2", "chebyshev", "basilica"};
  const auto seeds = random_seeds(names.size(), 606);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto f = maps::by_name(names[i]);
    const auto ref = julia_reference(f, 6, 20000, EscapeTimeOptions{0.01, 1000});
    const auto mu = pullback_iterate(f, seeds[i], 14, unpruned());
    const double h = support_vs_julia(mu, ref, 0.05).hausdorff;
    pass &= h < 0.05;
    detail += " " + names[i] + "=" + fmt("%.4f", h);
    if (h >= 0.05) {
      const auto deep = pullback_iterate(f, seeds[i], 17, unpruned());
      detail += "(k=17: " + fmt("%.4f", support_vs_julia(deep, ref, 0.05).hausdorff) + ")";
    }
  }
  verdict(6, pass, detail + " (< 0.05)");
}

void criterion_7(const TestDictionary& dict) {
  bool pass = true;
  std::string detail;
  {
    const auto f = maps::power(2);
    const auto mu = DiscreteMeasure::uniform(circle_points(4096));
    double worst = 0.0;
    for (const char* name : {"Y[1,1]", "Y[1,-1]"}) {
      std::size_t id = 0;
      while (dict.info(id).name != name) ++id;
      const auto r = mixing_correlation(f, mu, dict.function(id), dict.function(id), 20);
      for (const auto& [k, c] : r.correlations) {
        if (k >= 1) worst = std::max(worst, std::abs(c));
      }
    }
    pass &= worst < 1e-10;
    detail += "z^2 circle, first harmonics, max |corr(1..20)| " + fmt("%.2e", worst) + " (< 1e-10); ";
  }
  {
    const auto f = maps::chebyshev();
    const auto mu = pullback_iterate(f, random_seeds(1, 707).front(), 14, unpruned());
    double worst = 0.0;
    for (int m : {1, 2, 3}) {
      auto T = [m](const SpherePoint& p) {
        return std::cos(m * std::acos(std::clamp(chart_real(p) / 2.0, -1.0, 1.0)));
      };
      const auto r = mixing_correlation(f, mu, T, T, 12);
      for (const auto& [k, c] : r.correlations) {
        if (k >= 10) worst = std::max(worst, std::abs(c));
      }
    }
    pass &= worst < 1e-3;
    detail += "z^2-2 Chebyshev T_1..T_3, max |corr(k>=10)| " + fmt("%.2e", worst) + " (< 1e-3)";
  }
  verdict(7, pass, detail);
}

void criterion_8(const TestDictionary& dict) {
  bool pass = true;
  std::string detail;
  const auto names = maps::names();
  const auto seeds = random_seeds(names.size(), 808);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto f = maps::by_name(names[i]);
    const int k_max = f.degree() == 2 ? 14 : f.degree() == 3 ? 10 : 8;
    const auto r = convergence_rate(f, seeds[i], dict, k_max, unpruned());
    const double line = r.bound_exponent - 0.1;
    pass &= r.fit_valid && r.fitted_exponent >= line;
    detail += names[i] + " " + fmt("%.3f", r.fitted_exponent) + ">=" + fmt("%.3f", line) + "; ";
  }
  verdict(8, pass, "fitted exponent vs (log d)/2 - 0.1: " + detail);
}

void criterion_9() {
  bool pass = true;
  std::string detail;
  double worst_upper = 0.0;
  auto check_upper = [&](const CapacityReport& r) {
    if (r.converged) worst_upper = std::max(worst_upper, r.max_support_potential / r.energy - 1.0);
  };
  {
    const auto r = equilibrium_weights({stereo_lift(Complex(0.3, 0.1)), stereo_lift(Complex(-2.0, 0.7))});
    const double dev = std::max(std::abs(r.weights[0] - 0.5), std::abs(r.weights[1] - 0.5));
    pass &= r.converged && r.kkt_residual < 1e-8 && dev < 1e-8;
    check_upper(r);
    detail += "two-point weight error " + fmt("%.1e", dev) + ", KKT " + fmt("%.1e", r.kkt_residual) + "; ";
  }
  for (std::size_t n : {16u, 256u}) {
    const auto r = equilibrium_weights(circle_points(n), 1e-12);
    double dev = 0.0;
    for (double w : r.weights) dev = std::max(dev, std::abs(w * static_cast<double>(n) - 1.0));
    pass &= r.converged && r.kkt_residual < 1e-8 && dev < 1e-6;
    check_upper(r);
    detail += std::to_string(n) + "-point circle relative weight error " + fmt("%.1e", dev) + ", KKT " +
              fmt("%.1e", r.kkt_residual) + "; ";
  }
  std::mt19937_64 eng(909);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto pool = fibonacci_sphere(300);
  const double h = grid_cell_radius(pool.size());
  int violations = 0, pairs = 0;
  while (pairs < 100) {
    const double keep_big = 0.05 + 0.4 * u(eng), keep_small = keep_big * u(eng);
    std::vector<SpherePoint> big, small;
    for (const auto& p : pool) {
      const double x = u(eng);
      if (x < keep_big) big.push_back(p);
      if (x < keep_small) small.push_back(p);
    }
    if (small.size() < 2) continue;
    ++pairs;
    const auto a = equilibrium_weights(small, 1e-10, h);
    const auto b = equilibrium_weights(big, 1e-10, h);
    check_upper(a);
    check_upper(b);
    if (!(a.converged && b.converged) || a.capacity > b.capacity * (1.0 + 1e-9)) ++violations;
  }
  pass &= violations == 0 && worst_upper <= 1e-6;
  detail += "monotonicity violations " + std::to_string(violations) + "/100; max support potential / W - 1 = " +
            fmt("%.1e", worst_upper) + " (<= 1e-6)";
  verdict(9, pass, detail);
}

void criterion_10() {
  const auto f = maps::power(2);
  const auto dict = TestDictionary::spherical(4);
  DeviationOptions o;
  o.k_max = 10;
  o.seed = 1010;
  o.threads = 0;
  const DeviationScanner scanner(f, dict, fibonacci_sphere(400), o);
  int reports = 0, violations = 0, nonempty = 0;
  double worst_ratio = 0.0;
  for (std::size_t id : dict.ids_up_to_degree(4)) {
    for (double eps : {0.05, 0.1}) {
      for (int k = 0; k <= 10; ++k) {
        const auto r = scanner.report(id, eps, k);
        ++reports;
        if (!r.flagged.empty()) ++nonempty;
        if (!r.within_bound || !r.capacity_converged) ++violations;
        worst_ratio = std::max(worst_ratio, r.capacity / r.bound);
      }
    }
  }
  verdict(10, violations == 0,
          "z^2, 400-point grid, degree <= 4, eps in {0.05, 0.1}, k=0..10: " + std::to_string(violations) + "/" +
              std::to_string(reports) + " reports exceed the bound (" + std::to_string(nonempty) +
              " with flagged points), max capacity/bound " + fmt("%.3f", worst_ratio));
}

void criterion_11(const TestDictionary& dict) {
  const auto f = maps::power(2);
  std::vector<DiscreteMeasure> mus;
  std::uint64_t i = 0;
  for (const auto& a : random_seeds(5, 1111)) mus.push_back(pullback_iterate(f, a, 12, budget(4096, 200 + ++i)));
  double worst = 0.0;
  for (std::size_t a = 0; a < mus.size(); ++a) {
    for (std::size_t b = a + 1; b < mus.size(); ++b) worst = std::max(worst, weak_distance(mus[a], mus[b], dict));
  }
  verdict(11, worst < 0.03, "z^2, 5 seeds, k=12, 4096 atoms: max pairwise weak distance " + fmt("%.3e", worst) +
                                " (< 0.03)");
}

}  // namespace

int main() {
  const auto dict = TestDictionary::spherical(8);
  const std::vector<std::function<void()>> criteria = {
      [&] { criterion_1(dict); }, [&] { criterion_2(dict); }, [] { criterion_3(); },
      [&] { criterion_4(dict); }, [] { criterion_5(); },      [] { criterion_6(); },
      [&] { criterion_7(dict); }, [&] { criterion_8(dict); }, [] { criterion_9(); },
      [] { criterion_10(); },     [&] { criterion_11(dict); }};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      verdict(static_cast<int>(i + 1), false, std::string("error: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
