#include "uqr/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace uqr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Eval {
  Complex inv_newton;  // p'(z) / p(z)
  bool at_root = false;
  bool small = false;  // |p(z)| within the rounding-error bound
};

// Evaluates p'/p at z together with a backward-error test. For |z| > 1 the reversed
// polynomial is used so that the computation never overflows.
Eval evaluate(std::span<const Complex> c, Complex z) {
  const auto D = static_cast<int>(c.size()) - 1;
  Eval e;
  if (std::abs(z) <= 1.0) {
    Complex p = c[D];
    Complex dp = 0.0;
    double bound = std::abs(c[D]);
    const double az = std::abs(z);
    for (int k = D - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[k];
      bound = bound * az + std::abs(c[k]);
    }
    if (p == Complex(0.0)) {
      e.at_root = true;
      return e;
    }
    e.small = std::abs(p) <= 8.0 * kEps * bound * (D + 1);
    e.inv_newton = dp / p;
    return e;
  }
  const Complex w = 1.0 / z;
  Complex p = c[0];
  Complex dp = 0.0;
  double bound = std::abs(c[0]);
  const double aw = std::abs(w);
  for (int k = 1; k <= D; ++k) {
    dp = dp * w + p;
    p = p * w + c[k];
    bound = bound * aw + std::abs(c[k]);
  }
  if (p == Complex(0.0)) {
    e.at_root = true;
    return e;
  }
  e.small = std::abs(p) <= 8.0 * kEps * bound * (D + 1);
  // p(z) = z^D p~(w) with p~ reversed; p'/p = (D p~ - w p~') / (z p~).
  e.inv_newton = (static_cast<double>(D) * p - w * dp) / (z * p);
  return e;
}

std::vector<Complex> newton_polygon_start(std::span<const Complex> c) {
  const auto D = static_cast<int>(c.size()) - 1;
  std::vector<int> idx;
  std::vector<double> lg;
  for (int k = 0; k <= D; ++k) {
    if (c[k] != Complex(0.0)) {
      idx.push_back(k);
      lg.push_back(std::log(std::abs(c[k])));
    }
  }
  // Upper convex hull of (k, log|c_k|).
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (hull.size() >= 2) {
      const auto a = hull[hull.size() - 2];
      const auto b = hull.back();
      const double cross = (idx[b] - idx[a]) * (lg[i] - lg[a]) - (lg[b] - lg[a]) * (idx[i] - idx[a]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<Complex> z;
  z.reserve(static_cast<std::size_t>(D));
  constexpr double kOffset = 0.7;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int k0 = idx[hull[h]];
    const int k1 = idx[hull[h + 1]];
    const int m = k1 - k0;
    const double radius = std::exp((lg[hull[h]] - lg[hull[h + 1]]) / m);
    for (int j = 0; j < m; ++j) {
      const double t = 2.0 * std::numbers::pi * (static_cast<double>(j) / m +
                                                 static_cast<double>(k0) / D) + kOffset;
      z.push_back(std::polar(radius, t));
    }
  }
  return z;
}

}  // namespace

Complex horner(std::span<const Complex> c, Complex z) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly poly_mul(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

int poly_degree(std::span<const Complex> c) {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    if (c[static_cast<std::size_t>(k)] != Complex(0.0)) return k;
  }
  return -1;
}

AberthResult aberth_roots(std::span<const Complex> c, int max_iterations) {
  const auto D = static_cast<int>(c.size()) - 1;
  if (D < 1) throw std::invalid_argument("aberth_roots: degree must be at least 1");
  if (c.back() == Complex(0.0)) throw std::invalid_argument("aberth_roots: leading coefficient is zero");

  AberthResult res;
  if (D == 1) {
    res.roots = {-c[0] / c[1]};
    res.converged = true;
    return res;
  }
  auto& z = res.roots;
  z = newton_polygon_start(c);
  std::vector<char> done(static_cast<std::size_t>(D), 0);
  int remaining = D;
  for (int it = 0; it < max_iterations && remaining > 0; ++it) {
    res.iterations = it + 1;
    for (int i = 0; i < D; ++i) {
      if (done[i]) continue;
      const Eval e = evaluate(c, z[i]);
      if (e.at_root || e.small) {
        done[i] = 1;
        --remaining;
        if (e.at_root) continue;
      }
      Complex s = 0.0;
      for (int j = 0; j < D; ++j) {
        if (j != i) s += 1.0 / (z[i] - z[j]);
      }
      const Complex denom = e.inv_newton - s;
      if (denom == Complex(0.0) || !std::isfinite(std::abs(denom))) continue;
      const Complex corr = 1.0 / denom;
      z[i] -= corr;
      if (!done[i] && std::abs(corr) <= kEps * std::abs(z[i])) {
        done[i] = 1;
        --remaining;
      }
    }
  }
  res.converged = remaining == 0;
  return res;
}

Complex BinaryForm::eval(Complex z, Complex w) const {
  // Horner in whichever affine variable has modulus <= 1.
  const int D = degree();
  if (std::abs(z) <= std::abs(w)) {
    const Complex t = z / w;
    return std::pow(w, D) * horner(coeffs, t);
  }
  const Complex t = w / z;
  Complex acc = 0.0;
  for (int k = 0; k <= D; ++k) acc = acc * t + coeffs[static_cast<std::size_t>(D - k)];
  return std::pow(z, D) * acc;
}

std::vector<std::vector<std::size_t>> cluster_points(std::span<const SpherePoint> points,
                                                     double radius) {
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (chordal_distance(points[i], points[j]) < radius) {
        const auto a = find(i);
        const auto b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = find(i);
    if (slot[r] == n) {
      slot[r] = clusters.size();
      clusters.emplace_back();
    }
    clusters[slot[r]].push_back(i);
  }
  return clusters;
}

SphereRootResult solve_binary_form(const BinaryForm& form, double cluster_radius) {
  const int D = form.degree();
  if (D < 1) throw std::invalid_argument("solve_binary_form: degree must be at least 1");
  double cmax = 0.0;
  for (const auto& v : form.coeffs) cmax = std::max(cmax, std::abs(v));
  if (!(cmax > 0.0) || !std::isfinite(cmax)) {
    throw std::invalid_argument("solve_binary_form: zero or non-finite form");
  }
  // Solve in z when the z^D coefficient dominates the constant one, else in w = 1/z.
  const bool z_chart = std::abs(form.coeffs[static_cast<std::size_t>(D)]) >= std::abs(form.coeffs[0]);
  Poly c(form.coeffs.size());
  for (int k = 0; k <= D; ++k) {
    const auto src = static_cast<std::size_t>(z_chart ? k : D - k);
    c[static_cast<std::size_t>(k)] = form.coeffs[src] / cmax;
  }
  const double snap = kCoefficientSnap;
  int lo = 0;
  while (lo <= D && std::abs(c[static_cast<std::size_t>(lo)]) <= snap) ++lo;
  int hi = D;
  while (hi >= lo && std::abs(c[static_cast<std::size_t>(hi)]) <= snap) --hi;
  const int at_chart_zero = lo;
  const int at_chart_inf = D - hi;

  std::vector<SpherePoint> pts;
  std::vector<Complex> chart_vals;
  std::vector<char> exact;
  const SpherePoint chart_zero = z_chart ? SpherePoint::south(2) : SpherePoint::north(2);
  const SpherePoint chart_inf = z_chart ? SpherePoint::north(2) : SpherePoint::south(2);
  for (int k = 0; k < at_chart_zero; ++k) {
    pts.push_back(chart_zero);
    chart_vals.emplace_back(0.0);
    exact.push_back(1);
  }
  for (int k = 0; k < at_chart_inf; ++k) {
    pts.push_back(chart_inf);
    chart_vals.emplace_back(std::numeric_limits<double>::infinity());
    exact.push_back(1);
  }
  bool converged = true;
  if (hi - lo >= 1) {
    const std::span<const Complex> core(c.data() + lo, static_cast<std::size_t>(hi - lo + 1));
    const AberthResult ar = aberth_roots(core);
    converged = ar.converged;
    for (const auto& r : ar.roots) {
      pts.push_back(z_chart ? stereo_lift(r) : from_homogeneous(Complex(1.0), r));
      chart_vals.push_back(r);
      exact.push_back(0);
    }
  }

  SphereRootResult out;
  out.converged = converged;
  for (const auto& cl : cluster_points(pts, cluster_radius)) {
    SphereRoot root;
    root.multiplicity = static_cast<int>(cl.size());
    const auto ex = std::find_if(cl.begin(), cl.end(), [&](std::size_t i) { return exact[i] != 0; });
    if (ex != cl.end()) {
      root.point = pts[*ex];
    } else if (cl.size() == 1) {
      root.point = pts[cl.front()];
    } else {
      // The centroid of a cluster approximating a multiple root is far more accurate
      // than any single member.
      Complex mean = 0.0;
      for (auto i : cl) mean += chart_vals[i];
      mean /= static_cast<double>(cl.size());
      root.point = z_chart ? stereo_lift(mean) : from_homogeneous(Complex(1.0), mean);
    }
    out.roots.push_back(root);
  }
  return out;
}

}  // namespace uqr
