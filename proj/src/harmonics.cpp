#include "uqr/harmonics.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace uqr {

namespace {

constexpr std::size_t kQuadraturePoints = 20000;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// Ascending coefficients of the m-th derivative of the Legendre polynomial P_l.
std::vector<double> legendre_derivative(int l, int m) {
  std::vector<double> p(static_cast<std::size_t>(l) + 1, 0.0);
  for (int k = 0; 2 * k <= l; ++k) {
    p[static_cast<std::size_t>(l - 2 * k)] =
        (k % 2 ? -1.0 : 1.0) * binomial(l, k) * binomial(2 * l - 2 * k, l) / std::pow(2.0, l);
  }
  for (int d = 0; d < m; ++d) {
    std::vector<double> q(p.size() > 1 ? p.size() - 1 : 1, 0.0);
    for (std::size_t j = 1; j < p.size(); ++j) q[j - 1] = static_cast<double>(j) * p[j];
    p = std::move(q);
  }
  return p;
}

// Chebyshev U_l(t) and its derivative.
std::pair<double, double> chebyshev_u(int l, double t) {
  double u0 = 1.0, u1 = 2.0 * t;
  double d0 = 0.0, d1 = 2.0;
  if (l == 0) return {u0, d0};
  for (int k = 1; k < l; ++k) {
    const double u2 = 2.0 * t * u1 - u0;
    const double d2 = 2.0 * u1 + 2.0 * t * d1 - d0;
    u0 = u1;
    u1 = u2;
    d0 = d1;
    d1 = d2;
  }
  return {u1, d1};
}

std::complex<double> ipow(std::complex<double> w, int k) {
  std::complex<double> r = 1.0;
  for (int i = 0; i < k; ++i) r *= w;
  return r;
}

double norm_of(const std::array<double, 4>& g) {
  return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
}

}  // namespace

TestDictionary TestDictionary::spherical(int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("dictionary degree must be >= 1");
  TestDictionary d;
  d.n_ = 2;
  d.max_degree_ = max_degree;
  for (int l = 1; l <= max_degree; ++l) {
    for (int m = -l; m <= l; ++m) {
      const int am = std::abs(m);
      Term t;
      t.l = l;
      t.m = m;
      t.norm = std::sqrt((2.0 * l + 1.0) * factorial(l - am) / factorial(l + am)) * (am ? std::sqrt(2.0) : 1.0);
      t.a = legendre_derivative(l, am);
      d.terms_.push_back(std::move(t));
      TestFunctionInfo info;
      info.id = d.info_.size();
      info.name = "Y[" + std::to_string(l) + "," + std::to_string(m) + "]";
      info.degree = l;
      d.info_.push_back(info);
    }
  }
  d.compute_constants();
  return d;
}

TestDictionary TestDictionary::hyperspherical(int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("dictionary degree must be >= 1");
  TestDictionary d;
  d.n_ = 3;
  d.max_degree_ = max_degree;
  std::vector<std::array<double, 4>> axes;
  for (int i = 0; i < 4; ++i) {
    std::array<double, 4> e{};
    e[static_cast<std::size_t>(i)] = 1.0;
    axes.push_back(e);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      std::array<double, 4> e{};
      e[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(j)] = 1.0 / std::sqrt(2.0);
      axes.push_back(e);
    }
  }
  for (int l = 1; l <= max_degree; ++l) {
    for (std::size_t k = 0; k < axes.size(); ++k) {
      Term t;
      t.l = l;
      t.axis = axes[k];
      d.terms_.push_back(t);
      TestFunctionInfo info;
      info.id = d.info_.size();
      info.name = "Z[" + std::to_string(l) + ",e" + std::to_string(k) + "]";
      info.degree = l;
      d.info_.push_back(info);
    }
  }
  d.compute_constants();
  return d;
}

TestDictionary TestDictionary::for_dimension(int n, int max_degree) {
  if (n == 2) return spherical(max_degree);
  if (n == 3) return hyperspherical(std::min(max_degree, 4));
  throw DimensionError("test dictionary: unsupported dimension " + std::to_string(n));
}

void TestDictionary::compute_constants() {
  if (n_ == 2) {
    const auto grid = fibonacci_sphere(kQuadraturePoints);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      double sup = 0.0;
      double sq = 0.0;
      for (const auto& p : grid) {
        const double g = norm_of(grad_term(terms_[i], p));
        sup = std::max(sup, g);
        sq += g * g;
      }
      info_[i].grad_sup = sup;
      info_[i].grad_norm_n = std::sqrt(sq / static_cast<double>(grid.size()));
    }
    return;
  }
  // Zonal functions: reduce to t = cos θ with density (2/π) sin^2 θ dθ on S^3.
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    double sup = 0.0;
    double cube = 0.0;
    const double h = std::numbers::pi / kQuadraturePoints;
    for (std::size_t k = 0; k < kQuadraturePoints; ++k) {
      const double th = (static_cast<double>(k) + 0.5) * h;
      const double g = std::abs(chebyshev_u(terms_[i].l, std::cos(th)).second) * std::sin(th);
      sup = std::max(sup, g);
      cube += (2.0 / std::numbers::pi) * std::sin(th) * std::sin(th) * h * g * g * g;
    }
    info_[i].grad_sup = sup;
    info_[i].grad_norm_n = std::cbrt(cube);
  }
}

std::vector<std::size_t> TestDictionary::ids_up_to_degree(int L) const {
  std::vector<std::size_t> ids;
  for (const auto& i : info_) {
    if (i.degree <= L) ids.push_back(i.id);
  }
  return ids;
}

double TestDictionary::eval_term(const Term& t, const SpherePoint& x) const {
  if (n_ == 3) {
    const double c = t.axis[0] * x[0] + t.axis[1] * x[1] + t.axis[2] * x[2] + t.axis[3] * x[3];
    return chebyshev_u(t.l, std::clamp(c, -1.0, 1.0)).first;
  }
  const int am = std::abs(t.m);
  const std::complex<double> u = ipow(std::complex<double>(x[0], x[1]), am);
  double q = 0.0;
  for (std::size_t j = t.a.size(); j-- > 0;) q = q * x[2] + t.a[j];
  return t.norm * (t.m >= 0 ? u.real() : u.imag()) * q;
}

std::array<double, 4> TestDictionary::grad_term(const Term& t, const SpherePoint& x) const {
  std::array<double, 4> g{};
  if (n_ == 3) {
    const double c = t.axis[0] * x[0] + t.axis[1] * x[1] + t.axis[2] * x[2] + t.axis[3] * x[3];
    const double du = chebyshev_u(t.l, std::clamp(c, -1.0, 1.0)).second;
    for (std::size_t i = 0; i < 4; ++i) g[i] = du * (t.axis[i] - c * x[i]);
    return g;
  }
  // Gradient of the solid harmonic H = r^l Y(x/r), then the tangential part
  // ∇H - l H x on the unit sphere.
  const int l = t.l;
  const int am = std::abs(t.m);
  const std::complex<double> w(x[0], x[1]);
  const std::complex<double> um = ipow(w, am);
  const std::complex<double> dum = am ? static_cast<double>(am) * ipow(w, am - 1) : 0.0;
  const bool cosine = t.m >= 0;
  const double R = cosine ? um.real() : um.imag();
  const double Rx = cosine ? dum.real() : dum.imag();
  const double Ry = cosine ? -dum.imag() : dum.real();

  const double z = x[2];
  double q = 0.0, qe = 0.0, qz = 0.0;
  double zp = 1.0;
  double zprev = 0.0;
  for (std::size_t j = 0; j < t.a.size(); ++j) {
    const double e = 0.5 * static_cast<double>(l - am - static_cast<int>(j));
    q += t.a[j] * zp;
    qe += t.a[j] * e * zp;
    if (j > 0) qz += t.a[j] * static_cast<double>(j) * zprev;
    zprev = zp;
    zp *= z;
  }
  const double Qx = 2.0 * x[0] * qe;
  const double Qy = 2.0 * x[1] * qe;
  const double Qz = qz + 2.0 * z * qe;
  const double H = R * q;
  const std::array<double, 3> dH{Rx * q + R * Qx, Ry * q + R * Qy, R * Qz};
  for (std::size_t i = 0; i < 3; ++i) g[i] = t.norm * (dH[i] - l * H * x[i]);
  return g;
}

double TestDictionary::value(std::size_t id, const SpherePoint& x) const {
  if (x.dimension() != n_) throw DimensionError("test function evaluated on the wrong sphere");
  return eval_term(terms_.at(id), x);
}

std::array<double, 4> TestDictionary::gradient(std::size_t id, const SpherePoint& x) const {
  if (x.dimension() != n_) throw DimensionError("test function evaluated on the wrong sphere");
  return grad_term(terms_.at(id), x);
}

void TestDictionary::values(const SpherePoint& x, std::span<double> out) const {
  if (out.size() != terms_.size()) throw std::invalid_argument("values: output span has the wrong size");
  if (x.dimension() != n_) throw DimensionError("test function evaluated on the wrong sphere");
  for (std::size_t i = 0; i < terms_.size(); ++i) out[i] = eval_term(terms_[i], x);
}

std::vector<double> TestDictionary::integrals(const DiscreteMeasure& mu) const {
  std::vector<double> acc(terms_.size(), 0.0);
  std::vector<double> v(terms_.size());
  for (const auto& a : mu.atoms()) {
    values(a.point, v);
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += a.weight * v[i];
  }
  return acc;
}

std::function<double(const SpherePoint&)> TestDictionary::function(std::size_t id) const {
  if (id >= terms_.size()) throw std::out_of_range("test function id out of range");
  return [self = *this, id](const SpherePoint& x) { return self.value(id, x); };
}

}  // namespace uqr
