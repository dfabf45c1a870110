#pragma once

// Independent reference values for the tests. Nothing here calls the library's
// numerical routines; only SpherePoint is used to hand points over.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "uqr/sphere.hpp"

namespace oracle {

using Complex = std::complex<double>;

/// Closed-form moments of the arcsine law 1/(pi sqrt(4 - x^2)) on [-2, 2]:
/// zero for odd m, the central binomial coefficient C(m, m/2) for even m.
inline double arcsine_moment(int m) {
  if (m % 2 != 0) return 0.0;
  double c = 1.0;
  for (int j = 1; j <= m / 2; ++j) c = c * (m / 2 + j) / j;
  return c;
}

/// The same moments by Gauss-Chebyshev quadrature: x = 2 cos(theta), theta uniform.
inline double arcsine_moment_quadrature(int m, int nodes = 4096) {
  double s = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double theta = std::numbers::pi * (i + 0.5) / nodes;
    s += std::pow(2.0 * std::cos(theta), m);
  }
  return s / nodes;
}

/// Chart value to a point of the unit sphere by the inverse stereographic formula.
inline uqr::SpherePoint lift(Complex z) {
  const double r2 = std::norm(z);
  return uqr::SpherePoint::normalized(2.0 * z.real() / (1.0 + r2), 2.0 * z.imag() / (1.0 + r2),
                                      (r2 - 1.0) / (r2 + 1.0));
}

/// Chordal distance between chart values on the unit sphere.
inline double chordal(Complex z, Complex w) {
  return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

/// Average of phi over |z| = 1 by the midpoint rule (exact for trigonometric
/// polynomials of degree < nodes).
inline double circle_average(const std::function<double(const uqr::SpherePoint&)>& phi, int nodes = 2048) {
  double s = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double t = 2.0 * std::numbers::pi * (i + 0.5) / nodes;
    s += phi(uqr::SpherePoint::normalized(std::cos(t), std::sin(t), 0.0));
  }
  return s / nodes;
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

/// Average of phi over S^2 against the normalized area measure: Gauss-Legendre in
/// cos(theta) times the trapezoid rule in the azimuth. Exact for polynomials of
/// degree < min(2 * rings, sectors).
inline double sphere_average(const std::function<double(const uqr::SpherePoint&)>& phi, int rings = 24,
                             int sectors = 48) {
  std::vector<double> x, w;
  gauss_legendre(rings, x, w);
  double s = 0.0;
  for (int i = 0; i < rings; ++i) {
    const double r = std::sqrt(1.0 - x[i] * x[i]);
    for (int j = 0; j < sectors; ++j) {
      const double a = 2.0 * std::numbers::pi * j / sectors;
      s += w[i] * phi(uqr::SpherePoint::normalized(r * std::cos(a), r * std::sin(a), x[i]));
    }
  }
  return s / (2.0 * sectors);
}

/// Minimizer of w^T A w over the simplex for a symmetric 2x2 kernel with an interior
/// optimum: w1 = (b - c) / (a + b - 2c).
inline double two_by_two_first_weight(double a, double b, double c) { return (b - c) / (a + b - 2.0 * c); }

}  // namespace oracle
