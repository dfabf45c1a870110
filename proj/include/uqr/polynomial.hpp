#pragma once

#include <span>
#include <vector>

#include "uqr/sphere.hpp"

namespace uqr {

/// Complex polynomial by ascending coefficients: c[0] + c[1] z + ... + c[D] z^D.
using Poly = std::vector<Complex>;

Complex horner(std::span<const Complex> c, Complex z);
Poly poly_mul(std::span<const Complex> a, std::span<const Complex> b);
/// Index of the highest nonzero coefficient, or -1 for the zero polynomial.
int poly_degree(std::span<const Complex> c);

struct AberthResult {
  std::vector<Complex> roots;
  bool converged = false;
  int iterations = 0;
};

/// Simultaneous root finder (Aberth-Ehrlich iteration, Gauss-Seidel updates) with
/// Newton-polygon starting points. Requires c.back() != 0 and degree >= 1. Never
/// deflates: every root is iterated against the original coefficients.
AberthResult aberth_roots(std::span<const Complex> c, int max_iterations = 500);

/// Binary form of degree D in homogeneous coordinates [z : w]:
/// F(z, w) = sum_k coeffs[k] z^k w^(D-k). Its zeros are points of the Riemann sphere;
/// a zero at infinity ([1 : 0]) appears exactly when the z-degree drops below D.
struct BinaryForm {
  std::vector<Complex> coeffs;
  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  Complex eval(Complex z, Complex w) const;
};

struct SphereRoot {
  SpherePoint point;
  int multiplicity = 1;
};

struct SphereRootResult {
  std::vector<SphereRoot> roots;
  bool converged = false;
};

/// Coefficients below this fraction of the largest one are treated as exact zeros at
/// either end of the form; the affected roots move by less than ~1e-14 chordally.
constexpr double kCoefficientSnap = 1e-14;

/// All zeros of a binary form on S^2 with multiplicities. Roots closer than
/// `cluster_radius` (chordal) are merged into one cluster whose size is its multiplicity.
SphereRootResult solve_binary_form(const BinaryForm& form, double cluster_radius = 1e-7);

/// Single-link clustering of weighted points at the given chordal radius. Each output
/// entry lists indices into `points`, in increasing order; clusters are ordered by
/// their smallest index.
std::vector<std::vector<std::size_t>> cluster_points(std::span<const SpherePoint> points,
                                                     double radius);

}  // namespace uqr
