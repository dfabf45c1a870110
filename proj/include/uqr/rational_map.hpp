#pragma once

#include <vector>

#include "uqr/endomorphism.hpp"
#include "uqr/polynomial.hpp"

namespace uqr {

/// Rational map p/q of the Riemann sphere, degree d = max(deg p, deg q) >= 2.
///
/// Evaluation and preimage solving work in homogeneous coordinates, so infinity
/// is an ordinary point: a preimage at infinity shows up as a drop in the degree
/// of p(z) - y q(z), and its index is the size of the drop.
class RationalMap final : public Endomorphism {
 public:
  /// Coefficients in ascending powers. Throws std::invalid_argument when the degree
  /// is below 2 or when p and q share a root (normalized resultant <= 1e-9).
  RationalMap(Poly numerator, Poly denominator);

  static RationalMap polynomial(Poly p);

  EndomorphismDescriptor descriptor() const override { return {2, degree_, 1.0}; }
  std::string family() const override { return "rational"; }

  SpherePoint evaluate(const SpherePoint& x) const override;
  PreimageSet preimages(const SpherePoint& y) const override;
  std::vector<SpherePoint> periodic_points(int max_period) const override;

  Homogeneous evaluate_homogeneous(Complex a, Complex b) const;
  ChartPoint evaluate(const ChartPoint& z) const;

  /// this ∘ inner.
  RationalMap compose(const RationalMap& inner) const;

  const Poly& numerator() const noexcept { return num_; }
  const Poly& denominator() const noexcept { return den_; }
  bool is_polynomial() const noexcept;
  double resultant_magnitude() const;

  /// Spherical derivative |f'| at a fixed point (the multiplier modulus), by
  /// central differences on the sphere.
  double multiplier_at_fixed_point(const SpherePoint& x) const;

 private:
  struct Trusted {};
  RationalMap(Poly numerator, Poly denominator, Trusted);

  PreimageSet solve_preimages(const SpherePoint& y, const SpherePoint& target,
                              double band) const;
  double residual(const SpherePoint& x, const SpherePoint& y) const;

  Poly num_;  // padded to degree_ + 1
  Poly den_;
  int degree_ = 0;
};

}  // namespace uqr
