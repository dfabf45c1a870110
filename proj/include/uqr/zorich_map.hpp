#pragma once

#include <array>

#include "uqr/endomorphism.hpp"

namespace uqr {

/// Polar form of a point of R^3 ∪ {∞} = S^3: direction on S^2 and log-radius.
struct PolarPoint {
  std::array<double, 3> direction{0.0, 0.0, 1.0};
  double log_radius = 0.0;  ///< ±infinity at the poles
};

PolarPoint to_polar(const SpherePoint& p);
SpherePoint from_polar(const PolarPoint& q);

/// Bi-Lipschitz map of the square [-1,1]^2 onto the closed upper unit hemisphere:
/// radial square-to-disk stretch followed by the azimuthal equidistant chart.
std::array<double, 3> square_to_hemisphere(double a, double b);
std::array<double, 2> hemisphere_to_square(const std::array<double, 3>& u);

/// Zorich map R^3 -> R^3 \ {0}: on the beam [-1,1]^2 x R it is e^{x3} h(x1, x2),
/// extended to all of R^3 by reflection across the beam faces (which reflects the
/// image across the plane y3 = 0).
PolarPoint zorich(const std::array<double, 3>& x);
/// A point of Z^{-1}(y) in the beam [-1,3] x [-1,1] x R.
std::array<double, 3> zorich_inverse(const PolarPoint& y);

/// Uniformly quasiregular power map of S^3 conjugating x -> m x through the Zorich
/// map: f(Z(x)) = Z(m x), with 0 and ∞ fixed. The stretch factor m must be odd and
/// >= 3. Degree and distortion are measured at construction, never assumed.
class ZorichPowerMap final : public Endomorphism {
 public:
  explicit ZorichPowerMap(int stretch, std::uint64_t seed = 0x5eed);

  EndomorphismDescriptor descriptor() const override { return {3, degree_, distortion_}; }
  std::string family() const override { return "zorich"; }

  SpherePoint evaluate(const SpherePoint& x) const override;
  PreimageSet preimages(const SpherePoint& y) const override;
  std::vector<SpherePoint> periodic_points(int max_period) const override;

  int stretch() const noexcept { return m_; }

 private:
  PreimageSet raw_preimages(const SpherePoint& y) const;
  int measure_degree(std::uint64_t seed) const;
  double measure_distortion(std::uint64_t seed) const;

  int m_;
  int degree_ = 0;
  double distortion_ = 1.0;
};

}  // namespace uqr
