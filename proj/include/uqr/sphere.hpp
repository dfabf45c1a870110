#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace uqr {

using Complex = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Point on the round unit sphere S^n, stored by its ambient coordinates in R^{n+1}.
///
/// Supported dimensions are n = 2 and n = 3. Every constructor returns a point of
/// unit Euclidean norm (to within 1e-12); `from_unit` rejects inputs that are not.
class SpherePoint {
 public:
  static constexpr std::size_t kMaxAmbient = 4;
  static constexpr double kNormTolerance = 1e-12;

  SpherePoint() = default;

  /// Projects a nonzero vector radially onto the sphere.
  static SpherePoint normalized(std::span<const double> v);
  static SpherePoint normalized(double x, double y, double z);
  static SpherePoint normalized(double x, double y, double z, double w);

  /// Validates that `v` already has unit norm.
  static SpherePoint from_unit(std::span<const double> v);

  static SpherePoint north(int n);
  static SpherePoint south(int n);

  int dimension() const noexcept { return static_cast<int>(ambient_) - 1; }
  std::size_t ambient_size() const noexcept { return ambient_; }
  std::span<const double> coords() const noexcept { return {c_.data(), ambient_}; }
  double operator[](std::size_t i) const noexcept { return c_[i]; }

  bool operator==(const SpherePoint& o) const noexcept;
  /// Lexicographic order on coordinates, used for deterministic merge order.
  bool lex_less(const SpherePoint& o) const noexcept;

 private:
  std::array<double, kMaxAmbient> c_{};
  std::uint8_t ambient_ = 0;
};

/// Extended complex number: a finite complex value or the point at infinity.
struct ChartPoint {
  Complex value{};
  bool infinite = false;

  static ChartPoint finite(Complex z) { return {z, false}; }
  static ChartPoint infinity() { return {{}, true}; }
  bool is_infinity() const noexcept { return infinite; }
};

/// Homogeneous coordinates [num : den] of a point of the Riemann sphere,
/// scaled so that max(|num|, |den|) = 1.
struct Homogeneous {
  Complex num{};
  Complex den{1.0, 0.0};
};

double chordal_distance(const SpherePoint& a, const SpherePoint& b);

/// Stereographic projection from the north pole onto the plane x3 = 0 (n = 2 only).
/// Points within the 1e-8 guard band of the north pole map to infinity.
ChartPoint stereo_project(const SpherePoint& p);
SpherePoint stereo_lift(const ChartPoint& z);
SpherePoint stereo_lift(Complex z);

constexpr double kNorthGuardBand = 1e-8;

Homogeneous to_homogeneous(const SpherePoint& p);
SpherePoint from_homogeneous(Complex num, Complex den);

/// Stereographic chart S^n -> R^n for general n; `infinite` marks the north pole.
struct EuclideanChartPoint {
  std::array<double, SpherePoint::kMaxAmbient - 1> x{};
  int n = 0;
  bool infinite = false;
};
EuclideanChartPoint euclidean_project(const SpherePoint& p);
SpherePoint euclidean_lift(const EuclideanChartPoint& y);

/// i.i.d. draws from the normalized volume measure on S^n; deterministic in `seed`.
std::vector<SpherePoint> sample_uniform(std::size_t count, std::uint64_t seed, int n = 2);

/// Fibonacci lattice on S^2: quasi-uniform, deterministic.
std::vector<SpherePoint> fibonacci_sphere(std::size_t count);

/// `count` equally spaced points on the unit circle |z| = 1 of the chart (the equator).
std::vector<SpherePoint> circle_points(std::size_t count, double phase = 0.0);

}  // namespace uqr
