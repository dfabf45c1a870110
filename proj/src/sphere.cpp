#include "uqr/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "uqr/random.hpp"

namespace uqr {

namespace {

void check_ambient(std::size_t size) {
  if (size < 3 || size > SpherePoint::kMaxAmbient) {
    throw DimensionError("sphere dimension must be 2 or 3, got ambient size " +
                         std::to_string(size));
  }
}

}  // namespace

SpherePoint SpherePoint::normalized(std::span<const double> v) {
  check_ambient(v.size());
  double s = 0.0;
  for (double x : v) s += x * x;
  const double norm = std::sqrt(s);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  SpherePoint p;
  p.ambient_ = static_cast<std::uint8_t>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p.c_[i] = v[i] / norm;
  return p;
}

SpherePoint SpherePoint::normalized(double x, double y, double z) {
  const std::array<double, 3> v{x, y, z};
  return normalized(v);
}

SpherePoint SpherePoint::normalized(double x, double y, double z, double w) {
  const std::array<double, 4> v{x, y, z, w};
  return normalized(v);
}

SpherePoint SpherePoint::from_unit(std::span<const double> v) {
  check_ambient(v.size());
  double s = 0.0;
  for (double x : v) s += x * x;
  if (std::abs(std::sqrt(s) - 1.0) > kNormTolerance) {
    throw std::invalid_argument("coordinates do not have unit norm");
  }
  SpherePoint p;
  p.ambient_ = static_cast<std::uint8_t>(v.size());
  std::copy(v.begin(), v.end(), p.c_.begin());
  return p;
}

SpherePoint SpherePoint::north(int n) {
  std::array<double, kMaxAmbient> v{};
  v[static_cast<std::size_t>(n)] = 1.0;
  return normalized(std::span<const double>(v.data(), static_cast<std::size_t>(n) + 1));
}

SpherePoint SpherePoint::south(int n) {
  std::array<double, kMaxAmbient> v{};
  v[static_cast<std::size_t>(n)] = -1.0;
  return normalized(std::span<const double>(v.data(), static_cast<std::size_t>(n) + 1));
}

bool SpherePoint::operator==(const SpherePoint& o) const noexcept {
  return ambient_ == o.ambient_ && c_ == o.c_;
}

bool SpherePoint::lex_less(const SpherePoint& o) const noexcept {
  return std::lexicographical_compare(c_.begin(), c_.begin() + ambient_, o.c_.begin(),
                                      o.c_.begin() + o.ambient_);
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  if (a.ambient_size() != b.ambient_size()) {
    throw DimensionError("chordal_distance: points live on different spheres");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.ambient_size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Homogeneous to_homogeneous(const SpherePoint& p) {
  if (p.dimension() != 2) throw DimensionError("complex chart requires n = 2");
  // z = (x1 + i x2) / (1 - x3) = (1 + x3) / (x1 - i x2); pick the better-conditioned form.
  Complex num, den;
  if (p[2] <= 0.0) {
    num = Complex(p[0], p[1]);
    den = Complex(1.0 - p[2], 0.0);
  } else {
    num = Complex(1.0 + p[2], 0.0);
    den = Complex(p[0], -p[1]);
  }
  const double scale = std::max(std::abs(num), std::abs(den));
  return {num / scale, den / scale};
}

SpherePoint from_homogeneous(Complex num, Complex den) {
  const double scale = std::max(std::abs(num), std::abs(den));
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("degenerate homogeneous coordinates");
  }
  num /= scale;
  den /= scale;
  const double a2 = std::norm(num);
  const double b2 = std::norm(den);
  const Complex cross = num * std::conj(den);
  const double t = a2 + b2;
  return SpherePoint::normalized(2.0 * cross.real() / t, 2.0 * cross.imag() / t, (a2 - b2) / t);
}

ChartPoint stereo_project(const SpherePoint& p) {
  if (p.dimension() != 2) throw DimensionError("stereo_project requires n = 2");
  // Chordal distance to the north pole is sqrt(2 (1 - x3)).
  const double r2 = p[0] * p[0] + p[1] * p[1];
  const double one_minus = p[2] > 0.0 ? r2 / (1.0 + p[2]) : 1.0 - p[2];
  if (std::sqrt(2.0 * one_minus) < kNorthGuardBand) return ChartPoint::infinity();
  return ChartPoint::finite(Complex(p[0], p[1]) / one_minus);
}

SpherePoint stereo_lift(const ChartPoint& z) {
  if (z.infinite) return SpherePoint::north(2);
  return stereo_lift(z.value);
}

SpherePoint stereo_lift(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return SpherePoint::north(2);
  if (std::abs(z) <= 1.0) return from_homogeneous(z, Complex(1.0, 0.0));
  return from_homogeneous(Complex(1.0, 0.0), 1.0 / z);
}

EuclideanChartPoint euclidean_project(const SpherePoint& p) {
  EuclideanChartPoint y;
  const int n = p.dimension();
  y.n = n;
  const double last = p[static_cast<std::size_t>(n)];
  double r2 = 0.0;
  for (int i = 0; i < n; ++i) r2 += p[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
  const double one_minus = last > 0.0 ? r2 / (1.0 + last) : 1.0 - last;
  if (std::sqrt(2.0 * one_minus) < kNorthGuardBand) {
    y.infinite = true;
    return y;
  }
  for (int i = 0; i < n; ++i) y.x[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)] / one_minus;
  return y;
}

SpherePoint euclidean_lift(const EuclideanChartPoint& y) {
  const int n = y.n;
  if (y.infinite) return SpherePoint::north(n);
  double r2 = 0.0;
  for (int i = 0; i < n; ++i) r2 += y.x[static_cast<std::size_t>(i)] * y.x[static_cast<std::size_t>(i)];
  std::array<double, SpherePoint::kMaxAmbient> v{};
  if (r2 <= 1.0) {
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = 2.0 * y.x[static_cast<std::size_t>(i)] / (r2 + 1.0);
    v[static_cast<std::size_t>(n)] = (r2 - 1.0) / (r2 + 1.0);
  } else {
    // Divide through by r2 to keep huge charts finite.
    const double inv = 1.0 / r2;
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = 2.0 * y.x[static_cast<std::size_t>(i)] * inv / (1.0 + inv);
    v[static_cast<std::size_t>(n)] = (1.0 - inv) / (1.0 + inv);
  }
  return SpherePoint::normalized(std::span<const double>(v.data(), static_cast<std::size_t>(n) + 1));
}

std::vector<SpherePoint> sample_uniform(std::size_t count, std::uint64_t seed, int n) {
  if (count == 0) throw std::invalid_argument("sample_uniform: count must be positive");
  if (n < 2 || n > 3) throw DimensionError("sample_uniform: n must be 2 or 3");
  Engine eng(derive_seed(seed, stream::kSampleUniform));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<SpherePoint> out;
  out.reserve(count);
  std::array<double, SpherePoint::kMaxAmbient> v{};
  const auto m = static_cast<std::size_t>(n) + 1;
  while (out.size() < count) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = gauss(eng);
      s += v[i] * v[i];
    }
    if (s < 1e-24) continue;
    out.push_back(SpherePoint::normalized(std::span<const double>(v.data(), m)));
  }
  return out;
}

std::vector<SpherePoint> fibonacci_sphere(std::size_t count) {
  std::vector<SpherePoint> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const auto N = static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / N;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.push_back(SpherePoint::normalized(r * std::cos(phi), r * std::sin(phi), z));
  }
  return out;
}

std::vector<SpherePoint> circle_points(std::size_t count, double phase) {
  std::vector<SpherePoint> out;
  out.reserve(count);
  // Reduce 2 pi j / count to the nearest quadrant axis so that the rounding of pi
  // only perturbs angles in [-pi/4, pi/4], symmetrically about every axis.
  const double cp = std::cos(phase), sp = std::sin(phase);
  const auto N = static_cast<long long>(count);
  for (long long j = 0; j < N; ++j) {
    const long long q = (8 * j + N) / (2 * N);
    const long long rem = 4 * j - q * N;
    const double a = 0.5 * std::numbers::pi * static_cast<double>(rem) / static_cast<double>(N);
    double c = std::cos(a), s = std::sin(a);
    for (long long r = 0; r < q % 4; ++r) {
      const double t = c;
      c = -s;
      s = t;
    }
    out.push_back(SpherePoint::normalized(c * cp - s * sp, c * sp + s * cp, 0.0));
  }
  return out;
}

}  // namespace uqr
