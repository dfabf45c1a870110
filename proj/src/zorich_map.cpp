#include "uqr/zorich_map.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "uqr/random.hpp"

namespace uqr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Folds t into [-1, 1] by reflections across the odd integers; returns the parity
// of the number of reflections.
std::pair<double, int> fold(double t) {
  const double r = (t + 1.0) - 4.0 * std::floor((t + 1.0) / 4.0);
  const double s = r - 1.0;
  if (s <= 1.0) return {s, 0};
  return {2.0 - s, 1};
}

}  // namespace

PolarPoint to_polar(const SpherePoint& p) {
  if (p.dimension() != 3) throw DimensionError("polar chart requires n = 3");
  const double s = p[3];
  const double v = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  PolarPoint q;
  if (v == 0.0) {
    q.log_radius = s > 0.0 ? kInf : -kInf;
    return q;
  }
  q.direction = {p[0] / v, p[1] / v, p[2] / v};
  q.log_radius = s > 0.0 ? std::log((1.0 + s) / v) : std::log(v / (1.0 - s));
  return q;
}

SpherePoint from_polar(const PolarPoint& q) {
  if (q.log_radius == kInf) return SpherePoint::north(3);
  if (q.log_radius == -kInf) return SpherePoint::south(3);
  const double t = q.log_radius;
  const double sech = std::abs(t) > 700.0 ? 0.0 : 1.0 / std::cosh(t);
  return SpherePoint::normalized(q.direction[0] * sech, q.direction[1] * sech, q.direction[2] * sech,
                                 std::tanh(t));
}

std::array<double, 3> square_to_hemisphere(double a, double b) {
  const double rho = std::max(std::abs(a), std::abs(b));
  if (rho == 0.0) return {0.0, 0.0, 1.0};
  const double r = std::hypot(a, b);
  const double theta = rho * std::numbers::pi / 2.0;
  const double st = std::sin(theta);
  return {st * a / r, st * b / r, std::cos(theta)};
}

std::array<double, 2> hemisphere_to_square(const std::array<double, 3>& u) {
  const double s = std::hypot(u[0], u[1]);
  if (s == 0.0) return {0.0, 0.0};
  const double theta = std::min(std::atan2(s, u[2]), std::numbers::pi / 2.0);
  const double rho = 2.0 * theta / std::numbers::pi;
  const double d0 = u[0] / s;
  const double d1 = u[1] / s;
  const double k = std::max(std::abs(d0), std::abs(d1));
  return {rho * d0 / k, rho * d1 / k};
}

PolarPoint zorich(const std::array<double, 3>& x) {
  const auto [a, p1] = fold(x[0]);
  const auto [b, p2] = fold(x[1]);
  PolarPoint y;
  y.direction = square_to_hemisphere(a, b);
  if ((p1 + p2) % 2 == 1) y.direction[2] = -y.direction[2];
  y.log_radius = x[2];
  return y;
}

std::array<double, 3> zorich_inverse(const PolarPoint& y) {
  const auto& u = y.direction;
  if (u[2] >= 0.0) {
    const auto sq = hemisphere_to_square(u);
    return {sq[0], sq[1], y.log_radius};
  }
  const auto sq = hemisphere_to_square({u[0], u[1], -u[2]});
  return {2.0 - sq[0], sq[1], y.log_radius};
}

ZorichPowerMap::ZorichPowerMap(int stretch, std::uint64_t seed) : m_(stretch) {
  if (m_ < 3 || m_ % 2 == 0) {
    throw std::invalid_argument("stretch: must be an odd integer >= 3, got " + std::to_string(m_));
  }
  degree_ = measure_degree(seed);
  distortion_ = measure_distortion(seed);
}

SpherePoint ZorichPowerMap::evaluate(const SpherePoint& x) const {
  const PolarPoint q = to_polar(x);
  if (std::isinf(q.log_radius)) return x;
  const auto x0 = zorich_inverse(q);
  const double m = m_;
  return from_polar(zorich({m * x0[0], m * x0[1], m * x0[2]}));
}

PreimageSet ZorichPowerMap::raw_preimages(const SpherePoint& y) const {
  PreimageSet out;
  const PolarPoint q = to_polar(y);
  if (std::isinf(q.log_radius)) {
    out.atoms.push_back({y, m_ * m_});
    return out;
  }
  // Z^{-1}(y) is the orbit of x0 under the beam symmetry group G; modulo m G it is
  // represented by the translates x0 + 4v, v in {0..m-1}^2, so f^{-1}(y) consists of
  // Z((x0 + 4v) / m).
  const auto x0 = zorich_inverse(q);
  const double m = m_;
  std::vector<PreimageAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(m_ * m_));
  for (int v1 = 0; v1 < m_; ++v1) {
    for (int v2 = 0; v2 < m_; ++v2) {
      const std::array<double, 3> x{(x0[0] + 4.0 * v1) / m, (x0[1] + 4.0 * v2) / m, x0[2] / m};
      atoms.push_back({from_polar(zorich(x)), 1});
    }
  }
  return merge_preimages(std::move(atoms), kPreimageMergeTolerance);
}

PreimageSet ZorichPowerMap::preimages(const SpherePoint& y) const {
  if (y.dimension() != 3) throw DimensionError("Zorich power map acts on S^3");
  PreimageSet s = raw_preimages(y);
  double worst = 0.0;
  for (const auto& a : s.atoms) worst = std::max(worst, chordal_distance(evaluate(a.point), y));
  if (worst >= kPreimageResidual) throw SolverError("zorich preimages: forward check failed", worst);
  return s;
}

std::vector<SpherePoint> ZorichPowerMap::periodic_points(int /*max_period*/) const {
  return {SpherePoint::south(3), SpherePoint::north(3)};
}

int ZorichPowerMap::measure_degree(std::uint64_t seed) const {
  int measured = -1;
  for (const auto& y : sample_uniform(1000, derive_seed(seed, 11), 3)) {
    const int s = raw_preimages(y).index_sum();
    if (measured < 0) {
      measured = s;
    } else if (s != measured) {
      throw std::runtime_error("zorich: preimage count is not constant across targets");
    }
  }
  return measured;
}

double ZorichPowerMap::measure_distortion(std::uint64_t seed) const {
  // max ||Df||^3 / J_f over sample points, in the Euclidean chart (the chart is
  // conformal, so the ratio is chart independent). Samples whose one-sided
  // Jacobians disagree sit on a beam face and are skipped.
  auto chart_map = [&](const Eigen::Vector3d& Y) {
    EuclideanChartPoint c;
    c.n = 3;
    c.x = {Y[0], Y[1], Y[2]};
    const auto img = euclidean_project(evaluate(euclidean_lift(c)));
    return Eigen::Vector3d(img.x[0], img.x[1], img.x[2]);
  };
  double worst = 1.0;
  for (const auto& p : sample_uniform(2000, derive_seed(seed, 12), 3)) {
    const auto c = euclidean_project(p);
    if (c.infinite) continue;
    const Eigen::Vector3d Y(c.x[0], c.x[1], c.x[2]);
    const double r = Y.norm();
    if (r < 0.2 || r > 5.0) continue;
    const double h = 1e-6 * r;
    Eigen::Matrix3d fwd;
    Eigen::Matrix3d bwd;
    const Eigen::Vector3d F0 = chart_map(Y);
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d e = Eigen::Vector3d::Zero();
      e[j] = h;
      fwd.col(j) = (chart_map(Y + e) - F0) / h;
      bwd.col(j) = (F0 - chart_map(Y - e)) / h;
    }
    if ((fwd - bwd).norm() > 1e-3 * fwd.norm()) continue;
    const Eigen::Matrix3d J = 0.5 * (fwd + bwd);
    const Eigen::Vector3d sv = J.jacobiSvd().singularValues();
    if (sv[2] <= 0.0) continue;
    worst = std::max(worst, sv[0] * sv[0] / (sv[1] * sv[2]));
  }
  return worst;
}

}  // namespace uqr
