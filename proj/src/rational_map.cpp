#include "uqr/rational_map.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace uqr {

namespace {

constexpr double kResultantFloor = 1e-9;
constexpr double kClusterRadius = 1e-7;
constexpr double kAmbiguousBand = 1e-5;
constexpr double kPerturbedBand = 1e-4;
constexpr double kTargetPerturbation = 1e-9;

Poly trimmed(Poly p) {
  while (!p.empty() && p.back() == Complex(0.0)) p.pop_back();
  return p;
}

double max_abs(const Poly& p) {
  double m = 0.0;
  for (const auto& c : p) m = std::max(m, std::abs(c));
  return m;
}

// sum_k c[k] A^k B^(d-k) for binary forms A, B of equal degree.
Poly substitute(const Poly& c, const Poly& A, const Poly& B) {
  const auto d = c.size() - 1;
  std::vector<Poly> apow{Poly{Complex(1.0)}};
  std::vector<Poly> bpow{Poly{Complex(1.0)}};
  for (std::size_t k = 1; k <= d; ++k) {
    apow.push_back(poly_mul(apow.back(), A));
    bpow.push_back(poly_mul(bpow.back(), B));
  }
  Poly out((A.size() - 1) * d + 1, Complex(0.0));
  for (std::size_t k = 0; k <= d; ++k) {
    if (c[k] == Complex(0.0)) continue;
    const Poly term = poly_mul(apow[k], bpow[d - k]);
    for (std::size_t i = 0; i < term.size(); ++i) out[i] += c[k] * term[i];
  }
  return out;
}

std::pair<SpherePoint, SpherePoint> tangent_frame(const SpherePoint& x) {
  // Gram-Schmidt against the coordinate axis least aligned with x.
  std::array<double, 3> e{0.0, 0.0, 0.0};
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(x[i]) < std::abs(x[best])) best = i;
  }
  e[best] = 1.0;
  const double dot = e[0] * x[0] + e[1] * x[1] + e[2] * x[2];
  const SpherePoint t1 = SpherePoint::normalized(e[0] - dot * x[0], e[1] - dot * x[1], e[2] - dot * x[2]);
  const SpherePoint t2 = SpherePoint::normalized(x[1] * t1[2] - x[2] * t1[1], x[2] * t1[0] - x[0] * t1[2],
                                                 x[0] * t1[1] - x[1] * t1[0]);
  return {t1, t2};
}

SpherePoint offset(const SpherePoint& x, const SpherePoint& t, double h) {
  return SpherePoint::normalized(x[0] + h * t[0], x[1] + h * t[1], x[2] + h * t[2]);
}

}  // namespace

RationalMap::RationalMap(Poly numerator, Poly denominator) {
  num_ = trimmed(std::move(numerator));
  den_ = trimmed(std::move(denominator));
  if (num_.empty()) throw std::invalid_argument("numerator: zero polynomial");
  if (den_.empty()) throw std::invalid_argument("denominator: zero polynomial");
  for (const auto* p : {&num_, &den_}) {
    for (const auto& c : *p) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw std::invalid_argument(p == &num_ ? "numerator: non-finite coefficient"
                                               : "denominator: non-finite coefficient");
      }
    }
  }
  degree_ = static_cast<int>(std::max(num_.size(), den_.size())) - 1;
  if (degree_ < 2) {
    throw std::invalid_argument("degree: rational map must have degree >= 2, got " +
                                std::to_string(degree_));
  }
  num_.resize(static_cast<std::size_t>(degree_) + 1, Complex(0.0));
  den_.resize(static_cast<std::size_t>(degree_) + 1, Complex(0.0));
  if (resultant_magnitude() <= kResultantFloor) {
    throw std::invalid_argument("numerator/denominator: common root (normalized resultant " +
                                std::to_string(resultant_magnitude()) + ")");
  }
}

RationalMap::RationalMap(Poly numerator, Poly denominator, Trusted)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  degree_ = static_cast<int>(num_.size()) - 1;
}

RationalMap RationalMap::polynomial(Poly p) { return RationalMap(std::move(p), Poly{Complex(1.0)}); }

bool RationalMap::is_polynomial() const noexcept {
  return std::all_of(den_.begin() + 1, den_.end(), [](const Complex& c) { return c == Complex(0.0); });
}

double RationalMap::resultant_magnitude() const {
  // Sylvester matrix of the two degree-d binary forms, each scaled to max |coef| = 1.
  const int d = degree_;
  const double sp = max_abs(num_);
  const double sq = max_abs(den_);
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k <= d; ++k) {
      S(r, r + k) = num_[static_cast<std::size_t>(d - k)] / sp;
      S(d + r, r + k) = den_[static_cast<std::size_t>(d - k)] / sq;
    }
  }
  return std::abs(S.partialPivLu().determinant());
}

Homogeneous RationalMap::evaluate_homogeneous(Complex a, Complex b) const {
  const auto d = static_cast<std::size_t>(degree_);
  Complex p = 0.0;
  Complex q = 0.0;
  if (std::abs(a) <= std::abs(b)) {
    const Complex t = a / b;
    p = horner(num_, t);
    q = horner(den_, t);
  } else {
    const Complex s = b / a;
    // Σ c_k s^(d-k): Horner from the constant coefficient up.
    for (std::size_t k = 0; k <= d; ++k) {
      p = p * s + num_[k];
      q = q * s + den_[k];
    }
  }
  const double scale = std::max(std::abs(p), std::abs(q));
  if (!(scale > 0.0)) throw SolverError("evaluate: numerator and denominator both vanish", 0.0);
  return {p / scale, q / scale};
}

SpherePoint RationalMap::evaluate(const SpherePoint& x) const {
  if (x.dimension() != 2) throw DimensionError("rational map acts on S^2");
  const Homogeneous h = to_homogeneous(x);
  const Homogeneous v = evaluate_homogeneous(h.num, h.den);
  return from_homogeneous(v.num, v.den);
}

ChartPoint RationalMap::evaluate(const ChartPoint& z) const {
  return stereo_project(evaluate(stereo_lift(z)));
}

double RationalMap::residual(const SpherePoint& x, const SpherePoint& y) const {
  return chordal_distance(evaluate(x), y);
}

PreimageSet RationalMap::solve_preimages(const SpherePoint& y, const SpherePoint& target,
                                         double band) const {
  const Homogeneous h = to_homogeneous(target);
  BinaryForm form;
  form.coeffs.resize(num_.size());
  for (std::size_t k = 0; k < num_.size(); ++k) form.coeffs[k] = h.den * num_[k] - h.num * den_[k];
  const SphereRootResult roots = solve_binary_form(form, kClusterRadius);

  std::vector<PreimageAtom> atoms;
  for (const auto& r : roots.roots) atoms.push_back({r.point, r.multiplicity});

  // Clusters closer than `band` are one multiple root when their index-weighted
  // centroid is itself a certified preimage.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < atoms.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < atoms.size() && !merged; ++j) {
        if (chordal_distance(atoms[i].point, atoms[j].point) >= band) continue;
        const double wi = atoms[i].index;
        const double wj = atoms[j].index;
        const auto& a = atoms[i].point;
        const auto& b = atoms[j].point;
        const SpherePoint c = SpherePoint::normalized(wi * a[0] + wj * b[0], wi * a[1] + wj * b[1],
                                                      wi * a[2] + wj * b[2]);
        if (residual(c, y) < kPreimageResidual) {
          atoms[i] = {c, atoms[i].index + atoms[j].index};
          atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
  }
  return merge_preimages(std::move(atoms), kPreimageMergeTolerance);
}

PreimageSet RationalMap::preimages(const SpherePoint& y) const {
  if (y.dimension() != 2) throw DimensionError("rational map acts on S^2");
  auto max_residual = [&](const PreimageSet& s) {
    double r = 0.0;
    for (const auto& a : s.atoms) r = std::max(r, residual(a.point, y));
    return r;
  };
  PreimageSet first = solve_preimages(y, y, kAmbiguousBand);
  const double r1 = max_residual(first);
  if (r1 < kPreimageResidual) return first;

  // Retry at a target nudged along a fixed tangent direction; roots are then simple
  // and the nudge stays well inside the residual tolerance for the original target.
  const auto [t1, t2] = tangent_frame(y);
  const SpherePoint nudged = offset(y, t1, kTargetPerturbation);
  PreimageSet second = solve_preimages(y, nudged, kPerturbedBand);
  const double r2 = max_residual(second);
  if (r2 < kPreimageResidual) return second;
  throw SolverError("preimages: root finder did not certify all preimages", std::min(r1, r2));
}

RationalMap RationalMap::compose(const RationalMap& inner) const {
  return RationalMap(substitute(num_, inner.num_, inner.den_), substitute(den_, inner.num_, inner.den_),
                     Trusted{});
}

std::vector<SpherePoint> RationalMap::periodic_points(int max_period) const {
  std::vector<SpherePoint> out;
  Poly P = num_;
  Poly Q = den_;
  for (int m = 1; m <= max_period; ++m) {
    if (m > 1) {
      Poly nextP = substitute(num_, P, Q);
      Poly nextQ = substitute(den_, P, Q);
      // Rescale to keep the coefficients of high iterates in range.
      const double s = std::max(max_abs(nextP), max_abs(nextQ));
      for (auto& c : nextP) c /= s;
      for (auto& c : nextQ) c /= s;
      P = std::move(nextP);
      Q = std::move(nextQ);
    }
    // Fixed points of [P : Q] solve w P(z, w) - z Q(z, w) = 0.
    BinaryForm fixed;
    fixed.coeffs.assign(P.size() + 1, Complex(0.0));
    for (std::size_t k = 0; k < P.size(); ++k) {
      fixed.coeffs[k] += P[k];
      fixed.coeffs[k + 1] -= Q[k];
    }
    for (const auto& r : solve_binary_form(fixed, kClusterRadius).roots) {
      const bool dup = std::any_of(out.begin(), out.end(), [&](const SpherePoint& p) {
        return chordal_distance(p, r.point) < kClusterRadius;
      });
      if (!dup) out.push_back(r.point);
    }
  }
  return out;
}

double RationalMap::multiplier_at_fixed_point(const SpherePoint& x) const {
  constexpr double h = 1e-6;
  const auto [t1, t2] = tangent_frame(x);
  double best = 0.0;
  for (const auto& t : {t1, t2}) {
    const SpherePoint a = offset(x, t, h);
    const SpherePoint b = offset(x, t, -h);
    best = std::max(best, chordal_distance(evaluate(a), evaluate(b)) / chordal_distance(a, b));
  }
  return best;
}

}  // namespace uqr
