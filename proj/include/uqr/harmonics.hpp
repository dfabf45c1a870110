#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "uqr/measure.hpp"

namespace uqr {

struct TestFunctionInfo {
  std::size_t id = 0;
  std::string name;
  int degree = 0;
  double grad_sup = 0.0;     ///< sup |∇φ| over the sphere (dense-grid estimate)
  double grad_norm_n = 0.0;  ///< (∫ |∇φ|^n dσ)^{1/n}, σ the normalized volume
};

/// Smooth mean-zero test functions on S^n, normalized to unit L^2 norm against the
/// normalized volume.
///
/// On S^2: real spherical harmonics Y_lm, 1 <= l <= L, with cos(mφ) for m >= 0 and
/// sin(|m|φ) for m < 0. On S^3: zonal harmonics U_l(x·e) (Chebyshev polynomials of
/// the second kind) for 1 <= l <= L and ten fixed axes e.
class TestDictionary {
 public:
  static TestDictionary spherical(int max_degree = 8);
  static TestDictionary hyperspherical(int max_degree = 4);
  /// spherical(L) for n = 2, hyperspherical(min(L, 4)) for n = 3.
  static TestDictionary for_dimension(int n, int max_degree = 8);

  int dimension() const noexcept { return n_; }
  int max_degree() const noexcept { return max_degree_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const TestFunctionInfo& info(std::size_t id) const { return info_.at(id); }
  /// Ids of all functions of degree <= L, in id order.
  std::vector<std::size_t> ids_up_to_degree(int L) const;

  double value(std::size_t id, const SpherePoint& x) const;
  /// Tangential gradient in ambient coordinates.
  std::array<double, 4> gradient(std::size_t id, const SpherePoint& x) const;
  /// All values at x; out.size() must equal size().
  void values(const SpherePoint& x, std::span<double> out) const;
  /// ∫φ dμ for every function, summed in atom order.
  std::vector<double> integrals(const DiscreteMeasure& mu) const;

  std::function<double(const SpherePoint&)> function(std::size_t id) const;

 private:
  struct Term {
    int l = 0;
    int m = 0;            // S^2 order (negative = sine)
    double norm = 1.0;
    std::vector<double> a;  // S^2: coefficients of d^m P_l / dt^m, ascending
    std::array<double, 4> axis{};  // S^3 direction
  };

  TestDictionary() = default;
  void compute_constants();
  double eval_term(const Term& t, const SpherePoint& x) const;
  std::array<double, 4> grad_term(const Term& t, const SpherePoint& x) const;

  int n_ = 2;
  int max_degree_ = 0;
  std::vector<Term> terms_;
  std::vector<TestFunctionInfo> info_;
};

}  // namespace uqr
