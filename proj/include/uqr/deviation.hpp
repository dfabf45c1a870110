#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uqr/endomorphism.hpp"
#include "uqr/harmonics.hpp"

namespace uqr {

struct DeviationOptions {
  int k_max = 10;
  std::size_t omega_seeds = 1024;  ///< quasi-uniform seeds representing the volume form
  std::size_t omega_budget = 64;   ///< per-seed atom budget for the volume-form trees
  std::size_t tree_budget = 0;     ///< per-grid-point atom budget; 0 = no pruning
  std::uint64_t seed = 0;
  double cell_radius = 0.0;        ///< <= 0: equal-area radius of the grid
  double slack = 1.0;              ///< capacity must not exceed bound * slack
  double tolerance = 1e-10;        ///< equilibrium solver tolerance
  unsigned threads = 1;
};

/// Grid points a where |∫φ d((f^k)^*(δ_a - ω))/d^k| >= ε and the capacity of that set.
struct DeviationSetReport {
  double epsilon = 0.0;
  int k = 0;
  std::size_t function_id = 0;
  std::string function_name;
  std::vector<SpherePoint> flagged;
  std::size_t grid_size = 0;
  double capacity = 0.0;
  double bound = 0.0;         ///< K^{1/n} ||∇φ||_n / (ε d^{k/n})
  double slack = 1.0;
  bool within_bound = false;  ///< capacity <= bound * slack
  bool capacity_converged = true;
  double grad_norm_n = 0.0;
  double distortion = 1.0;
  double max_deviation = 0.0;
  double flagged_diameter = 0.0;
};

/// Pulls back every grid point and the volume form once up to k_max and answers
/// deviation-set queries for any (φ, ε, k <= k_max) from the stored dictionary moments.
class DeviationScanner {
 public:
  DeviationScanner(const Endomorphism& f, const TestDictionary& dict, std::vector<SpherePoint> grid,
                   DeviationOptions options = {});

  /// ∫φ d((f^k)^*(δ_a - ω))/d^k for grid point `index`.
  double deviation(std::size_t index, std::size_t phi_id, int k) const;
  DeviationSetReport report(std::size_t phi_id, double epsilon, int k) const;

  const std::vector<SpherePoint>& grid() const noexcept { return grid_; }
  const DeviationOptions& options() const noexcept { return options_; }

 private:
  const TestDictionary& dict_;
  std::vector<SpherePoint> grid_;
  DeviationOptions options_;
  int degree_ = 2;
  int dimension_ = 2;
  double distortion_ = 1.0;
  double cell_radius_ = 0.0;
  std::vector<std::vector<double>> omega_;                 // [k][phi]
  std::vector<std::vector<std::vector<double>>> moments_;  // [k][grid][phi]
};

/// One-shot form of the scanner for a single (φ, ε, k).
DeviationSetReport deviation_set_experiment(const Endomorphism& f, const TestDictionary& dict, std::size_t phi_id,
                                            double epsilon, int k, const std::vector<SpherePoint>& grid,
                                            DeviationOptions options = {});

}  // namespace uqr
