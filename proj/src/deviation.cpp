#include "uqr/deviation.hpp"

#include <cmath>
#include <stdexcept>

#include "uqr/parallel.hpp"
#include "uqr/potential.hpp"
#include "uqr/pullback.hpp"
#include "uqr/random.hpp"

namespace uqr {

namespace {

// Dictionary moments of every level of the pullback tree rooted at a.
std::vector<std::vector<double>> tree_moments(const Endomorphism& f, const TestDictionary& dict,
                                              const SpherePoint& a, int k_max, std::size_t budget,
                                              std::uint64_t seed) {
  PullbackConfig c;
  c.max_atoms = budget == 0 ? 1 : budget;
  c.prune = budget == 0 ? PruneStrategy::none : PruneStrategy::weight_resample;
  c.seed = seed;
  c.warn_exceptional = false;
  std::vector<std::vector<double>> out;
  for (const auto& level : pullback_trajectory(f, a, k_max, c)) out.push_back(dict.integrals(level));
  return out;
}

}  // namespace

DeviationScanner::DeviationScanner(const Endomorphism& f, const TestDictionary& dict, std::vector<SpherePoint> grid,
                                   DeviationOptions options)
    : dict_(dict), grid_(std::move(grid)), options_(options) {
  if (grid_.empty()) throw std::invalid_argument("deviation: empty grid");
  if (options_.k_max < 0) throw std::invalid_argument("deviation: k_max must be nonnegative");
  if (options_.omega_seeds == 0) throw std::invalid_argument("deviation: omega_seeds must be positive");
  if (dict.dimension() != f.dimension()) throw DimensionError("deviation: dictionary and map dimensions differ");
  degree_ = f.degree();
  dimension_ = f.dimension();
  distortion_ = f.descriptor().distortion;
  cell_radius_ = options_.cell_radius > 0.0 ? options_.cell_radius : grid_cell_radius(grid_.size());
  const auto K = static_cast<std::size_t>(options_.k_max);
  const std::size_t width = dict.size();

  // Volume-form term: equal-weight average over quasi-uniform seeds.
  const auto seeds = dimension_ == 2
                         ? fibonacci_sphere(options_.omega_seeds)
                         : sample_uniform(options_.omega_seeds, derive_seed(options_.seed, stream::kQuadrature),
                                          dimension_);
  std::vector<std::vector<std::vector<double>>> per_seed(seeds.size());
  parallel_for(seeds.size(), options_.threads, [&](std::size_t i) {
    per_seed[i] = tree_moments(f, dict, seeds[i], options_.k_max, options_.omega_budget,
                               derive_seed(options_.seed, stream::kPullbackForm, i));
  });
  omega_.assign(K + 1, std::vector<double>(width, 0.0));
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t k = 0; k <= K; ++k) {
      for (std::size_t j = 0; j < width; ++j) omega_[k][j] += per_seed[i][k][j] / static_cast<double>(seeds.size());
    }
  }

  std::vector<std::vector<std::vector<double>>> per_point(grid_.size());
  parallel_for(grid_.size(), options_.threads, [&](std::size_t i) {
    per_point[i] = tree_moments(f, dict, grid_[i], options_.k_max, options_.tree_budget,
                                derive_seed(options_.seed, stream::kSeedPoints, i));
  });
  moments_.assign(K + 1, std::vector<std::vector<double>>(grid_.size()));
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    for (std::size_t k = 0; k <= K; ++k) moments_[k][i] = std::move(per_point[i][k]);
  }
}

double DeviationScanner::deviation(std::size_t index, std::size_t phi_id, int k) const {
  if (k < 0 || k > options_.k_max) throw std::out_of_range("deviation: level outside [0, k_max]");
  const auto kk = static_cast<std::size_t>(k);
  return moments_[kk].at(index).at(phi_id) - omega_[kk].at(phi_id);
}

DeviationSetReport DeviationScanner::report(std::size_t phi_id, double epsilon, int k) const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("deviation: epsilon must be positive");
  DeviationSetReport r;
  r.epsilon = epsilon;
  r.k = k;
  r.function_id = phi_id;
  r.function_name = dict_.info(phi_id).name;
  r.grid_size = grid_.size();
  r.grad_norm_n = dict_.info(phi_id).grad_norm_n;
  r.distortion = distortion_;
  r.slack = options_.slack;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const double dev = std::abs(deviation(i, phi_id, k));
    r.max_deviation = std::max(r.max_deviation, dev);
    if (dev >= epsilon) r.flagged.push_back(grid_[i]);
  }
  for (std::size_t i = 0; i < r.flagged.size(); ++i) {
    for (std::size_t j = i + 1; j < r.flagged.size(); ++j) {
      r.flagged_diameter = std::max(r.flagged_diameter, chordal_distance(r.flagged[i], r.flagged[j]));
    }
  }
  if (r.flagged.size() >= 2) {
    const CapacityReport cap = equilibrium_weights(r.flagged, options_.tolerance, cell_radius_);
    r.capacity = cap.capacity;
    r.capacity_converged = cap.converged;
  }
  r.bound = std::pow(distortion_, 1.0 / dimension_) * r.grad_norm_n /
            (epsilon * std::pow(static_cast<double>(degree_), static_cast<double>(k) / dimension_));
  r.within_bound = r.capacity <= r.bound * r.slack;
  return r;
}

DeviationSetReport deviation_set_experiment(const Endomorphism& f, const TestDictionary& dict, std::size_t phi_id,
                                            double epsilon, int k, const std::vector<SpherePoint>& grid,
                                            DeviationOptions options) {
  options.k_max = k;
  return DeviationScanner(f, dict, grid, options).report(phi_id, epsilon, k);
}

}  // namespace uqr
