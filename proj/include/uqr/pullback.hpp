#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uqr/endomorphism.hpp"
#include "uqr/measure.hpp"

namespace uqr {

enum class PruneStrategy { none, weight_resample };

struct PullbackConfig {
  std::size_t max_atoms = 4096;
  PruneStrategy prune = PruneStrategy::weight_resample;
  std::uint64_t seed = 0;
  unsigned threads = 1;        ///< 0 = one per hardware thread
  bool warn_exceptional = true;
};

/// Solver failure during a pullback, tagged with the level and offending atom.
class PullbackError : public std::runtime_error {
 public:
  PullbackError(const std::string& what, int level, double residual)
      : std::runtime_error(what), level_(level), residual_(residual) {}
  int level() const noexcept { return level_; }
  double residual() const noexcept { return residual_; }

 private:
  int level_;
  double residual_;
};

/// (1/d) f^* mu: each atom (a, w) becomes {(x, w i(x,f) / d) : x in f^{-1}(a)}.
DiscreteMeasure pullback_once(const Endomorphism& f, const DiscreteMeasure& mu, unsigned threads = 1);

/// (f^k)^* delta_a / d^k, resampled down to max_atoms after any level that exceeds it.
DiscreteMeasure pullback_iterate(const Endomorphism& f, const SpherePoint& a, int k,
                                 const PullbackConfig& config);

/// All levels 0..k of pullback_iterate (entry j is the level-j measure).
std::vector<DiscreteMeasure> pullback_trajectory(const Endomorphism& f, const SpherePoint& a, int k,
                                                 const PullbackConfig& config);

/// Each atom (x, w) moves to (f(x), w).
DiscreteMeasure pushforward_measure(const Endomorphism& f, const DiscreteMeasure& mu,
                                    unsigned threads = 1);

/// Monte Carlo (f^k)^* omega / d^k for omega = normalized volume: the equal-weight
/// average of pullback trees rooted at `sample_count` uniform seeds. config.max_atoms
/// is the per-tree budget.
DiscreteMeasure pullback_form(const Endomorphism& f, int k, std::size_t sample_count, std::uint64_t seed,
                              const PullbackConfig& config);

/// Same, rooted at caller-supplied seed points; returns levels 0..k.
std::vector<DiscreteMeasure> pullback_form_trajectory(const Endomorphism& f, int k,
                                                      const std::vector<SpherePoint>& seeds,
                                                      const PullbackConfig& config);

}  // namespace uqr
