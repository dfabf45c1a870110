#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "uqr/endomorphism.hpp"
#include "uqr/harmonics.hpp"
#include "uqr/measure.hpp"
#include "uqr/pullback.hpp"

namespace uqr {

using TestFunction = std::function<double(const SpherePoint&)>;

/// max over the dictionary of |∫φ dμ - ∫φ dν| / (1 + sup|∇φ|).
double weak_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const TestDictionary& dict);

/// max over the dictionary of |∫ (f_*φ)/d dμ - ∫φ dμ|, with f_*φ(a) = Σ i(x,f) φ(x)
/// over x in f^{-1}(a).
double balance_residual(const Endomorphism& f, const DiscreteMeasure& mu, const TestDictionary& dict,
                        unsigned threads = 1);

/// max over the dictionary of |∫φ∘f dμ - ∫φ dμ|.
double invariance_residual(const Endomorphism& f, const DiscreteMeasure& mu, const TestDictionary& dict,
                           unsigned threads = 1);

struct BallMass {
  double radius = 0.0;
  double max_mass = 0.0;
};

/// For each radius r, max over atom centres x of μ(B(x, r)) (closed chordal balls).
/// Radii must be positive and strictly decreasing.
std::vector<BallMass> atom_scan(const DiscreteMeasure& mu, const std::vector<double>& radii);

/// Candidate points (periodic points of period <= 3 plus the two poles) whose backward
/// orbit to `depth` levels has at most `bound` points.
std::vector<SpherePoint> exceptional_scan(const Endomorphism& f, int depth, int bound);

struct SupportReport {
  double hausdorff = 0.0;
  double support_to_reference = 0.0;  ///< max over atoms of the distance to the reference
  double reference_to_support = 0.0;  ///< max over reference points of the distance to the atoms
  double coverage = 0.0;              ///< fraction of reference points within r of an atom
  std::size_t support_size = 0;
  std::size_t reference_size = 0;
};

/// Symmetric chordal Hausdorff distance between the atoms of mu_hat and a reference
/// sample of the Julia set.
SupportReport support_vs_julia(const DiscreteMeasure& mu_hat, const std::vector<SpherePoint>& julia_reference,
                               double r);

/// Distance from each query to its nearest point of `set`.
std::vector<double> nearest_distances(const std::vector<SpherePoint>& queries, const std::vector<SpherePoint>& set);

struct MixingReport {
  std::vector<std::pair<int, double>> correlations;  ///< (k, ∫(φ∘f^k)ψ dμ - ∫φ dμ ∫ψ dμ)
  double invariance_residual = 0.0;                  ///< of μ against the supplied test functions
};

/// Correlations for k = 0..k_max by exact (compensated) summation over the atoms,
/// with f^k evaluated by forward iteration.
MixingReport mixing_correlation(const Endomorphism& f, const DiscreteMeasure& mu_hat, const TestFunction& phi,
                                const TestFunction& psi, int k_max);

struct ConvergenceReport {
  std::vector<std::pair<int, double>> deviations;  ///< (k, weak distance to the level-k_max measure)
  double fitted_exponent = 0.0;                    ///< least-squares slope of -ln(deviation) in k
  double exponent_stderr = 0.0;
  double bound_exponent = 0.0;                     ///< (log d) / n
  int window_lo = 0;
  int window_hi = 0;
  double final_max_atom = 0.0;                     ///< largest atom of the level-k_max measure
  bool fit_valid = false;
  bool converged = false;
};

/// Deviations of μ̂_k from μ̂_{k_max} for k = 0..k_max-1 and the fitted decay rate
/// over [window_lo, window_hi] (defaults: [1, k_max - 2]). The report is marked
/// non-converged when the fit is invalid, the exponent falls below the bound by more
/// than 0.1, or the final measure keeps an atom of mass >= 1/2.
ConvergenceReport convergence_rate(const Endomorphism& f, const SpherePoint& a, const TestDictionary& dict,
                                   int k_max, const PullbackConfig& config, int window_lo = -1,
                                   int window_hi = -1);

/// Same, from an already computed trajectory (levels 0..k_max).
ConvergenceReport convergence_from_trajectory(const std::vector<DiscreteMeasure>& levels, int degree,
                                              int dimension, const TestDictionary& dict, int window_lo = -1,
                                              int window_hi = -1);

}  // namespace uqr
