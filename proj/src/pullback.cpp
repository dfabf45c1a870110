#include "uqr/pullback.hpp"

#include <cstdio>
#include <iostream>

#include "uqr/parallel.hpp"
#include "uqr/random.hpp"

namespace uqr {

namespace {

std::string describe(const SpherePoint& p) {
  std::string s = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.ambient_size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p[i]);
    s += (i ? ", " : "") + std::string(buf);
  }
  return s + ")";
}

DiscreteMeasure pullback_level(const Endomorphism& f, const DiscreteMeasure& mu, unsigned threads, int level) {
  const auto& atoms = mu.atoms();
  std::vector<PreimageSet> fibres(atoms.size());
  parallel_for(atoms.size(), threads, [&](std::size_t i) {
    try {
      fibres[i] = f.preimages(atoms[i].point);
    } catch (const SolverError& e) {
      throw PullbackError("level " + std::to_string(level) + ", atom " + describe(atoms[i].point) + ": " +
                              e.what(),
                          level, e.residual());
    }
  });
  const double d = f.degree();
  std::vector<WeightedAtom> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (const auto& x : fibres[i].atoms) out.push_back({x.point, atoms[i].weight * x.index / d});
  }
  return DiscreteMeasure(std::move(out));
}

}  // namespace

DiscreteMeasure pullback_once(const Endomorphism& f, const DiscreteMeasure& mu, unsigned threads) {
  return pullback_level(f, mu, threads, 1);
}

std::vector<DiscreteMeasure> pullback_trajectory(const Endomorphism& f, const SpherePoint& a, int k,
                                                 const PullbackConfig& config) {
  if (k < 0) throw std::invalid_argument("pullback: k must be nonnegative");
  if (config.max_atoms == 0) throw std::invalid_argument("pullback: max_atoms must be positive");
  if (a.dimension() != f.dimension()) throw DimensionError("pullback: seed point on the wrong sphere");
  if (config.warn_exceptional && looks_exceptional(f, a)) {
    std::cerr << "warning: seed " << describe(a)
              << " has a tiny backward orbit and looks exceptional; the pullbacks will not equidistribute\n";
  }
  std::vector<DiscreteMeasure> levels{DiscreteMeasure::dirac(a)};
  for (int level = 1; level <= k; ++level) {
    DiscreteMeasure next = pullback_level(f, levels.back(), config.threads, level);
    if (config.prune == PruneStrategy::weight_resample && next.size() > config.max_atoms) {
      next = resample(next, config.max_atoms,
                      derive_seed(config.seed, stream::kResample, static_cast<std::uint64_t>(level)));
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

DiscreteMeasure pullback_iterate(const Endomorphism& f, const SpherePoint& a, int k,
                                 const PullbackConfig& config) {
  return std::move(pullback_trajectory(f, a, k, config).back());
}

DiscreteMeasure pushforward_measure(const Endomorphism& f, const DiscreteMeasure& mu, unsigned threads) {
  const auto& atoms = mu.atoms();
  std::vector<WeightedAtom> out(atoms.size());
  parallel_for(atoms.size(), threads,
               [&](std::size_t i) { out[i] = {f.evaluate(atoms[i].point), atoms[i].weight}; });
  return DiscreteMeasure(std::move(out));
}

std::vector<DiscreteMeasure> pullback_form_trajectory(const Endomorphism& f, int k,
                                                      const std::vector<SpherePoint>& seeds,
                                                      const PullbackConfig& config) {
  if (seeds.empty()) throw std::invalid_argument("pullback_form: at least one seed is required");
  std::vector<std::vector<WeightedAtom>> levels(static_cast<std::size_t>(k) + 1);
  const double share = 1.0 / static_cast<double>(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    PullbackConfig tree = config;
    tree.seed = derive_seed(config.seed, stream::kPullbackForm, i);
    tree.warn_exceptional = false;
    const auto traj = pullback_trajectory(f, seeds[i], k, tree);
    for (std::size_t j = 0; j < traj.size(); ++j) {
      for (const auto& a : traj[j].atoms()) levels[j].push_back({a.point, a.weight * share});
    }
  }
  std::vector<DiscreteMeasure> out;
  out.reserve(levels.size());
  for (auto& l : levels) out.emplace_back(std::move(l));
  return out;
}

DiscreteMeasure pullback_form(const Endomorphism& f, int k, std::size_t sample_count, std::uint64_t seed,
                              const PullbackConfig& config) {
  if (sample_count == 0) throw std::invalid_argument("pullback_form: sample_count must be positive");
  const auto seeds = sample_uniform(sample_count, derive_seed(seed, stream::kPullbackForm), f.dimension());
  PullbackConfig c = config;
  c.seed = seed;
  return std::move(pullback_form_trajectory(f, k, seeds, c).back());
}

}  // namespace uqr
