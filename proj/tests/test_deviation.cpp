#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "uqr/deviation.hpp"
#include "uqr/reference_maps.hpp"

namespace {

uqr::DeviationOptions small_options() {
  uqr::DeviationOptions o;
  o.k_max = 3;
  o.omega_seeds = 256;
  o.omega_budget = 16;
  return o;
}

}  // namespace

TEST(Deviation, LevelZeroIsPointValueMinusMean) {
  const auto f = uqr::maps::power(2);
  const auto dict = uqr::TestDictionary::spherical(2);
  const auto grid = uqr::fibonacci_sphere(60);
  const uqr::DeviationScanner s(f, dict, grid, small_options());
  for (std::size_t id = 0; id < dict.size(); ++id) {
    const double mean = oracle::sphere_average(dict.function(id));
    for (std::size_t i = 0; i < grid.size(); i += 7) {
      EXPECT_NEAR(std::abs(s.deviation(i, id, 0)), std::abs(dict.value(id, grid[i]) - mean), 0.02) << dict.info(id).name;
    }
  }
}

TEST(Deviation, ReportBoundAndFlaggedSet) {
  const auto f = uqr::maps::power(2);
  const auto dict = uqr::TestDictionary::spherical(2);
  const auto grid = uqr::fibonacci_sphere(80);
  const uqr::DeviationScanner s(f, dict, grid, small_options());
  const double eps = 0.1;
  for (int k = 0; k <= 3; ++k) {
    const auto r = s.report(0, eps, k);
    EXPECT_NEAR(r.bound, dict.info(0).grad_norm_n / (eps * std::pow(2.0, k / 2.0)), 1e-12);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) expected += std::abs(s.deviation(i, 0, k)) >= eps ? 1 : 0;
    EXPECT_EQ(r.flagged.size(), expected);
    EXPECT_EQ(r.within_bound, r.capacity <= r.bound * r.slack);
    EXPECT_EQ(r.grid_size, grid.size());
  }
  EXPECT_THROW(s.report(0, 0.0, 1), std::invalid_argument);
}

TEST(Deviation, FreeFunctionMatchesScanner) {
  const auto f = uqr::maps::power(2);
  const auto dict = uqr::TestDictionary::spherical(1);
  const auto grid = uqr::fibonacci_sphere(40);
  const auto o = small_options();
  const uqr::DeviationScanner s(f, dict, grid, o);
  const auto a = s.report(1, 0.05, 2);
  const auto b = uqr::deviation_set_experiment(f, dict, 1, 0.05, 2, grid, o);
  EXPECT_EQ(a.flagged.size(), b.flagged.size());
  EXPECT_DOUBLE_EQ(a.capacity, b.capacity);
}
