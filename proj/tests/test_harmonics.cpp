#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "uqr/harmonics.hpp"

using uqr::TestDictionary;

namespace {

std::size_t find_id(const TestDictionary& d, const std::string& name) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.info(i).name == name) return i;
  }
  throw std::runtime_error("missing " + name);
}

}  // namespace

TEST(Harmonics, SphericalDictionarySize) {
  const auto d = TestDictionary::spherical(8);
  EXPECT_EQ(d.size(), 80u);
  EXPECT_EQ(d.dimension(), 2);
  EXPECT_EQ(d.ids_up_to_degree(4).size(), 24u);
  for (std::size_t id : d.ids_up_to_degree(4)) EXPECT_LE(d.info(id).degree, 4);
}

TEST(Harmonics, DegreeOneAreScaledCoordinates) {
  const auto d = TestDictionary::spherical(2);
  const auto x = uqr::SpherePoint::normalized(0.3, -0.5, 0.8);
  EXPECT_NEAR(d.value(find_id(d, "Y[1,0]"), x), std::sqrt(3.0) * x[2], 1e-14);
  EXPECT_NEAR(d.value(find_id(d, "Y[1,1]"), x), std::sqrt(3.0) * x[0], 1e-14);
  EXPECT_NEAR(d.value(find_id(d, "Y[1,-1]"), x), std::sqrt(3.0) * x[1], 1e-14);
  EXPECT_NEAR(d.value(find_id(d, "Y[2,0]"), x), std::sqrt(5.0) * (3.0 * x[2] * x[2] - 1.0) / 2.0, 1e-13);
}

TEST(Harmonics, OrthonormalUnderQuadrature) {
  const auto d = TestDictionary::spherical(4);
  const auto ids = d.ids_up_to_degree(4);
  for (std::size_t a : ids) {
    EXPECT_NEAR(oracle::sphere_average(d.function(a)), 0.0, 1e-13) << d.info(a).name;
    for (std::size_t b : ids) {
      const double g = oracle::sphere_average(
          [&](const uqr::SpherePoint& x) { return d.value(a, x) * d.value(b, x); });
      EXPECT_NEAR(g, a == b ? 1.0 : 0.0, 1e-12) << d.info(a).name << " " << d.info(b).name;
    }
  }
}

TEST(Harmonics, GradientMatchesFiniteDifference) {
  const auto d = TestDictionary::spherical(5);
  const auto x = uqr::SpherePoint::normalized(0.4, 0.1, -0.6);
  // Two tangent directions at x.
  const std::array<double, 3> n{x[0], x[1], x[2]};
  const std::array<double, 3> t1{-n[1], n[0], 0.0};
  const std::array<double, 3> t2{n[1] * t1[2] - n[2] * t1[1], n[2] * t1[0] - n[0] * t1[2], n[0] * t1[1] - n[1] * t1[0]};
  const double h = 1e-6;
  for (std::size_t id = 0; id < d.size(); ++id) {
    const auto g = d.gradient(id, x);
    for (const auto& t : {t1, t2}) {
      const double len = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]);
      auto shift = [&](double s) {
        return uqr::SpherePoint::normalized(n[0] + s * t[0] / len, n[1] + s * t[1] / len, n[2] + s * t[2] / len);
      };
      const double fd = (d.value(id, shift(h)) - d.value(id, shift(-h))) / (2.0 * h);
      const double an = (g[0] * t[0] + g[1] * t[1] + g[2] * t[2]) / len;
      EXPECT_NEAR(fd, an, 1e-6) << d.info(id).name;
    }
    EXPECT_NEAR(g[0] * n[0] + g[1] * n[1] + g[2] * n[2], 0.0, 1e-12);
  }
}

TEST(Harmonics, GradientConstants) {
  const auto d = TestDictionary::spherical(4);
  for (std::size_t id = 0; id < d.size(); ++id) {
    const int l = d.info(id).degree;
    EXPECT_NEAR(d.info(id).grad_norm_n, std::sqrt(l * (l + 1.0)), 2e-3) << d.info(id).name;
    EXPECT_GE(d.info(id).grad_sup, d.info(id).grad_norm_n);
  }
  EXPECT_NEAR(d.info(find_id(d, "Y[1,0]")).grad_sup, std::sqrt(3.0), 1e-3);
}

TEST(Harmonics, IntegralsAgainstMeasure) {
  const auto d = TestDictionary::spherical(3);
  const auto mu = uqr::DiscreteMeasure::uniform(uqr::circle_points(256));
  const auto v = d.integrals(mu);
  ASSERT_EQ(v.size(), d.size());
  for (std::size_t id = 0; id < d.size(); ++id) {
    EXPECT_NEAR(v[id], oracle::circle_average(d.function(id)), 1e-12) << d.info(id).name;
  }
}

TEST(Harmonics, HypersphericalDictionary) {
  const auto d = TestDictionary::hyperspherical(4);
  EXPECT_EQ(d.dimension(), 3);
  EXPECT_GT(d.size(), 0u);
  const auto x = uqr::SpherePoint::normalized(0.1, 0.2, 0.3, 0.4);
  for (std::size_t id = 0; id < d.size(); ++id) {
    EXPECT_TRUE(std::isfinite(d.value(id, x)));
    EXPECT_GT(d.info(id).grad_norm_n, 0.0);
  }
  EXPECT_EQ(TestDictionary::for_dimension(3, 2).dimension(), 3);
}
