#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "uqr/io.hpp"

using uqr::Json;

TEST(Io, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(uqr::format_double(x)), x);
  EXPECT_EQ(uqr::format_double(INFINITY), "inf");
}

TEST(Io, MeasureJsonRoundTripIsExact) {
  std::vector<uqr::WeightedAtom> atoms;
  const auto pts = uqr::sample_uniform(50, 3);
  for (std::size_t i = 0; i < pts.size(); ++i) atoms.push_back({pts[i], 1.0 + i});
  const uqr::DiscreteMeasure mu(atoms);
  const auto back = uqr::measure_from_json(uqr::measure_to_json(mu));
  ASSERT_EQ(back.size(), mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    EXPECT_TRUE(back.atoms()[i].point == mu.atoms()[i].point);
    EXPECT_EQ(back.atoms()[i].weight, mu.atoms()[i].weight);
  }
  const auto j = Json::parse(uqr::measure_to_json(mu));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["coords"].size(), 3u);
}

TEST(Io, MeasureCsvRoundTripAndFiles) {
  const auto mu = uqr::DiscreteMeasure::uniform(uqr::sample_uniform(20, 8, 3));
  const auto back = uqr::measure_from_csv(uqr::measure_to_csv(mu));
  ASSERT_EQ(back.size(), mu.size());
  EXPECT_EQ(back.dimension(), 3);
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = (dir / "uqr_io_test.csv").string();
  uqr::write_measure(path, mu, uqr::OutputFormat::csv);
  EXPECT_EQ(uqr::read_measure(path).size(), mu.size());
  std::filesystem::remove(path);
  EXPECT_THROW(uqr::read_text((dir / "uqr_missing_file.json").string()), std::exception);
}

TEST(Io, ParseMapPresetsAndErrors) {
  EXPECT_EQ(uqr::parse_map(Json{{"preset", "basilica"}})->degree(), 2);
  const Json ok = {{"family", "rational"}, {"numerator", {{0, 0}, {0, 0}, {1, 0}}}, {"denominator", {{1, 0}}}};
  EXPECT_EQ(uqr::parse_map(ok)->degree(), 2);
  const Json bad = {{"family", "rational"}, {"numerator", {{0, 0}, "x", {1, 0}}}};
  try {
    uqr::parse_map(bad);
    FAIL() << "expected ConfigError";
  } catch (const uqr::ConfigError& e) {
    EXPECT_NE(e.field().find("map.numerator"), std::string::npos);
  }
  EXPECT_THROW(uqr::parse_map(Json{{"preset", "unknown"}}), uqr::ConfigError);
  EXPECT_THROW(uqr::parse_map(Json{{"family", "mystery"}}), uqr::ConfigError);
  EXPECT_THROW(uqr::parse_map(Json{{"family", "rational"}, {"numerator", {{1, 0}, {1, 0}}}}), uqr::ConfigError);
}

TEST(Io, ParsePoint) {
  EXPECT_TRUE(uqr::stereo_project(uqr::parse_point(Json{{"chart", "inf"}}, 2, "p")).infinite);
  const auto p = uqr::parse_point(Json{{"chart", {0.5, -0.25}}}, 2, "p");
  EXPECT_NEAR(std::abs(uqr::stereo_project(p).value - uqr::Complex(0.5, -0.25)), 0.0, 1e-15);
  EXPECT_EQ(uqr::parse_point(Json{{"coords", {0, 0, 0, 2}}}, 3, "p").dimension(), 3);
  EXPECT_THROW(uqr::parse_point(Json{{"coords", {0, 0, 1}}}, 3, "p"), uqr::ConfigError);
  EXPECT_THROW(uqr::parse_point(Json{{"chart", {0.5, 0.1}}}, 3, "p"), uqr::ConfigError);
  EXPECT_THROW(uqr::parse_format("xml"), uqr::ConfigError);
}

TEST(Io, ReportsSerializeNonFiniteAsStrings) {
  uqr::CapacityReport r;
  r.energy = INFINITY;
  const auto j = uqr::to_json(r);
  EXPECT_EQ(j["energy"], "inf");
}
