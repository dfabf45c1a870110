#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "uqr/deviation.hpp"
#include "uqr/endomorphism.hpp"
#include "uqr/ergodic.hpp"
#include "uqr/measure.hpp"
#include "uqr/potential.hpp"

namespace uqr {

using Json = nlohmann::json;

/// Invalid config or input file; the message starts with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class OutputFormat { json, csv };
OutputFormat parse_format(const std::string& s);

/// Map spec: {"family": "rational", "numerator": [[re, im], ...], "denominator": [...]},
/// {"family": "zorich", "stretch": m}, or {"preset": name}. Coefficients ascend in degree.
EndomorphismPtr parse_map(const Json& j, const std::string& field = "map");

/// Point spec: {"chart": [re, im]}, {"chart": "inf"} (n = 2 only) or {"coords": [...]}.
SpherePoint parse_point(const Json& j, int dimension, const std::string& field);

/// "%.17g"; non-finite values as "inf", "-inf", "nan".
std::string format_double(double x);

/// JSON array of {"coords": [...], "weight": w} records, one per line.
std::string measure_to_json(const DiscreteMeasure& mu);
/// Header x0,...,xn,weight then one row per atom.
std::string measure_to_csv(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const std::string& text);
DiscreteMeasure measure_from_csv(const std::string& text);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);
void write_measure(const std::string& path, const DiscreteMeasure& mu, OutputFormat format);
/// Format inferred from the extension (.csv, otherwise JSON).
DiscreteMeasure read_measure(const std::string& path);

Json to_json(const SpherePoint& p);
Json to_json(const CapacityReport& r);
Json to_json(const ConvergenceReport& r);
Json to_json(const DeviationSetReport& r);
Json to_json(const SupportReport& r);
Json to_json(const MixingReport& r);
Json to_json(const std::vector<BallMass>& scan);

/// Two columns: k,deviation.
std::string convergence_to_csv(const ConvergenceReport& r);

}  // namespace uqr
