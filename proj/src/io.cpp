#include "uqr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uqr/rational_map.hpp"
#include "uqr/reference_maps.hpp"
#ifdef UQR_HAS_ZORICH
#include "uqr/zorich_map.hpp"
#endif

namespace uqr {

namespace {

Json num(double x) { return std::isfinite(x) ? Json(x) : Json(format_double(x)); }

Complex parse_complex(const Json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(field, "expected a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Poly parse_poly(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field, "expected a nonempty list of [re, im] coefficients");
  Poly p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(parse_complex(j[i], field + "[" + std::to_string(i) + "]"));
  return p;
}

std::vector<double> parse_coords(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "expected a list of coordinates");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(field + "[" + std::to_string(i) + "]", "expected a number");
    v.push_back(j[i].get<double>());
  }
  return v;
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw ConfigError("format", "expected 'json' or 'csv', got '" + s + "'");
}

EndomorphismPtr parse_map(const Json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected an object");
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) throw ConfigError(field + ".preset", "expected a string");
    try {
      return std::make_shared<RationalMap>(maps::by_name(j["preset"].get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field + ".preset", e.what());
    }
  }
  if (!j.contains("family") || !j["family"].is_string()) {
    throw ConfigError(field + ".family", "expected \"rational\" or \"zorich\"");
  }
  const auto family = j["family"].get<std::string>();
  if (family == "rational") {
    if (!j.contains("numerator")) throw ConfigError(field + ".numerator", "missing");
    const Poly num = parse_poly(j["numerator"], field + ".numerator");
    const Poly den = j.contains("denominator") ? parse_poly(j["denominator"], field + ".denominator")
                                               : Poly{Complex(1.0)};
    try {
      return std::make_shared<RationalMap>(num, den);
    } catch (const std::invalid_argument& e) {
      // Constructor messages begin with the offending field name.
      throw ConfigError(field, e.what());
    }
  }
  if (family == "zorich") {
#ifdef UQR_HAS_ZORICH
    if (!j.contains("stretch") || !j["stretch"].is_number_integer()) {
      throw ConfigError(field + ".stretch", "expected an odd integer >= 3");
    }
    try {
      return std::make_shared<ZorichPowerMap>(j["stretch"].get<int>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field + ".stretch", e.what());
    }
#else
    throw ConfigError(field + ".family", "this build does not include the zorich family");
#endif
  }
  throw ConfigError(field + ".family", "unknown family '" + family + "'");
}

SpherePoint parse_point(const Json& j, int dimension, const std::string& field) {
  if (j.is_object() && j.contains("chart")) {
    if (dimension != 2) throw ConfigError(field + ".chart", "chart points exist only on S^2");
    const auto& c = j["chart"];
    if (c.is_string()) {
      if (c.get<std::string>() == "inf") return SpherePoint::north(2);
      throw ConfigError(field + ".chart", "expected [re, im] or \"inf\"");
    }
    return stereo_lift(parse_complex(c, field + ".chart"));
  }
  if (j.is_object() && j.contains("coords")) {
    const auto v = parse_coords(j["coords"], field + ".coords");
    if (static_cast<int>(v.size()) != dimension + 1) {
      throw ConfigError(field + ".coords", "expected " + std::to_string(dimension + 1) + " coordinates");
    }
    try {
      return SpherePoint::normalized(v);
    } catch (const std::exception& e) {
      throw ConfigError(field + ".coords", e.what());
    }
  }
  throw ConfigError(field, "expected {\"chart\": [re, im]} or {\"coords\": [...]}");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string measure_to_json(const DiscreteMeasure& mu) {
  std::string s = "[\n";
  const auto& atoms = mu.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    s += "  {\"coords\": [";
    for (std::size_t c = 0; c < atoms[i].point.ambient_size(); ++c) {
      s += (c ? ", " : "") + format_double(atoms[i].point[c]);
    }
    s += "], \"weight\": " + format_double(atoms[i].weight) + "}";
    s += i + 1 < atoms.size() ? ",\n" : "\n";
  }
  return s + "]\n";
}

std::string measure_to_csv(const DiscreteMeasure& mu) {
  std::string s;
  const std::size_t m = mu.empty() ? 0 : mu.atoms().front().point.ambient_size();
  for (std::size_t c = 0; c < m; ++c) s += "x" + std::to_string(c) + ",";
  s += "weight\n";
  for (const auto& a : mu.atoms()) {
    for (std::size_t c = 0; c < m; ++c) s += format_double(a.point[c]) + ",";
    s += format_double(a.weight) + "\n";
  }
  return s;
}

DiscreteMeasure measure_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("measure", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw ConfigError("measure", "expected a nonempty array of atoms");
  std::vector<WeightedAtom> atoms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string field = "measure[" + std::to_string(i) + "]";
    if (!j[i].is_object() || !j[i].contains("coords") || !j[i].contains("weight") || !j[i]["weight"].is_number()) {
      throw ConfigError(field, "expected {\"coords\": [...], \"weight\": w}");
    }
    const auto v = parse_coords(j[i]["coords"], field + ".coords");
    try {
      atoms.push_back({SpherePoint::from_unit(v), j[i]["weight"].get<double>()});
    } catch (const std::exception& e) {
      throw ConfigError(field + ".coords", e.what());
    }
  }
  try {
    return DiscreteMeasure(std::move(atoms));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("measure", e.what());
  }
}

DiscreteMeasure measure_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("measure", "empty CSV");
  std::vector<WeightedAtom> atoms;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> v;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("measure row " + std::to_string(row), "not a number: '" + cell + "'");
      }
    }
    if (v.size() < 4) throw ConfigError("measure row " + std::to_string(row), "too few columns");
    const double w = v.back();
    v.pop_back();
    try {
      atoms.push_back({SpherePoint::from_unit(v), w});
    } catch (const std::exception& e) {
      throw ConfigError("measure row " + std::to_string(row), e.what());
    }
  }
  if (atoms.empty()) throw ConfigError("measure", "no atoms");
  try {
    return DiscreteMeasure(std::move(atoms));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("measure", e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_measure(const std::string& path, const DiscreteMeasure& mu, OutputFormat format) {
  write_text(path, format == OutputFormat::csv ? measure_to_csv(mu) : measure_to_json(mu));
}

DiscreteMeasure read_measure(const std::string& path) {
  const std::string text = read_text(path);
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return csv ? measure_from_csv(text) : measure_from_json(text);
}

Json to_json(const SpherePoint& p) {
  Json c = Json::array();
  for (std::size_t i = 0; i < p.ambient_size(); ++i) c.push_back(p[i]);
  return c;
}

Json to_json(const CapacityReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.support) pts.push_back(to_json(p));
  return {{"support", pts},
          {"weights", r.weights},
          {"energy", num(r.energy)},
          {"capacity", num(r.capacity)},
          {"offdiagonal_energy", num(r.offdiagonal_energy)},
          {"cell_radius", num(r.cell_radius)},
          {"max_support_potential", num(r.max_support_potential)},
          {"kkt_residual", num(r.kkt_residual)},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

Json to_json(const ConvergenceReport& r) {
  Json devs = Json::array();
  for (const auto& [k, d] : r.deviations) devs.push_back({{"k", k}, {"deviation", num(d)}});
  return {{"deviations", devs},
          {"fitted_exponent", num(r.fitted_exponent)},
          {"exponent_stderr", num(r.exponent_stderr)},
          {"bound_exponent", num(r.bound_exponent)},
          {"window", {r.window_lo, r.window_hi}},
          {"final_max_atom", num(r.final_max_atom)},
          {"fit_valid", r.fit_valid},
          {"converged", r.converged}};
}

Json to_json(const DeviationSetReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.flagged) pts.push_back(to_json(p));
  return {{"epsilon", r.epsilon},
          {"k", r.k},
          {"function_id", r.function_id},
          {"function", r.function_name},
          {"grid_size", r.grid_size},
          {"flagged_count", r.flagged.size()},
          {"flagged", pts},
          {"flagged_diameter", num(r.flagged_diameter)},
          {"max_deviation", num(r.max_deviation)},
          {"capacity", num(r.capacity)},
          {"capacity_converged", r.capacity_converged},
          {"bound", num(r.bound)},
          {"slack", num(r.slack)},
          {"within_bound", r.within_bound},
          {"grad_norm_n", num(r.grad_norm_n)},
          {"distortion", num(r.distortion)}};
}

Json to_json(const SupportReport& r) {
  return {{"hausdorff", num(r.hausdorff)},
          {"support_to_reference", num(r.support_to_reference)},
          {"reference_to_support", num(r.reference_to_support)},
          {"coverage", num(r.coverage)},
          {"support_size", r.support_size},
          {"reference_size", r.reference_size}};
}

Json to_json(const MixingReport& r) {
  Json c = Json::array();
  for (const auto& [k, v] : r.correlations) c.push_back({{"k", k}, {"correlation", num(v)}});
  return {{"correlations", c}, {"invariance_residual", num(r.invariance_residual)}};
}

Json to_json(const std::vector<BallMass>& scan) {
  Json a = Json::array();
  for (const auto& b : scan) a.push_back({{"radius", num(b.radius)}, {"max_mass", num(b.max_mass)}});
  return a;
}

std::string convergence_to_csv(const ConvergenceReport& r) {
  std::string s = "k,deviation\n";
  for (const auto& [k, d] : r.deviations) s += std::to_string(k) + "," + format_double(d) + "\n";
  return s;
}

}  // namespace uqr
