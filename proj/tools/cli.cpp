#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <optional>

#include "CLI11.hpp"
#include "uqr/deviation.hpp"
#include "uqr/ergodic.hpp"
#include "uqr/io.hpp"
#include "uqr/julia.hpp"
#include "uqr/potential.hpp"
#include "uqr/pullback.hpp"
#include "uqr/random.hpp"
#include "uqr/rational_map.hpp"

namespace uqr::cli {

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
  std::string config_path;
  std::string out = "-";
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

struct Context {
  Json config;
  EndomorphismPtr f;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  OutputFormat format = OutputFormat::json;
  std::string command;
  std::ostream* stdout_stream = nullptr;
};

const Json& section(const Json& config, const std::string& name) {
  static const Json empty = Json::object();
  if (!config.contains(name)) return empty;
  if (!config[name].is_object()) throw ConfigError(name, "expected an object");
  return config[name];
}

template <class T>
T get_or(const Json& obj, const std::string& key, T fallback, const std::string& field) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj[key];
  const std::string where = field.empty() ? key : field + "." + key;
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ConfigError(where, "expected true or false");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(where, "expected an integer");
    if (std::is_unsigned_v<T> && v.get<long long>() < 0) throw ConfigError(where, "expected a nonnegative integer");
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw ConfigError(where, "expected a number");
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ConfigError(where, "expected a string");
  }
  return v.get<T>();
}

template <class T>
T require(const Json& obj, const std::string& key, const std::string& field) {
  if (!obj.contains(key)) throw ConfigError(field.empty() ? key : field + "." + key, "missing required field");
  return get_or<T>(obj, key, T{}, field);
}

template <class T>
std::vector<T> list_or(const Json& obj, const std::string& key, std::vector<T> fallback, const std::string& field) {
  if (!obj.contains(key)) return fallback;
  const std::string where = field + "." + key;
  if (!obj[key].is_array()) throw ConfigError(where, "expected a list");
  std::vector<T> out;
  for (std::size_t i = 0; i < obj[key].size(); ++i) {
    const Json& v = obj[key][i];
    if (!v.is_number() || (std::is_integral_v<T> && !v.is_number_integer())) {
      throw ConfigError(where + "[" + std::to_string(i) + "]", "expected a number");
    }
    out.push_back(v.get<T>());
  }
  return out;
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json metadata(const Context& c) {
  return {{"tool", "uqr"},
          {"schema_version", kSchemaVersion},
          {"subcommand", c.command},
          {"seed", c.seed},
          {"map", c.config["map"]},
          {"family", c.f->family()},
          {"dimension", c.f->dimension()},
          {"degree", c.f->degree()},
          {"distortion", c.f->descriptor().distortion},
          {"timestamp", timestamp()}};
}

void emit(const Context& c, const std::string& path, const std::string& text) {
  if (path == "-") {
    *c.stdout_stream << text;
  } else {
    write_text(path, text);
  }
}

std::string sibling(const std::string& out, const std::string& suffix) {
  return out == "-" ? "-" : out + suffix;
}

PullbackConfig pullback_config(const Context& c, const Json& s, const std::string& field) {
  PullbackConfig cfg;
  cfg.max_atoms = get_or<std::size_t>(s, "max_atoms", 4096, field);
  if (cfg.max_atoms == 0) throw ConfigError(field + ".max_atoms", "must be positive");
  const auto prune = get_or<std::string>(s, "prune", "weight_resample", field);
  if (prune == "weight_resample") {
    cfg.prune = PruneStrategy::weight_resample;
  } else if (prune == "none") {
    cfg.prune = PruneStrategy::none;
  } else {
    throw ConfigError(field + ".prune", "expected \"weight_resample\" or \"none\"");
  }
  cfg.seed = derive_seed(c.seed, stream::kResample);
  cfg.threads = c.threads;
  return cfg;
}

struct PullbackRun {
  SpherePoint seed_point;
  int k = 0;
  PullbackConfig config;
  std::vector<DiscreteMeasure> levels;
};

PullbackRun run_pullback_section(const Context& c, const Json& s, const std::string& field) {
  PullbackRun r;
  if (!s.contains("seed_point")) throw ConfigError(field + ".seed_point", "missing required field");
  r.seed_point = parse_point(s["seed_point"], c.f->dimension(), field + ".seed_point");
  r.k = require<int>(s, "k", field);
  if (r.k < 0) throw ConfigError(field + ".k", "must be nonnegative");
  r.config = pullback_config(c, s, field);
  r.levels = pullback_trajectory(*c.f, r.seed_point, r.k, r.config);
  return r;
}

// Measure source shared by verify, mixing and capacity: a stored file, a discretized
// circle, or a fresh pullback.
DiscreteMeasure measure_source(const Context& c, const Json& s, const std::string& field,
                               std::optional<PullbackRun>* run = nullptr) {
  if (s.contains("measure_path")) return read_measure(require<std::string>(s, "measure_path", field));
  if (s.contains("circle")) {
    if (c.f->dimension() != 2) throw ConfigError(field + ".circle", "circle measures exist only on S^2");
    const auto n = require<std::size_t>(s, "circle", field);
    if (n == 0) throw ConfigError(field + ".circle", "must be positive");
    return DiscreteMeasure::uniform(circle_points(n));
  }
  const Json& p = section(c.config, "pullback");
  if (p.empty()) throw ConfigError(field, "needs measure_path, circle, or a top-level pullback section");
  PullbackRun r = run_pullback_section(c, p, "pullback");
  DiscreteMeasure mu = r.levels.back();
  if (run) *run = std::move(r);
  return mu;
}

TestFunction test_function(const Context& c, const TestDictionary& dict, const Json& j, const std::string& field) {
  if (j.is_number_integer() || (j.is_object() && j.contains("harmonic"))) {
    const Json& idj = j.is_object() ? j["harmonic"] : j;
    if (!idj.is_number_integer() || idj.get<long long>() < 0 || idj.get<std::size_t>() >= dict.size()) {
      throw ConfigError(field, "expected a dictionary id in [0, " + std::to_string(dict.size()) + ")");
    }
    return dict.function(idj.get<std::size_t>());
  }
  if (j.is_object() && j.contains("chebyshev")) {
    if (c.f->dimension() != 2) throw ConfigError(field, "chebyshev test functions exist only on S^2");
    const int m = get_or<int>(j, "chebyshev", 1, field);
    if (m < 0) throw ConfigError(field + ".chebyshev", "must be nonnegative");
    return [m](const SpherePoint& p) {
      const ChartPoint z = stereo_project(p);
      if (z.infinite) return std::nan("");
      const double t = std::clamp(z.value.real() / 2.0, -1.0, 1.0);
      return std::cos(m * std::acos(t));
    };
  }
  throw ConfigError(field, "expected a dictionary id, {\"harmonic\": id} or {\"chebyshev\": m}");
}

Json chart_moments(const DiscreteMeasure& mu) {
  Json m = Json::object();
  if (mu.dimension() != 2) return m;
  double at_infinity = 0.0;
  std::vector<double> moments(6, 0.0);
  for (const auto& a : mu.atoms()) {
    const ChartPoint z = stereo_project(a.point);
    if (z.infinite) {
      at_infinity += a.weight;
      continue;
    }
    double x = 1.0;
    for (auto& v : moments) {
      x *= z.value.real();
      v += a.weight * x;
    }
  }
  for (std::size_t i = 0; i < moments.size(); ++i) m["re_z^" + std::to_string(i + 1)] = moments[i];
  m["mass_at_infinity"] = at_infinity;
  return m;
}

int cmd_pullback(const Context& c) {
  const Json& s = section(c.config, "pullback");
  PullbackRun r = run_pullback_section(c, s, "pullback");
  const auto degree = get_or<int>(s, "dictionary_degree", 8, "pullback");
  const auto snapshots = list_or<int>(s, "snapshots", {}, "pullback");
  const std::string ext = c.format == OutputFormat::csv ? ".csv" : ".json";

  const auto& mu = r.levels.back();
  emit(c, c.out, c.format == OutputFormat::csv ? measure_to_csv(mu) : measure_to_json(mu));
  for (int k : snapshots) {
    if (k < 0 || k > r.k) throw ConfigError("pullback.snapshots", "level " + std::to_string(k) + " outside [0, k]");
    if (c.out != "-") write_measure(c.out + ".k" + std::to_string(k) + ext, r.levels[static_cast<std::size_t>(k)], c.format);
  }

  Json report = {{"metadata", metadata(c)},
                 {"seed_point", to_json(r.seed_point)},
                 {"k", r.k},
                 {"atoms", mu.size()},
                 {"total_mass", mu.total_mass()},
                 {"max_atom", mu.max_weight()},
                 {"chart_moments", chart_moments(mu)}};
  if (r.k >= 3) {
    const auto dict = TestDictionary::for_dimension(c.f->dimension(), degree);
    const auto window = list_or<int>(s, "convergence_window", {-1, -1}, "pullback");
    if (window.size() != 2) throw ConfigError("pullback.convergence_window", "expected [lo, hi]");
    try {
      const auto conv = convergence_from_trajectory(r.levels, c.f->degree(), c.f->dimension(), dict, window[0], window[1]);
      report["convergence"] = to_json(conv);
      if (c.format == OutputFormat::csv) emit(c, sibling(c.out, ".convergence.csv"), convergence_to_csv(conv));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("pullback.convergence_window", e.what());
    }
  }
  if (c.out != "-") write_text(c.out + ".report.json", report.dump(2) + "\n");
  return kExitOk;
}

int cmd_verify(const Context& c) {
  const Json& s = section(c.config, "verify");
  const auto degree = get_or<int>(s, "dictionary_degree", 8, "verify");
  const auto dict = TestDictionary::for_dimension(c.f->dimension(), degree);
  auto radii = list_or<double>(s, "radii", {0.1, 0.03, 0.01}, "verify");
  const double balance_threshold = get_or<double>(s, "balance_threshold", 1e-2, "verify");
  const double support_threshold = get_or<double>(s, "support_threshold", 5e-2, "verify");

  Json bundle = {{"metadata", metadata(c)}};
  Json stages = Json::object();
  Json errors = Json::array();
  bool failed_convergence = false;
  bool failed_check = false;

  auto stage = [&](const std::string& name, auto&& fn) {
    try {
      stages[name] = fn();
    } catch (const std::exception& e) {
      errors.push_back({{"stage", name}, {"error", e.what()}});
    }
  };

  std::optional<PullbackRun> run;
  std::optional<DiscreteMeasure> mu;
  try {
    mu = measure_source(c, s, "verify", &run);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    errors.push_back({{"stage", "measure"}, {"error", e.what()}});
  }

  if (mu) {
    double balance = NAN;
    stage("balance", [&] {
      balance = balance_residual(*c.f, *mu, dict, c.threads);
      const bool pass = balance < balance_threshold;
      failed_check |= !pass;
      return Json{{"residual", balance}, {"threshold", balance_threshold}, {"pass", pass}};
    });
    stage("invariance", [&] {
      const double inv = invariance_residual(*c.f, *mu, dict, c.threads);
      const bool pass = inv < balance_threshold;
      failed_check |= !pass;
      return Json{{"residual", inv},
                  {"threshold", balance_threshold},
                  {"pass", pass},
                  {"at_most_balance", std::isnan(balance) ? Json(nullptr) : Json(inv <= balance + 1e-9)}};
    });
    stage("atom_scan", [&] {
      const auto scan = atom_scan(*mu, radii);
      if (!scan.empty() && scan.back().max_mass >= 0.5) failed_convergence = true;
      return to_json(scan);
    });
    stage("support", [&] {
      const auto* rational = dynamic_cast<const RationalMap*>(c.f.get());
      if (!rational) return Json{{"skipped", "no Julia reference for this family"}};
      const Json& js = section(s, "julia");
      EscapeTimeOptions eo;
      eo.spacing = get_or<double>(js, "spacing", 0.01, "verify.julia");
      eo.max_iterations = get_or<int>(js, "max_iterations", 1000, "verify.julia");
      const auto count = get_or<std::size_t>(js, "count", 20000, "verify.julia");
      const double r = get_or<double>(js, "r", 0.05, "verify.julia");
      const auto ref = julia_reference(*rational, derive_seed(c.seed, stream::kSeedPoints), count, eo);
      const auto rep = support_vs_julia(*mu, ref, r);
      const bool pass = rep.hausdorff < support_threshold;
      failed_check |= !pass;
      Json j = to_json(rep);
      j["threshold"] = support_threshold;
      j["pass"] = pass;
      return j;
    });
    stage("mixing", [&] {
      const Json& ms = section(s, "mixing");
      const Json phi_spec = ms.contains("phi") ? ms["phi"] : Json(std::min<std::size_t>(2, dict.size() - 1));
      const Json psi_spec = ms.contains("psi") ? ms["psi"] : phi_spec;
      const auto k_max = get_or<int>(ms, "k_max", 10, "verify.mixing");
      return to_json(mixing_correlation(*c.f, *mu, test_function(c, dict, phi_spec, "verify.mixing.phi"),
                                        test_function(c, dict, psi_spec, "verify.mixing.psi"), k_max));
    });
    if (run && run->k >= 3) {
      stage("convergence", [&] {
        const auto conv = convergence_from_trajectory(run->levels, c.f->degree(), c.f->dimension(), dict);
        if (!conv.converged) failed_convergence = true;
        return to_json(conv);
      });
    }
  }
  bundle["stages"] = stages;
  bundle["errors"] = errors;
  bundle["status"] = !errors.empty()        ? "ERROR"
                     : failed_convergence ? "FAILED-CONVERGENCE"
                     : failed_check       ? "FAILED-CHECK"
                                          : "OK";
  emit(c, c.out, bundle.dump(2) + "\n");
  return errors.empty() ? kExitOk : kExitRuntime;
}

int cmd_capacity(const Context& c) {
  const Json& s = section(c.config, "capacity");
  const double tolerance = get_or<double>(s, "tolerance", 1e-10, "capacity");
  double cell_radius = get_or<double>(s, "cell_radius", 0.0, "capacity");
  std::vector<SpherePoint> points;
  if (s.contains("points")) {
    if (!s["points"].is_array()) throw ConfigError("capacity.points", "expected a list of points");
    for (std::size_t i = 0; i < s["points"].size(); ++i) {
      points.push_back(parse_point(s["points"][i], c.f->dimension(), "capacity.points[" + std::to_string(i) + "]"));
    }
  } else if (s.contains("fibonacci")) {
    const auto n = require<std::size_t>(s, "fibonacci", "capacity");
    points = fibonacci_sphere(n);
    if (cell_radius <= 0.0) cell_radius = grid_cell_radius(n);
  } else {
    for (const auto& a : measure_source(c, s, "capacity").atoms()) points.push_back(a.point);
  }
  if (points.size() < 2) throw ConfigError("capacity", "need at least two points");
  const auto rep = equilibrium_weights(points, tolerance, cell_radius);
  if (c.format == OutputFormat::csv) {
    std::vector<WeightedAtom> atoms;
    std::string text;
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t k = 0; k < points[i].ambient_size(); ++k) text += format_double(points[i][k]) + ",";
      text += format_double(rep.weights[i]) + "\n";
    }
    std::string header;
    for (std::size_t k = 0; k < points.front().ambient_size(); ++k) header += "x" + std::to_string(k) + ",";
    emit(c, c.out, header + "weight\n" + text);
  } else {
    Json j = to_json(rep);
    j["metadata"] = metadata(c);
    emit(c, c.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_deviation(const Context& c) {
  const Json& s = section(c.config, "deviation");
  const auto degree = get_or<int>(s, "max_degree", 4, "deviation");
  const auto dict = TestDictionary::for_dimension(c.f->dimension(), std::max(degree, 1));
  const auto grid_size = get_or<std::size_t>(s, "grid_size", 400, "deviation");
  if (c.f->dimension() != 2) throw ConfigError("deviation", "the Fibonacci grid exists only on S^2");
  if (grid_size < 2) throw ConfigError("deviation.grid_size", "must be >= 2");
  const auto eps = list_or<double>(s, "epsilon", {0.05, 0.1}, "deviation");
  std::vector<int> ks = list_or<int>(s, "k", {}, "deviation");
  if (ks.empty()) {
    for (int k = 0; k <= 10; ++k) ks.push_back(k);
  }
  for (double e : eps) {
    if (!(e > 0.0)) throw ConfigError("deviation.epsilon", "values must be positive");
  }
  DeviationOptions o;
  o.k_max = 0;
  for (int k : ks) {
    if (k < 0) throw ConfigError("deviation.k", "levels must be nonnegative");
    o.k_max = std::max(o.k_max, k);
  }
  o.omega_seeds = get_or<std::size_t>(s, "omega_seeds", 1024, "deviation");
  o.omega_budget = get_or<std::size_t>(s, "omega_budget", 64, "deviation");
  o.tree_budget = get_or<std::size_t>(s, "tree_budget", 0, "deviation");
  o.slack = get_or<double>(s, "slack", 1.0, "deviation");
  o.seed = derive_seed(c.seed, stream::kQuadrature);
  o.threads = c.threads;
  const bool include_points = get_or<bool>(s, "include_points", false, "deviation");

  const DeviationScanner scanner(*c.f, dict, fibonacci_sphere(grid_size), o);
  Json reports = Json::array();
  std::string csv = "function,epsilon,k,flagged,capacity,bound,within_bound\n";
  bool all_within = true;
  for (std::size_t id : dict.ids_up_to_degree(degree)) {
    for (double e : eps) {
      for (int k : ks) {
        const auto r = scanner.report(id, e, k);
        all_within &= r.within_bound;
        Json j = to_json(r);
        if (!include_points) j.erase("flagged");
        reports.push_back(j);
        csv += r.function_name + "," + format_double(e) + "," + std::to_string(k) + "," +
               std::to_string(r.flagged.size()) + "," + format_double(r.capacity) + "," + format_double(r.bound) + "," +
               (r.within_bound ? "true" : "false") + "\n";
      }
    }
  }
  if (c.format == OutputFormat::csv) {
    emit(c, c.out, csv);
  } else {
    emit(c, c.out, Json{{"metadata", metadata(c)}, {"all_within_bound", all_within}, {"reports", reports}}.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_exceptional(const Context& c) {
  const Json& s = section(c.config, "exceptional");
  const int depth = get_or<int>(s, "depth", 8, "exceptional");
  const int bound = get_or<int>(s, "bound", 10, "exceptional");
  if (depth < 1) throw ConfigError("exceptional.depth", "must be >= 1");
  if (bound < 1) throw ConfigError("exceptional.bound", "must be >= 1");
  const auto pts = exceptional_scan(*c.f, depth, bound);
  Json list = Json::array();
  for (const auto& p : pts) {
    Json e = {{"coords", to_json(p)}};
    if (p.dimension() == 2) {
      const ChartPoint z = stereo_project(p);
      e["chart"] = z.infinite ? Json("inf") : Json{z.value.real(), z.value.imag()};
    }
    list.push_back(e);
  }
  if (c.format == OutputFormat::csv) {
    std::string text = "index,coords\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      text += std::to_string(i);
      for (std::size_t k = 0; k < pts[i].ambient_size(); ++k) text += "," + format_double(pts[i][k]);
      text += "\n";
    }
    emit(c, c.out, text);
  } else {
    const Json j = {{"metadata", metadata(c)},
                    {"depth", depth},
                    {"bound", bound},
                    {"points", list},
                    {"search_space", "periodic points of period <= 3 and the two poles; no a priori bound on the "
                                     "number of exceptional points is used"}};
    emit(c, c.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_mixing(const Context& c) {
  const Json& s = section(c.config, "mixing");
  const auto degree = get_or<int>(s, "dictionary_degree", 8, "mixing");
  const auto dict = TestDictionary::for_dimension(c.f->dimension(), degree);
  const DiscreteMeasure mu = measure_source(c, s, "mixing");
  const Json phi_spec = s.contains("phi") ? s["phi"] : Json(std::min<std::size_t>(2, dict.size() - 1));
  const Json psi_spec = s.contains("psi") ? s["psi"] : phi_spec;
  const auto k_max = get_or<int>(s, "k_max", 10, "mixing");
  if (k_max < 0) throw ConfigError("mixing.k_max", "must be nonnegative");
  const auto rep = mixing_correlation(*c.f, mu, test_function(c, dict, phi_spec, "mixing.phi"),
                                      test_function(c, dict, psi_spec, "mixing.psi"), k_max);
  if (c.format == OutputFormat::csv) {
    std::string text = "k,correlation\n";
    for (const auto& [k, v] : rep.correlations) text += std::to_string(k) + "," + format_double(v) + "\n";
    emit(c, c.out, text);
  } else {
    Json j = to_json(rep);
    j["metadata"] = metadata(c);
    emit(c, c.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

Context load_context(const Options& o, const std::string& command, std::ostream& out) {
  Context c;
  c.command = command;
  c.stdout_stream = &out;
  c.out = o.out;
  c.format = parse_format(o.format);
  c.threads = o.threads;
  try {
    c.config = Json::parse(read_text(o.config_path));
  } catch (const Json::parse_error& e) {
    throw ConfigError(o.config_path, std::string("invalid JSON: ") + e.what());
  }
  if (!c.config.is_object()) throw ConfigError("config", "expected a JSON object");
  if (!c.config.contains("schema_version")) throw ConfigError("schema_version", "missing required field");
  if (get_or<int>(c.config, "schema_version", 0, "") != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (!c.config.contains("map")) throw ConfigError("map", "missing required field");
  c.f = parse_map(c.config["map"], "map");
  c.seed = o.seed ? *o.seed : get_or<std::uint64_t>(c.config, "seed", 0, "");
  return c;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium measures of uniformly quasiregular sphere maps"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"pullback", "Iterated pullback of a Dirac measure; writes the measure and a convergence report"},
      {"verify", "Balance, invariance, atom, support and mixing checks on a measure"},
      {"capacity", "Equilibrium weights and Riesz capacity of a point set"},
      {"deviation", "Deviation sets of pullbacks and their capacities"},
      {"exceptional", "Search for points with finite backward orbit"},
      {"mixing", "Correlation decay of test functions under iteration"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config_path, "Experiment config (JSON)")->required();
    sub->add_option("--out", o.out, "Output path, '-' for stdout");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "Root seed (overrides the config)");
    sub->add_option("--threads", o.threads, "Worker threads, 0 = all hardware threads");
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::string command;
  for (auto* sub : subs) {
    if (sub->parsed()) command = sub->get_name();
  }
  try {
    const Context c = load_context(o, command, out);
    if (command == "pullback") return cmd_pullback(c);
    if (command == "verify") return cmd_verify(c);
    if (command == "capacity") return cmd_capacity(c);
    if (command == "deviation") return cmd_deviation(c);
    if (command == "exceptional") return cmd_exceptional(c);
    if (command == "mixing") return cmd_mixing(c);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace uqr::cli
