#include "brody/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "brody/blowup.hpp"
#include "brody/cover.hpp"
#include "brody/deformation.hpp"
#include "brody/geometry.hpp"

namespace brody {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double x = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(x)) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

// Number, or an angle "pi", "pi/16", "3*pi/8", "3pi/8".
double parse_angle(const std::string& key, const std::string& value) {
  static const std::regex re(R"(^\s*(?:([0-9.]+)\s*\*?\s*)?pi\s*(?:/\s*([0-9.]+))?\s*$)");
  std::smatch m;
  if (std::regex_match(value, m, re)) {
    double k = m[1].matched ? parse_double(key, m[1].str()) : 1.0;
    double d = m[2].matched ? parse_double(key, m[2].str()) : 1.0;
    if (d == 0.0) throw ConfigError(key + ": division by zero");
    return k * kPi / d;
  }
  return parse_double(key, value);
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long long x = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  std::int64_t x = parse_int(key, value);
  if (x < 0) throw ConfigError(key + ": must be nonnegative");
  return static_cast<std::uint64_t>(x);
}

int parse_small_int(const std::string& key, const std::string& value) {
  std::int64_t x = parse_int(key, value);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw ConfigError(key + ": out of range");
  return static_cast<int>(x);
}

struct Assertions {
  Json list = Json::array();
  bool all = true;
  void add(const std::string& name, bool passed, const std::string& detail = "") {
    Json j{{"name", name}, {"passed", passed}};
    if (!detail.empty()) j["detail"] = detail;
    list.push_back(std::move(j));
    all = all && passed;
  }
};

Lattice choose_lattice(const ExperimentConfig& c) {
  if (c.lattice == "gaussian") return Lattice::gaussian(c.mode);
  return sample_period_matrix(c.seed).lattice;
}

Json run_scan(const ExperimentConfig& c, Assertions& a, std::map<std::string, std::string>&) {
  Lattice lattice = choose_lattice(c);
  ScanReport report = genericity_scan(lattice, c.height);
  a.add("count_matches_enumeration", report.count == enumerate_submodules(c.height).size());
  Json j = to_json(report);
  j["seed"] = c.seed;
  j["lattice"] = to_json(lattice);
  return j;
}

Json run_deform(const ExperimentConfig& c, Assertions& a, std::map<std::string, std::string>& files) {
  Json j;
  auto finish = [&](const Lattice& lattice, const RiemannForm& form, const Submodule& sub) {
    DeformationReport report = check_deformation(lattice, form, sub, c.ts);
    a.add("totally_real_exactly_off_zero", report.as_expected());
    CsvWriter csv;
    csv.row({"t", "totally_real", "normalized_det", "isometry", "isometry_error"});
    for (const auto& e : report.entries)
      csv.row({format_double(e.t), e.result.totally_real ? "1" : "0", format_double(e.result.normalized_det),
               e.isometry ? "1" : "0", format_double(e.isometry_error)});
    files["deform.csv"] = csv.str();
    j["lattice"] = to_json(lattice);
    j["form"] = to_json(form);
    j["submodule"] = to_json(sub);
    j["deformation"] = to_json(report);
  };
  if (c.lattice == "gaussian") {
    Lattice lattice = Lattice::gaussian(c.mode);
    IntMatrix rows = IntMatrix::Zero(3, 6);
    rows(0, 0) = 1;  // e1
    rows(1, 3) = 1;  // i e1
    rows(2, 1) = 1;  // e2
    finish(lattice, RiemannForm::standard(lattice), Submodule(rows));
  } else {
    DegenerateSample s = sample_degenerate_submodule(c.seed);
    finish(s.sample.lattice, s.sample.form, s.submodule);
  }
  return j;
}

Json run_cover(const ExperimentConfig& c, Assertions& a, std::map<std::string, std::string>& files) {
  CoverOptions options;
  options.max_centers = c.max_centers;
  if (c.time_limit > 0)
    options.deadline = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(c.time_limit));
  CoverNet net = build_cover(c.eps, c.seed, c.budget, options);
  double coverage = verify_cover(net, c.probes, c.seed + 1);
  MarginReport margin = assign_lines_and_margin(net, c.probes_per_ball, c.seed + 2);
  a.add("coverage_is_one", coverage == 1.0, "coverage " + format_double(coverage));
  a.add("margin_at_least_pi_over_8", margin.ok(), "min margin " + format_double(margin.overall_min));

  CsvWriter csv;
  csv.row({"ball", "min_margin"});
  for (std::size_t i = 0; i < margin.min_margin.size(); ++i)
    csv.row({std::to_string(i), format_double(margin.min_margin[i])});
  files["margin.csv"] = csv.str();
  files["net.json"] = to_json(net).dump(1) + "\n";

  Json m = to_json(margin);
  m.erase("per_ball_min");
  return Json{{"net_size", net.centers.size()}, {"epsilon", net.epsilon}, {"coverage", coverage}, {"margin", std::move(m)}};
}

void table_files(const std::vector<ExplosionRow>& rows, const std::string& stem,
                 std::map<std::string, std::string>& files) {
  CsvWriter csv;
  csv.row({"n", "re(s_n)", "im(s_n)", "base_norm", "lifted_norm", "ratio"});
  std::string plot;
  for (const auto& r : rows) {
    if (!r.ok) {
      csv.row({std::to_string(r.n), "", "", "", "", ""});
      continue;
    }
    csv.row({std::to_string(r.n), format_double(r.s.real()), format_double(r.s.imag()), format_double(r.base_norm),
             format_double(r.lifted_norm), format_double(r.ratio)});
    plot += std::to_string(r.n) + " " + format_double(r.ratio) + "\n";
  }
  files[stem + ".csv"] = csv.str();
  files[stem + "_plot.dat"] = plot;
}

Json run_explode(const ExperimentConfig& c, Assertions& a, std::map<std::string, std::string>& files) {
  CurveFamily family = family_by_name(c.family);
  ExplosionReport report = explosion_experiment(family, c.n_max);
  a.add("all_roots_found", report.failures == 0, std::to_string(report.failures) + " failed rows");
  a.add("ratio_grows", report.growing, "max ratio " + format_double(report.max_ratio));
  if (c.family == "constant") {
    double worst = 0.0;
    for (const auto& r : report.rows)
      if (r.ok) worst = std::max(worst, std::abs(r.ratio - r.n) / r.n);
    a.add("ratio_equals_n", worst <= 1e-9, "max relative error " + format_double(worst));
  }
  const ExplosionRow& first = report.rows.front();
  const ExplosionRow& last = report.rows.back();
  if (first.ok && last.ok) {
    CVec3 target(-family.limit.alpha.derivative()(0.0), 0.0, 0.0);
    a.add("root_tends_to_zero", std::abs(last.s) <= std::abs(first.s) + 1e-9);
    a.add("lifted_point_converges",
          (last.lifted_point - target).norm() <= (first.lifted_point - target).norm() + 1e-9);
  }
  table_files(report.rows, "explode", files);
  Json rows = Json::array();
  for (const auto& r : report.rows) rows.push_back(to_json(r));
  return Json{{"family", family.name},
              {"description", family.description},
              {"max_ratio", report.max_ratio},
              {"failures", report.failures},
              {"growing", report.growing},
              {"rows", std::move(rows)}};
}

CVec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CVec3 v;
  for (int k = 0; k < 3; ++k) v(k) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

Json run_closure(const ExperimentConfig& c, Assertions& a, std::map<std::string, std::string>& files) {
  Lattice lattice = choose_lattice(c);
  std::mt19937_64 rng(c.seed);
  CsvWriter csv;
  csv.row({"index", "re(v1)", "im(v1)", "re(v2)", "im(v2)", "re(v3)", "im(v3)", "closure_dim", "level"});
  std::map<int, int> histogram;
  int errors = 0;
  int below_two = 0;
  for (int i = 0; i < c.count; ++i) {
    CVec3 v = random_direction(rng);
    std::vector<std::string> fields{std::to_string(i)};
    for (int k = 0; k < 3; ++k) {
      fields.push_back(format_double(v(k).real()));
      fields.push_back(format_double(v(k).imag()));
    }
    try {
      Frame pair(6, 2);
      pair.col(0) = to_real(v);
      pair.col(1) = to_real(Complex(0.0, 1.0) * v);
      ClosureResult r = rational_closure(RealSubspace::span(pair), lattice);
      int d = r.subspace.dim();
      ++histogram[d];
      if (d < 2) ++below_two;
      fields.push_back(std::to_string(d));
      fields.push_back(std::to_string(r.level));
    } catch (const PrecisionInsufficient& e) {
      ++errors;
      fields.push_back("");
      fields.push_back("");
    }
    csv.row(fields);
  }
  files["closure.csv"] = csv.str();
  a.add("no_precision_errors", errors == 0, std::to_string(errors) + " directions");
  a.add("closure_contains_line", below_two == 0);
  Json hist = Json::object();
  for (const auto& [d, n] : histogram) hist[std::to_string(d)] = n;
  return Json{{"lattice", to_json(lattice)}, {"count", c.count}, {"heuristic", true}, {"dimension_histogram", std::move(hist)}};
}

Json run_obstruct(const ExperimentConfig& c, Assertions& a, std::map<std::string, std::string>& files) {
  ObstructionReport report;
  Json extra;
  if (c.lattice == "synthetic") {
    std::vector<CVec3> translates;
    for (int n = 1; n <= c.n_max; ++n) translates.emplace_back(0.0, 1.0 / n, 0.0);
    report = brody_obstruction_from_translates(CVec3(1.0, 0.0, 0.0), CVec3(0.0, 0.0, 1.0), translates);
  } else {
    Lattice lattice = choose_lattice(c);
    CVec3 v(1.0, 0.0, 0.0);
    CVec3 t(0.0, 0.0, 1.0);
    if (c.lattice == "sampled") {
      std::mt19937_64 rng(c.seed);
      v = random_direction(rng);
      std::normal_distribution<double> normal;
      Frame w(6, 4);
      w.col(0) = to_real(v);
      w.col(1) = to_real(Complex(0.0, 1.0) * v);
      for (int j = 2; j < 4; ++j)
        for (int r = 0; r < 6; ++r) w(r, j) = normal(rng);
      t = choose_line(RealSubspace::span(w)).direction();
    }
    Json vt = Json::array(), tt = Json::array();
    for (int k = 0; k < 3; ++k) {
      vt.push_back(complex_to_json(v(k)));
      tt.push_back(complex_to_json(t(k)));
    }
    extra = Json{{"v", std::move(vt)}, {"center_tangent", std::move(tt)}};
    try {
      report = brody_obstruction_experiment(lattice, v, t, c.n_max);
    } catch (const HypothesisViolated& e) {
      a.add("hypotheses_hold", false, "condition (" + std::to_string(e.condition()) + "): " + e.what());
      extra["hypothesis_violated"] = e.condition();
      return extra;
    }
    a.add("hypotheses_hold", true);
  }
  a.add("ratio_exceeds_target", report.growth, "max ratio " + format_double(report.max_ratio));
  table_files(report.rows, "obstruct", files);
  Json j = to_json(report);
  for (auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

void check_choice(const std::string& key, const std::string& value, const std::vector<std::string>& allowed) {
  if (std::find(allowed.begin(), allowed.end(), value) == allowed.end()) {
    std::string list;
    for (const auto& s : allowed) list += (list.empty() ? "" : ", ") + s;
    throw ConfigError(key + ": '" + value + "' is not one of " + list);
  }
}

}  // namespace

std::string library_version() { return BRODY_VERSION; }

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"scan", "deform", "cover", "explode", "closure", "obstruct"};
  return names;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    std::string key = normalize_key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_setting(ExperimentConfig& c, const std::string& raw_key, const std::string& value) {
  const std::string key = normalize_key(raw_key);
  if (key == "seed") c.seed = parse_unsigned(key, value);
  else if (key == "eps") c.eps = parse_angle(key, value);
  else if (key == "height") c.height = parse_small_int(key, value);
  else if (key == "n-max") c.n_max = parse_small_int(key, value);
  else if (key == "budget") c.budget = parse_unsigned(key, value);
  else if (key == "probes") c.probes = parse_unsigned(key, value);
  else if (key == "probes-per-ball") c.probes_per_ball = parse_unsigned(key, value);
  else if (key == "max-centers") c.max_centers = parse_unsigned(key, value);
  else if (key == "time-limit") c.time_limit = parse_double(key, value);
  else if (key == "count") c.count = parse_small_int(key, value);
  else if (key == "family") c.family = value;
  else if (key == "lattice") c.lattice = value;
  else if (key == "out") c.out_dir = value;
  else if (key == "mode") {
    check_choice(key, value, {"exact", "floating"});
    c.mode = value == "exact" ? ArithmeticMode::exact : ArithmeticMode::floating;
  } else if (key == "ts") {
    c.ts.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) c.ts.push_back(parse_double(key, trim(item)));
  } else {
    throw ConfigError("unknown setting '" + raw_key + "'");
  }
}

ExperimentConfig resolve_config(const std::string& subcommand, const std::map<std::string, std::string>& flags) {
  ExperimentConfig c;
  c.subcommand = subcommand;
  auto it = flags.find("config");
  if (it != flags.end()) {
    c.config_file = it->second;
    for (const auto& [k, v] : read_config_file(it->second)) {
      if (k == "config") throw ConfigError("config files cannot include other config files");
      apply_setting(c, k, v);
    }
  }
  for (const auto& [k, v] : flags)
    if (k != "config") apply_setting(c, k, v);
  validate(c);
  return c;
}

void validate(const ExperimentConfig& c) {
  check_choice("subcommand", c.subcommand, subcommand_names());
  const std::string& s = c.subcommand;
  if (s == "cover") {
    if (!(c.eps > 0.0 && c.eps <= kPi / 2 + 1e-15)) throw ConfigError("eps must lie in (0, pi/2]");
    if (c.budget < 10000) throw ConfigError("budget must be at least 10000");
    if (c.probes < 1) throw ConfigError("probes must be positive");
    if (c.probes_per_ball < 1) throw ConfigError("probes-per-ball must be positive");
    if (c.max_centers < 1) throw ConfigError("max-centers must be positive");
    if (c.time_limit < 0) throw ConfigError("time-limit must be nonnegative");
  }
  if (s == "scan" && (c.height < 1 || c.height > 3)) throw ConfigError("height must lie in [1, 3]");
  if ((s == "explode" || s == "obstruct") && (c.n_max < 2 || c.n_max > 1000000))
    throw ConfigError("n-max must lie in [2, 10^6]");
  if (s == "explode") check_choice("family", c.family, family_names());
  if (s == "closure" && (c.count < 1 || c.count > 100000)) throw ConfigError("count must lie in [1, 10^5]");
  if (s == "scan" || s == "deform" || s == "closure") check_choice("lattice", c.lattice, {"gaussian", "sampled"});
  if (s == "obstruct") check_choice("lattice", c.lattice, {"gaussian", "sampled", "synthetic"});
  if (s == "deform" && c.ts.empty()) throw ConfigError("ts must not be empty");
  if (c.mode == ArithmeticMode::exact) {
    if (s != "scan" && s != "deform" && s != "closure")
      throw ConfigError("exact mode is only available for scan, deform and closure");
    if (c.lattice != "gaussian") throw ConfigError("exact mode needs the gaussian lattice");
  }
  if (c.out_dir.empty()) throw ConfigError("out must not be empty");
}

Json config_to_json(const ExperimentConfig& c) {
  return Json{{"subcommand", c.subcommand},
              {"seed", c.seed},
              {"eps", c.eps},
              {"height", c.height},
              {"n_max", c.n_max},
              {"budget", c.budget},
              {"probes", c.probes},
              {"probes_per_ball", c.probes_per_ball},
              {"max_centers", c.max_centers},
              {"time_limit", c.time_limit},
              {"count", c.count},
              {"family", c.family},
              {"lattice", c.lattice},
              {"ts", c.ts},
              {"mode", c.mode == ArithmeticMode::exact ? "exact" : "floating"},
              {"out", c.out_dir},
              {"config", c.config_file}};
}

RunOutcome run(const ExperimentConfig& config) {
  validate(config);
  RunOutcome out;
  Assertions assertions;
  Json results;
  const std::string& s = config.subcommand;
  try {
    if (s == "scan") results = run_scan(config, assertions, out.files);
    else if (s == "deform") results = run_deform(config, assertions, out.files);
    else if (s == "cover") results = run_cover(config, assertions, out.files);
    else if (s == "explode") results = run_explode(config, assertions, out.files);
    else if (s == "closure") results = run_closure(config, assertions, out.files);
    else results = run_obstruct(config, assertions, out.files);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    assertions.add("completed", false, e.what());
  }
  out.exit_code = assertions.all ? 0 : 1;
  out.report = Json{{"schema_version", kReportSchemaVersion},
                    {"version", library_version()},
                    {"config", config_to_json(config)},
                    {"status", assertions.all ? "ok" : "failed"},
                    {"assertions", std::move(assertions.list)},
                    {"results", std::move(results)}};
  out.files["report.json"] = out.report.dump(2) + "\n";
  return out;
}

void write_outputs(const RunOutcome& outcome, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& [name, text] : outcome.files) {
    std::ofstream f(std::filesystem::path(out_dir) / name, std::ios::binary);
    if (!f) throw Error("cannot write " + name + " in " + out_dir);
    f << text;
  }
}

}  // namespace brody
