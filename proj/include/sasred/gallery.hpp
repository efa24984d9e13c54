#pragma once

// Run configuration, the built-in example gallery, command dispatch and the
// report/CSV writers behind the command-line tool.
//
// A config is a single JSON object; presets supply defaults, the file
// overrides them, command-line flags override the file. Reports are ordered
// JSON and depend only on (config, seed): thread count and output directory
// are not echoed.

#include <charconv>
#include <deque>
#include <filesystem>
#include <limits>
#include <random>
#include <utility>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sasred/cone.hpp"
#include "sasred/curvature_lab.hpp"
#include "sasred/errors.hpp"
#include "sasred/parallel.hpp"
#include "sasred/reduction.hpp"
#include "sasred/structures.hpp"
#include "sasred/torus.hpp"

namespace sasred {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Exit codes

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitInfeasible = 3,
  kExitHypothesis = 4,
  kExitResidual = 5,
  kExitNonConvergence = 6,
};

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
    case ErrorKind::ZeroMu:
    case ErrorKind::NotDifferentiable:
    case ErrorKind::DegenerateContact: return kExitValidation;
    case ErrorKind::EmptyLevelSet: return kExitInfeasible;
    case ErrorKind::DegenerateAction: return kExitHypothesis;
    case ErrorKind::NoConvergence:
    case ErrorKind::WrongRay:
    case ErrorKind::SingularMetric: return kExitNonConvergence;
    case ErrorKind::EmptyFrame:
    case ErrorKind::FrameInconsistent:
    case ErrorKind::AmbiguousSplit:
    case ErrorKind::StratificationLeak: return kExitResidual;
  }
  return kExitResidual;
}

inline const char* exit_status_name(int code) {
  switch (code) {
    case kExitOk: return "ok";
    case kExitValidation: return "validation";
    case kExitInfeasible: return "infeasible";
    case kExitHypothesis: return "hypothesis";
    case kExitResidual: return "residual";
    case kExitNonConvergence: return "nonconvergence";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Config

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"verify-structure", "check-hypotheses", "reduce",
                                              "curvature-scan",   "reeb-flow",        "cone-check"};
  return names;
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"ex1", "ex1gen", "ex2", "ex3", "ex4", "weighted"};
  return names;
}

struct RunConfig {
  std::string preset;  // empty: none
  int n = 0;           // complex coordinates; the sphere is S^{2n-1}
  Vec sphere_weights;
  Mat action_weights;
  std::optional<Vec> mu;
  int samples = 100;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string level = "ray";  // ray | zero | orbit
  std::map<std::string, double> tolerances;  // overrides only
  double t_max = 2.0 * std::numbers::pi;
  int steps = 512;
  Vec lambda;     // ex4 weights
  int gen_n = 4;  // ex1gen: S^{2 gen_n + 1}

  bool round() const {
    for (Eigen::Index i = 0; i < sphere_weights.size(); ++i)
      if (sphere_weights[i] != 1.0) return false;
    return true;
  }
};

// Tolerances per named residual; the weighted sphere goes through the jet
// engine end to end and gets looser structure tolerances.
inline std::map<std::string, double> default_tolerances(bool round) {
  return {
      {"sasakian", round ? 1e-7 : 1e-4},
      {"killing", round ? 1e-8 : 1e-5},
      {"almost_contact", round ? 1e-8 : 1e-5},
      {"reeb_contraction", round ? 1e-8 : 1e-5},
      {"contact_det", 1e-6},
      {"level_set", 1e-10},
      {"frame", kFrameTol},
      {"basic", 1e-8},
      {"quotient_sasakian", 1e-5},
      {"quotient_killing", 1e-6},
      {"reeb_slot", 1e-6},
      {"final_identity", 1e-5},
      {"relations", 1e-6},
      {"h_tilde", 1e-8},
      {"positivity", 1e-6},
      {"flow", 1e-6},
      {"iota_transpose", 1e-12},
      {"cone_form", 1e-10},
      {"homogeneity", 1e-12},
      {"ray", kRayTol},
  };
}

inline double tolerance(const RunConfig& c, const std::string& name) {
  auto it = c.tolerances.find(name);
  if (it != c.tolerances.end()) return it->second;
  return default_tolerances(c.round()).at(name);
}

inline Mat weights_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto& r : rows) {
    Eigen::Index j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline Vec vector_of(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// The example gallery. lambda and gen_n parametrise ex4 and ex1gen.
inline RunConfig preset_config(const std::string& name, const Vec& lambda = Vec(), int gen_n = 4) {
  RunConfig c;
  c.preset = name;
  c.gen_n = gen_n;
  if (name == "ex1") {
    c.action_weights = weights_matrix({{1, 1, 0, 0}, {0, 0, 1, 1}});
    c.mu = vector_of({1, 1});
  } else if (name == "ex1gen") {
    if (gen_n < 2) throw Error(ErrorKind::ValidationError, "gen_n: the generalized example needs n >= 2");
    Mat w = Mat::Zero(2, gen_n + 1);
    w(0, 0) = w(0, 1) = 1;
    for (int j = 2; j <= gen_n; ++j) w(1, j) = 1;
    c.action_weights = w;
    c.mu = vector_of({1, 1});
  } else if (name == "ex2") {
    c.action_weights = weights_matrix({{-1, 1, 0, 0}, {0, 0, 1, 1}});
    c.mu = vector_of({1, 0});
  } else if (name == "ex3") {
    c.action_weights = weights_matrix({{1, 0, 0, 0}, {0, 1, 1, 1}});
    c.mu = vector_of({1, 1});
  } else if (name == "ex4") {
    Vec l = lambda.size() ? lambda : vector_of({1, 1});
    if (l.size() != 2) throw Error(ErrorKind::ValidationError, "lambda: expected two weights");
    c.lambda = l;
    c.action_weights = weights_matrix({{l[0], 0, 0, 0}, {0, l[1], 0, 0}});
    c.mu = vector_of({1, 1});
  } else if (name == "weighted") {
    c.sphere_weights = vector_of({1, 2, 3});
    c.action_weights = weights_matrix({{1, 1, 1}});
    c.mu = vector_of({1});
  } else {
    throw Error(ErrorKind::ValidationError, "preset: unknown preset '" + name + "'");
  }
  c.n = static_cast<int>(c.action_weights.cols());
  if (c.sphere_weights.size() == 0) c.sphere_weights = Vec::Ones(c.n);
  return c;
}

// Command-line overrides, applied after the file.
struct ConfigOverrides {
  std::optional<std::string> preset;
  std::optional<Vec> mu;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> level;
  std::optional<Vec> lambda;
  std::optional<int> gen_n;
};

namespace detail {

struct Violations {
  std::vector<std::string> items;
  void add(std::string s) { items.push_back(std::move(s)); }
  bool empty() const { return items.empty(); }
  std::string joined() const {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "; " : "") + items[i];
    return out;
  }
};

inline std::optional<Vec> read_vector(const ojson& j, const std::string& path, Violations& v) {
  if (!j.is_array()) {
    v.add(path + ": expected an array of numbers");
    return std::nullopt;
  }
  Vec out(static_cast<Eigen::Index>(j.size()));
  bool ok = true;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      v.add(path + "[" + std::to_string(i) + "]: expected a number");
      ok = false;
      continue;
    }
    out[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return ok ? std::optional<Vec>(out) : std::nullopt;
}

inline std::optional<Mat> read_matrix(const ojson& j, const std::string& path, Violations& v) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    v.add(path + ": expected a non-empty array of rows");
    return std::nullopt;
  }
  const std::size_t cols = j[0].size();
  Mat out(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  bool ok = true;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) {
      v.add(rp + ": expected a row of " + std::to_string(cols) + " numbers");
      ok = false;
      continue;
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) {
        v.add(rp + "[" + std::to_string(c) + "]: expected a number");
        ok = false;
        continue;
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    }
  }
  return ok ? std::optional<Mat>(out) : std::nullopt;
}

inline std::optional<long long> read_int(const ojson& j, const std::string& path, Violations& v) {
  if (!j.is_number_integer()) {
    v.add(path + ": expected an integer");
    return std::nullopt;
  }
  return j.get<long long>();
}

inline const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> k{"preset", "n",     "sphere_weights", "action_weights", "mu",     "samples", "seed",
                                          "threads", "level", "tolerances",     "flow",           "lambda", "gen_n"};
  return k;
}

}  // namespace detail

inline bool command_needs_mu(const std::string& cmd, const std::string& level) {
  if (cmd == "check-hypotheses" || cmd == "reduce" || cmd == "cone-check") return true;
  if (cmd == "curvature-scan" || cmd == "reeb-flow") return level == "ray";
  return false;
}

// Every violation is collected; the ValidationError lists all of them.
inline void validate_config(const RunConfig& c, const std::string& command, detail::Violations& v) {
  if (!command.empty() && std::find(command_names().begin(), command_names().end(), command) == command_names().end())
    v.add("command: unknown command '" + command + "'");
  if (c.n < 2) v.add("n: need at least 2 complex coordinates");
  if (c.sphere_weights.size() != c.n) {
    v.add("sphere_weights: expected " + std::to_string(c.n) + " entries");
  } else {
    for (Eigen::Index i = 0; i < c.sphere_weights.size(); ++i) {
      if (!(c.sphere_weights[i] > 0.0)) v.add("sphere_weights[" + std::to_string(i) + "]: must be positive");
      if (i > 0 && c.sphere_weights[i] < c.sphere_weights[i - 1])
        v.add("sphere_weights[" + std::to_string(i) + "]: weights must be nondecreasing");
    }
  }
  const bool needs_action = command != "verify-structure";
  if (c.action_weights.size() == 0) {
    if (needs_action) v.add("action_weights: required for command " + command);
  } else {
    if (c.action_weights.rows() < 1) v.add("action_weights: need d >= 1 rows");
    if (c.action_weights.cols() != c.n) v.add("action_weights: expected " + std::to_string(c.n) + " columns");
  }
  if (c.samples < 1) v.add("samples: must be at least 1");
  if (c.threads < 0) v.add("threads: must be >= 0 (0 = all cores)");
  if (c.level != "ray" && c.level != "zero" && c.level != "orbit") v.add("level: expected ray, zero or orbit");
  if (c.mu) {
    if (c.action_weights.size() && c.mu->size() != c.action_weights.rows())
      v.add("mu: expected " + std::to_string(c.action_weights.rows()) + " entries");
    if (c.mu->size() && c.mu->norm() == 0.0 && command_needs_mu(command, c.level)) v.add("mu: must not be zero for command " + command);
  } else if (command_needs_mu(command, c.level)) {
    v.add("mu: required for command " + command);
  }
  const auto defaults = default_tolerances(true);
  for (const auto& [k, val] : c.tolerances) {
    if (!defaults.count(k)) v.add("tolerances." + k + ": unknown residual name");
    if (!(val > 0.0)) v.add("tolerances." + k + ": must be positive");
  }
  if (!(c.t_max >= 0.0)) v.add("flow.t_max: must be non-negative");
  if (c.steps < 1) v.add("flow.steps: must be positive");
  if (c.steps < 64.0 * c.t_max) v.add("flow.steps: need at least 64 steps per unit time");
  const bool reduction = command == "check-hypotheses" || command == "reduce" || command == "curvature-scan" ||
                         command == "reeb-flow" || command == "cone-check";
  if (reduction && c.sphere_weights.size() == c.n && !c.round())
    v.add("sphere_weights: reduction commands run on the round sphere (all weights 1)");
}

// Layers: preset (flag, else file) -> file fields -> flags.
inline RunConfig resolve_config(const std::optional<ojson>& file, const ConfigOverrides& o, const std::string& command) {
  detail::Violations v;
  if (file && !file->is_object()) throw Error(ErrorKind::ParseError, "config: top level must be a JSON object");
  auto field = [&](const char* key) -> const ojson* {
    if (!file || !file->contains(key)) return nullptr;
    return &(*file)[key];
  };
  if (file)
    for (auto it = file->begin(); it != file->end(); ++it)
      if (std::find(detail::known_keys().begin(), detail::known_keys().end(), it.key()) == detail::known_keys().end())
        v.add(it.key() + ": unknown field");

  std::optional<std::string> preset = o.preset;
  if (!preset && field("preset")) {
    if (field("preset")->is_string())
      preset = field("preset")->get<std::string>();
    else
      v.add("preset: expected a string");
  }
  Vec lambda;
  if (o.lambda) {
    lambda = *o.lambda;
  } else if (auto* j = field("lambda")) {
    if (auto l = detail::read_vector(*j, "lambda", v)) lambda = *l;
  }
  int gen_n = 4;
  if (o.gen_n) {
    gen_n = *o.gen_n;
  } else if (auto* j = field("gen_n")) {
    if (auto x = detail::read_int(*j, "gen_n", v)) gen_n = static_cast<int>(*x);
  }

  RunConfig c;
  if (preset) {
    try {
      c = preset_config(*preset, lambda, gen_n);
    } catch (const Error& e) {
      v.add(std::string(e.what()).substr(std::string("ValidationError: ").size()));
    }
  }
  if (auto* j = field("n"))
    if (auto x = detail::read_int(*j, "n", v)) c.n = static_cast<int>(*x);
  if (auto* j = field("action_weights"))
    if (auto m = detail::read_matrix(*j, "action_weights", v)) {
      c.action_weights = *m;
      if (!field("n")) c.n = static_cast<int>(m->cols());
    }
  if (auto* j = field("sphere_weights"))
    if (auto w = detail::read_vector(*j, "sphere_weights", v)) {
      c.sphere_weights = *w;
      if (!field("n") && c.action_weights.size() == 0) c.n = static_cast<int>(w->size());
    }
  if (c.sphere_weights.size() == 0 && c.n > 0) c.sphere_weights = Vec::Ones(c.n);
  if (auto* j = field("mu"))
    if (auto m = detail::read_vector(*j, "mu", v)) c.mu = *m;
  if (auto* j = field("samples"))
    if (auto x = detail::read_int(*j, "samples", v)) c.samples = static_cast<int>(*x);
  if (auto* j = field("seed")) {
    if (j->is_number_unsigned() || (j->is_number_integer() && j->get<long long>() >= 0))
      c.seed = j->get<std::uint64_t>();
    else
      v.add("seed: expected a non-negative integer");
  }
  if (auto* j = field("threads"))
    if (auto x = detail::read_int(*j, "threads", v)) c.threads = static_cast<int>(*x);
  if (auto* j = field("level")) {
    if (j->is_string())
      c.level = j->get<std::string>();
    else
      v.add("level: expected a string");
  }
  if (auto* j = field("tolerances")) {
    if (!j->is_object()) {
      v.add("tolerances: expected an object");
    } else {
      for (auto it = j->begin(); it != j->end(); ++it) {
        if (it.value().is_number())
          c.tolerances[it.key()] = it.value().get<double>();
        else
          v.add("tolerances." + it.key() + ": expected a number");
      }
    }
  }
  if (auto* j = field("flow")) {
    if (!j->is_object()) {
      v.add("flow: expected an object");
    } else {
      for (auto it = j->begin(); it != j->end(); ++it) {
        if (it.key() == "t_max") {
          if (it.value().is_number())
            c.t_max = it.value().get<double>();
          else
            v.add("flow.t_max: expected a number");
        } else if (it.key() == "steps") {
          if (auto x = detail::read_int(it.value(), "flow.steps", v)) c.steps = static_cast<int>(*x);
        } else {
          v.add("flow." + it.key() + ": unknown field");
        }
      }
    }
  }
  if (o.mu) c.mu = *o.mu;
  if (o.samples) c.samples = *o.samples;
  if (o.seed) c.seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
  if (o.level) c.level = *o.level;
  if (!preset && !file) v.add("config: give --config or --preset");

  validate_config(c, command, v);
  if (!v.empty()) throw Error(ErrorKind::ValidationError, v.joined());
  return c;
}

inline ojson parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "config: cannot open " + path);
  try {
    return ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "config: " + std::string(e.what()));
  }
}

inline RunConfig load_config(const std::string& path, const std::string& command = "") {
  return resolve_config(parse_config_file(path), ConfigOverrides{}, command);
}

// ---------------------------------------------------------------------------
// Reports

inline ojson to_json(const Vec& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline ojson to_json(const Mat& m) {
  ojson a = ojson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json(Vec(m.row(r).transpose())));
  return a;
}

inline ojson config_echo(const RunConfig& c) {
  ojson j;
  j["preset"] = c.preset.empty() ? ojson() : ojson(c.preset);
  j["n"] = c.n;
  j["sphere_weights"] = to_json(c.sphere_weights);
  j["action_weights"] = c.action_weights.size() ? to_json(c.action_weights) : ojson();
  j["mu"] = c.mu ? to_json(*c.mu) : ojson();
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["level"] = c.level;
  if (c.preset == "ex4") j["lambda"] = to_json(c.lambda);
  if (c.preset == "ex1gen") j["gen_n"] = c.gen_n;
  j["flow"] = {{"t_max", c.t_max}, {"steps", c.steps}};
  ojson tol;
  for (const auto& [k, v] : default_tolerances(c.round())) tol[k] = tolerance(c, k);
  j["tolerances"] = tol;
  return j;
}

// Max/min/mean of one named residual over the samples, in index order.
struct ResidualStat {
  std::string name;
  std::string invariant;
  double tol = 0.0;
  bool lower = false;  // lower bound: every value must be >= tol
  std::size_t count = 0;
  double max = -INFINITY, min = INFINITY, sum = 0.0;
  bool nonfinite = false;

  void add(double x) {
    if (!std::isfinite(x)) {
      nonfinite = true;
      return;
    }
    ++count;
    max = std::max(max, x);
    min = std::min(min, x);
    sum += x;
  }
  bool pass() const {
    if (nonfinite) return false;
    if (count == 0) return true;
    return lower ? min >= tol : max <= tol;
  }
  ojson json() const {
    ojson j;
    j["name"] = name;
    j["invariant"] = invariant;
    j["tolerance"] = tol;
    j["bound"] = lower ? "lower" : "upper";
    j["count"] = count;
    j["max"] = count ? ojson(max) : ojson();
    j["min"] = count ? ojson(min) : ojson();
    j["mean"] = count ? ojson(sum / static_cast<double>(count)) : ojson();
    j["pass"] = pass();
    return j;
  }
};

// One CSV row: index, coordinates, s, then the command's named columns.
struct SampleRow {
  Vec point;
  double s = NAN;
  std::vector<double> values;
  std::vector<std::string> tags;
  std::optional<ErrorKind> error;
  std::string message;
};

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

struct RunOutput {
  ojson report;
  std::string csv;
  int exit_code = kExitOk;
};

namespace detail {

class ReportBuilder {
 public:
  ReportBuilder(const std::string& command, const RunConfig& c) : cfg_(c) {
    report_["command"] = command;
    report_["config"] = config_echo(c);
  }

  ResidualStat& stat(const std::string& name, const std::string& invariant, bool lower = false) {
    for (auto& s : stats_)
      if (s.name == name) return s;
    ResidualStat s;
    s.name = name;
    s.invariant = invariant;
    s.tol = tolerance(cfg_, name);
    s.lower = lower;
    stats_.push_back(s);
    return stats_.back();
  }

  void verdict(std::string v) { verdicts_.push_back(std::move(v)); }
  void hypothesis_failed() { hypothesis_failed_ = true; }
  ojson& operator[](const char* k) { return report_[k]; }

  void columns(std::vector<std::string> names, std::vector<std::string> tag_names = {}) {
    columns_ = std::move(names);
    tag_columns_ = std::move(tag_names);
  }

  void rows(const std::vector<SampleRow>& rows, Eigen::Index ambient) {
    std::ostringstream out;
    out << "index";
    for (Eigen::Index j = 0; j < ambient / 2; ++j) out << ",x" << j << ",y" << j;
    out << ",s";
    for (const auto& c : columns_) out << "," << c;
    for (const auto& c : tag_columns_) out << "," << c;
    out << "\n";
    ojson errs = ojson::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out << i;
      for (Eigen::Index j = 0; j < ambient; ++j) out << "," << (j < r.point.size() ? format_double(r.point[j]) : "nan");
      out << "," << format_double(r.s);
      for (std::size_t c = 0; c < columns_.size(); ++c) out << "," << format_double(c < r.values.size() ? r.values[c] : NAN);
      for (std::size_t c = 0; c < tag_columns_.size(); ++c) out << "," << (c < r.tags.size() ? r.tags[c] : "");
      out << "\n";
      if (r.error) {
        errs.push_back({{"index", i}, {"kind", to_string(*r.error)}, {"message", r.message}});
        if (!first_error_) first_error_ = *r.error;
      }
    }
    csv_ = out.str();
    sample_errors_ = errs;
  }

  RunOutput finish() {
    ojson res = ojson::array();
    bool breach = false;
    for (const auto& s : stats_) {
      res.push_back(s.json());
      breach = breach || !s.pass();
    }
    report_["residuals"] = res;
    report_["sample_errors"] = sample_errors_.is_null() ? ojson::array() : sample_errors_;
    report_["verdicts"] = verdicts_;
    report_["samples_csv"] = "samples.csv";
    int code = kExitOk;
    if (hypothesis_failed_)
      code = kExitHypothesis;
    else if (first_error_)
      code = exit_code_for(*first_error_);
    else if (breach)
      code = kExitResidual;
    report_["exit"] = {{"code", code}, {"status", exit_status_name(code)}};
    return {report_, csv_, code};
  }

 private:
  const RunConfig& cfg_;
  ojson report_;
  std::deque<ResidualStat> stats_;  // stable references
  std::vector<std::string> verdicts_;
  std::vector<std::string> columns_, tag_columns_;
  std::string csv_;
  ojson sample_errors_;
  std::optional<ErrorKind> first_error_;
  bool hypothesis_failed_ = false;
};

inline std::mt19937_64 direction_rng(std::uint64_t seed, std::size_t i) { return sample_rng(splitmix64(seed ^ 0xd1ec7u), i); }

inline Vec random_sphere_point(std::mt19937_64& rng, Eigen::Index m) {
  std::normal_distribution<double> n01;
  Vec p(m);
  do {
    for (Eigen::Index i = 0; i < m; ++i) p[i] = n01(rng);
  } while (p.norm() < 1e-12);
  return p.normalized();
}

inline Vec random_unit_tangent(std::mt19937_64& rng, const Vec& p) {
  Vec v = tangential_project(p, random_sphere_point(rng, p.size()));
  return v.normalized();
}

inline SasakianStructure structure_of(const RunConfig& c) {
  if (c.round()) return SasakianStructure::round(c.n);
  return SasakianStructure::weighted(c.sphere_weights);
}

template <class F>
std::vector<SampleRow> per_sample(std::size_t count, int threads, F f) {
  return parallel_map(count, threads, [&](std::size_t i) {
    SampleRow row;
    try {
      row = f(i);
    } catch (const Error& e) {
      row.error = e.kind();
      row.message = e.what();
    }
    return row;
  });
}

// Hypotheses 1-3 at the sampled points and the dimension table.
struct HypothesisCensus {
  std::size_t transversal = 0, degenerate = 0, positive = 0, total = 0;
};

inline void hypotheses_block(ReportBuilder& rb, const RunConfig& c, const TorusAction& a, const MomentumCovector& mu,
                             const ReductionSetup& setup, const std::vector<LevelSetSample>& samples, std::vector<SampleRow>& rows) {
  const SliceReport slice = slice_condition(mu);
  const KernelAlgebra ka = kernel_algebra(mu);
  rows = per_sample(samples.size(), c.threads, [&](std::size_t i) {
    SampleRow r;
    r.point = samples[i].point;
    r.s = samples[i].s;
    TransversalityReport tr = transversality_check(a, mu, r.point);
    FreenessReport fr = local_freeness(a, ka, r.point);
    RayMembership rm = ray_membership(a.momentum(r.point), mu);
    const double smin = tr.singular_values.size() ? tr.singular_values[tr.singular_values.size() - 1] : 0.0;
    r.values = {tr.holds ? 1.0 : 0.0, smin, static_cast<double>(fr.rank), fr.degenerate ? 1.0 : 0.0, rm.residual,
                level_residual(setup, r.point)};
    return r;
  });
  HypothesisCensus h;
  auto& lvl = rb.stat("level_set", "sample lies on J^{-1}(R_+ mu) and the unit sphere");
  for (const auto& r : rows) {
    if (r.error) continue;
    ++h.total;
    h.transversal += r.values[0] > 0.5;
    h.degenerate += r.values[3] > 0.5;
    h.positive += r.s > 0.0;
    lvl.add(r.values[5]);
  }
  ojson hyp;
  hyp["slice"] = {{"holds", slice.holds}, {"rank", slice.rank}, {"complement_dim", slice.m}, {"note", slice.note}};
  hyp["transversality"] = {{"holds", h.transversal}, {"total", h.total}, {"all_hold", h.transversal == h.total}};
  hyp["freeness"] = {{"kernel_dim", ka.k()},
                     {"degenerate", h.degenerate},
                     {"total", h.total},
                     {"fraction_degenerate", h.total ? static_cast<double>(h.degenerate) / static_cast<double>(h.total) : 0.0}};
  hyp["ray"] = {{"positive", h.positive}, {"total", h.total}};
  rb["hypotheses"] = hyp;

  const Eigen::Index dim_m = 2 * a.n() - 1;
  const Eigen::Index q = quotient_dimension(dim_m, a.d(), ka.k());
  const Eigen::Index printed = printed_dimension_formula(dim_m, a.d(), ka.k());
  rb["dimensions"] = {{"sphere", dim_m},
                      {"level_set", setup.level_set_dim()},
                      {"orbit", setup.orbit_dim()},
                      {"quotient", q},
                      {"quotient_measured", setup.measured_quotient_dim()},
                      {"printed_formula", printed},
                      {"printed_formula_flagged", printed != q}};
  if (printed != q)
    rb.verdict("dimension: the printed count 2n-d-m-k+1 gives " + std::to_string(printed) + ", the level set minus the orbit gives " +
               std::to_string(q));
  if (setup.measured_quotient_dim() != q)
    rb.verdict("dimension: the level set is not of generic dimension here; measured quotient dimension " +
               std::to_string(setup.measured_quotient_dim()));
  if (!slice.holds) {
    rb.hypothesis_failed();
    rb.verdict("slice condition fails");
  }
  if (h.transversal != h.total) {
    rb.hypothesis_failed();
    rb.verdict("transversality to R mu fails at " + std::to_string(h.total - h.transversal) + " of " +
               std::to_string(h.total) + " samples");
  }
  if (h.degenerate) {
    rb.hypothesis_failed();
    rb.verdict("local freeness of K_mu fails at " + std::to_string(h.degenerate) + " of " + std::to_string(h.total) +
               " samples" + (h.degenerate == h.total ? ": K_mu acts trivially or with isotropy on the whole level set" : ""));
  }
  if (setup.trivial_vertical > 0)
    rb.verdict("reduction: " + std::to_string(setup.trivial_vertical) +
               " kernel generator(s) act trivially on the level set and are dropped");
}

// Real weights define an R^d-action that need not close up into a torus.
inline void action_block(ReportBuilder& rb, const TorusAction& a) {
  rb["action"] = {{"d", a.d()}, {"n", a.n()}, {"integral", a.integral()}};
  if (!a.integral()) rb.verdict("action: weights are not all integers; the orbits of R^d need not close into a torus");
}

inline std::vector<std::string> hypothesis_columns() {
  return {"transversal", "transversality_smin", "freeness_rank", "freeness_degenerate", "ray_residual", "level_residual"};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline RunOutput run_verify_structure(const RunConfig& c) {
  detail::ReportBuilder rb("verify-structure", c);
  const SasakianStructure st = detail::structure_of(c);
  rb["structure"] = {{"name", st.name()}, {"round", st.is_round()}, {"ambient_dim", st.ambient_dim()}};
  auto rows = detail::per_sample(static_cast<std::size_t>(c.samples), c.threads, [&](std::size_t i) {
    auto rng = sample_rng(c.seed, i);
    SampleRow r;
    r.point = detail::random_sphere_point(rng, st.ambient_dim());
    PointTensors t(st, r.point);
    Vec x = detail::random_unit_tangent(rng, r.point), y = detail::random_unit_tangent(rng, r.point);
    r.values = {sasakian_residual(t, x, y), killing_residual(t, x, y), almost_contact_residuals(t, x, y).worst(),
                reeb_contraction_residual(st, r.point, x), contact_nondegeneracy(st, r.point)};
    return r;
  });
  auto& sas = rb.stat("sasakian", "|R(X,xi)Y - eta(Y)X + g(X,Y)xi|");
  auto& kil = rb.stat("killing", "|g(nabla_X xi, Y) + g(nabla_Y xi, X)|");
  auto& alc = rb.stat("almost_contact", "phi xi = 0, phi^2 = -I + eta xi, g(phi Y, phi Z) = g - eta eta, eta(xi) = 1");
  auto& rc = rb.stat("reeb_contraction", "|d eta(xi, X)|");
  auto& det = rb.stat("contact_det", "|det d eta| on an orthonormal frame of Ker eta", true);
  for (const auto& r : rows) {
    if (r.error) continue;
    sas.add(r.values[0]);
    kil.add(r.values[1]);
    alc.add(r.values[2]);
    rc.add(r.values[3]);
    det.add(r.values[4]);
  }
  rb.columns({"sasakian", "killing", "almost_contact", "reeb_contraction", "contact_det"});
  rb.rows(rows, st.ambient_dim());
  return rb.finish();
}

inline RunOutput run_check_hypotheses(const RunConfig& c) {
  detail::ReportBuilder rb("check-hypotheses", c);
  TorusAction a(c.action_weights);
  detail::action_block(rb, a);
  MomentumCovector mu(*c.mu);
  auto setup = willett_setup(a, mu);
  auto samples = sample_level_set(setup, static_cast<std::size_t>(c.samples), c.seed);
  std::vector<SampleRow> rows;
  detail::hypotheses_block(rb, c, a, mu, setup, samples, rows);
  rb.columns(detail::hypothesis_columns());
  rb.rows(rows, a.n() * 2);
  return rb.finish();
}

inline RunOutput run_reduce(const RunConfig& c) {
  detail::ReportBuilder rb("reduce", c);
  TorusAction a(c.action_weights);
  detail::action_block(rb, a);
  MomentumCovector mu(*c.mu);
  auto setup = willett_setup(a, mu);
  auto samples = sample_level_set(setup, static_cast<std::size_t>(c.samples), c.seed);
  std::vector<SampleRow> hyp_rows;
  detail::hypotheses_block(rb, c, a, mu, setup, samples, hyp_rows);
  const auto st = SasakianStructure::round(c.n);
  const bool reeb_h = !setup.reeb_vertical;
  auto rows = detail::per_sample(samples.size(), c.threads, [&](std::size_t i) {
    SampleRow r;
    r.point = samples[i].point;
    r.s = samples[i].s;
    LevelSetPoint lp(setup, st, samples[i]);
    ReductionFrame f = build_frame(lp);
    SubmersionGeometry sg(lp, f);
    ReducedPointData red = reduced_tensors(lp, f);
    auto rng = detail::direction_rng(c.seed, i);
    const Mat h = f.horizontal_matrix();
    double qs = NAN, qk = NAN, slot = NAN;
    if (reeb_h && !f.contactD.empty()) {
      Vec x = random_unit_in(f.contactD.matrix(), rng), y = random_unit_in(h, rng), z = random_unit_in(h, rng);
      qs = quotient_sasakian_residual(sg, x, y);
      qk = quotient_killing_residual(sg, random_unit_in(h, rng), random_unit_in(h, rng));
      slot = std::abs(sg.quotient_R(x, sg.xi(), y, z) - sg.level_R_direct(x, sg.xi(), y, z));
    }
    r.values = {level_residual(setup, r.point), frame_defects(lp, f).worst(), std::abs(red.d_eta_det), red.basic_defect, qs, qk, slot};
    return r;
  });

  auto& fr = rb.stat("frame", "frame orthonormal, spans T N, eta-compatible, normals orthogonal to T N");
  auto& det = rb.stat("contact_det", "|det d eta| on the horizontal contact frame", true);
  auto& bas = rb.stat("basic", "|d eta(X_vertical, Z)| over tangent Z");
  auto& qs = rb.stat("quotient_sasakian", "|R^P(X,zeta)Y - eta(Y)X + g(X,Y)zeta| through O'Neill");
  auto& qk = rb.stat("quotient_killing", "Killing equation of the projected Reeb field");
  auto& slot = rb.stat("reeb_slot", "|R^P(X,zeta,Y,Z) - R^N(X,xi,Y,Z)|, O'Neill vs intrinsic jet engine");
  for (const auto& r : rows) {
    if (r.error) continue;

    fr.add(r.values[1]);
    if (reeb_h) det.add(r.values[2]);
    bas.add(r.values[3]);
    if (std::isfinite(r.values[4])) {
      qs.add(r.values[4]);
      qk.add(r.values[5]);
      slot.add(r.values[6]);
    }
  }
  if (!reeb_h) rb.verdict("the Reeb field is vertical: the quotient carries no induced contact structure");
  rb.columns({"level_residual", "frame_defect", "contact_det", "basic_defect", "quotient_sasakian", "quotient_killing", "reeb_slot"});
  rb.rows(rows, a.n() * 2);
  return rb.finish();
}


namespace detail {

inline ReductionSetup level_setup(const RunConfig& c, const TorusAction& a) {
  if (c.level == "zero") return zero_level_setup(a);
  if (c.level == "orbit") return orbit_space_setup(a);
  return willett_setup(a, MomentumCovector(*c.mu));
}

// W = diag(l0, l1) on the first two coordinates, zero elsewhere.
inline std::optional<std::pair<double, double>> two_weight_shape(const RunConfig& c) {
  const Mat& w = c.action_weights;
  if (w.rows() != 2 || w.cols() < 3) return std::nullopt;
  Mat rest = w;
  rest(0, 0) = rest(1, 1) = 0.0;
  if (rest.cwiseAbs().maxCoeff() != 0.0 || w(0, 0) <= 0.0 || w(1, 1) <= 0.0) return std::nullopt;
  return std::make_pair(w(0, 0), w(1, 1));
}

}  // namespace detail

inline RunOutput run_curvature_scan(const RunConfig& c) {
  detail::ReportBuilder rb("curvature-scan", c);
  TorusAction a(c.action_weights);
  detail::action_block(rb, a);
  auto setup = detail::level_setup(c, a);
  const auto st = SasakianStructure::round(c.n);
  auto samples = sample_level_set(setup, static_cast<std::size_t>(c.samples), c.seed);
  rb["level"] = to_string(setup.level);
  rb["dimensions"] = {{"level_set", setup.level_set_dim()}, {"orbit", setup.orbit_dim()}, {"quotient", setup.measured_quotient_dim()}};
  auto rows = detail::per_sample(samples.size(), c.threads, [&](std::size_t i) {
    SampleRow r;
    r.point = samples[i].point;
    r.s = samples[i].s;
    PhiSectionalSample ps = phi_sectional_sample(setup, st, samples[i], c.seed, i);
    const auto& l = ps.ledger;
    r.values = {l.quotient, l.ambient, l.level, l.h_bar_sq, l.h_tilde_sq, l.predicted, l.residual, l.worst_relation(),
                static_cast<double>(ps.nu_dim)};
    return r;
  });
  auto& fin = rb.stat("final_identity", "|K^P(X) - K^M(X) - 4|bar h(X,X)|^2 + 2|tilde h(X,X)|^2|");
  auto& rel = rb.stat("relations", "O'Neill and Gauss phi-sectional relations, A/h transfer relations and their norm identities");
  auto& til = rb.stat("h_tilde", "|tilde h(X,X)|^2 where phi of the tangent space covers the normal space (nu = 0)");
  ResidualStat* pos = nullptr;
  if (setup.level == LevelKind::Zero) pos = &rb.stat("positivity", "1 - K^P(X, phi X) on the zero-level quotient");
  double kmin = INFINITY, kmax = -INFINITY;
  for (const auto& r : rows) {
    if (r.error) continue;
    fin.add(r.values[6]);
    rel.add(r.values[7]);
    if (r.values[8] == 0.0) til.add(r.values[4]);
    if (pos) pos->add(1.0 - r.values[0]);
    kmin = std::min(kmin, r.values[0]);
    kmax = std::max(kmax, r.values[0]);
  }
  if (std::isfinite(kmin)) {
    rb["phi_sectional"] = {{"min", kmin}, {"max", kmax}};
    if (pos) rb.verdict(kmin >= 1.0 - tolerance(c, "positivity") ? "positivity: phi-sectional curvature >= 1 at every sampled direction"
                                                                 : "positivity: a sampled direction has phi-sectional curvature below 1");
  }
  rb.columns({"K_quotient", "K_ambient", "K_level", "h_bar_sq", "h_tilde_sq", "predicted", "final_identity", "relations", "nu_dim"});
  rb.rows(rows, a.n() * 2);
  return rb.finish();
}

inline RunOutput run_reeb_flow(const RunConfig& c) {
  detail::ReportBuilder rb("reeb-flow", c);
  TorusAction a(c.action_weights);
  detail::action_block(rb, a);
  auto setup = detail::level_setup(c, a);
  const auto st = SasakianStructure::round(c.n);
  auto samples = sample_level_set(setup, static_cast<std::size_t>(c.samples), c.seed);
  std::optional<std::pair<double, double>> two = detail::two_weight_shape(c);
  if (two && setup.level == LevelKind::Ray) {
    const Vec& m = setup.mu.mu_unit;
    if (std::abs(m[0] - m[1]) > 1e-12) two.reset();
  } else {
    two.reset();
  }
  rb["oracle"] = two ? ojson{{"closed_form", "two-weight"}, {"lambda", {two->first, two->second}}} : ojson{{"closed_form", nullptr}};
  const bool ray = setup.level == LevelKind::Ray;
  auto rows = detail::per_sample(samples.size(), c.threads, [&](std::size_t i) {
    SampleRow r;
    r.point = samples[i].point;
    r.s = samples[i].s;
    Trajectory tr = ray ? reeb_flow_level(st, a, setup.mu, r.point, c.t_max, c.steps) : reeb_flow_sphere(st, r.point, c.t_max, c.steps);
    r.values = {phase_rotation_error(tr, st.orientation()), two ? compare_two_weight_flow(tr, two->first, two->second).worst() : NAN,
                tr.max_correction, level_residual(setup, tr.z.back())};
    return r;
  });
  auto& ph = rb.stat("flow", "sup_t |z(t) - e^{it} z(0)| and, where available, the closed-form reduced flow");
  auto& lvl = rb.stat("level_set", "end point of the trajectory stays on the level set");
  for (const auto& r : rows) {
    if (r.error) continue;
    ph.add(two ? std::max(r.values[0], r.values[1]) : r.values[0]);
    lvl.add(r.values[3]);
  }
  if (!two) rb.verdict("reeb-flow: no closed-form reduced flow for this action; compared against the phase rotation only");
  rb.columns({"phase_error", "closed_form_error", "max_correction", "end_level_residual"});
  rb.rows(rows, a.n() * 2);
  return rb.finish();
}

inline RunOutput run_cone_check(const RunConfig& c) {
  detail::ReportBuilder rb("cone-check", c);
  TorusAction a(c.action_weights);
  detail::action_block(rb, a);
  MomentumCovector mu(*c.mu);
  const std::size_t count = static_cast<std::size_t>(c.samples);
  const auto st = SasakianStructure::round(c.n);
  rb["convention"] = {{"potential", "lambda = r^2 eta"}, {"form", "omega = -d lambda"}, {"momentum", "J_s = r^2 J"}};

  auto cone_rows = detail::per_sample(count, c.threads, [&](std::size_t i) {
    auto rng = sample_rng(splitmix64(c.seed ^ 0xc0e5u), i);
    std::uniform_real_distribution<double> rad(0.1, 3.0);
    std::normal_distribution<double> n01;
    SampleRow r;
    r.point = detail::random_sphere_point(rng, 2 * a.n());
    ConePoint cp(r.point, rad(rng));
    r.s = cp.r;
    Vec alg(a.d()), v(2 * a.n());
    for (Eigen::Index k = 0; k < alg.size(); ++k) alg[k] = n01(rng);
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = n01(rng);
    const double hom = (symplectic_momentum(a, cp) - a.momentum(cp.ambient())).cwiseAbs().maxCoeff() / (cp.r * cp.r);
    r.values = {iota_transpose_check(a, mu, cp).residual, cone_form_check(a, cp, alg, v).residual(), hom, NAN};
    r.tags = {"cone"};
    return r;
  });

  auto zero = sample_phi_zero(a, mu, count, c.seed);
  const Mat kb = kernel_algebra(mu).basis;
  auto zero_rows = detail::per_sample(zero.size(), c.threads, [&](std::size_t i) {
    SampleRow r;
    r.point = zero[i].point;
    const RayMembership m = ray_membership(a.momentum(r.point), mu, tolerance(c, "ray"));
    r.s = m.s;
    const double phi = kb.rows() ? (kb * a.momentum(r.point)).cwiseAbs().maxCoeff() : 0.0;
    r.values = {phi, NAN, NAN, m.residual};
    r.tags = {to_string(zero[i].piece)};
    const StratumLabel l = classify_phi_zero(a, mu, r.point, tolerance(c, "ray"));
    if (l != zero[i].piece)
      throw Error(ErrorKind::StratificationLeak, "sample drawn from " + to_string(zero[i].piece) + " classified as " + to_string(l));
    return r;
  });

  auto& io = rb.stat("iota_transpose", "|iota^t J_s - J_s of the restricted action| at cone points, and |Phi| on Phi^{-1}(0) samples");
  auto& cf = rb.stat("cone_form", "|omega(X_M, V) - d<J_s, X>(V)| with omega = -d(r^2 eta)");
  auto& hm = rb.stat("homogeneity", "|J_s(z, r) - J(r z)| / r^2");
  auto& ray = rb.stat("ray", "distance of J from the line R mu on Phi^{-1}(0)");
  for (const auto& r : cone_rows) {
    if (r.error) continue;
    io.add(r.values[0]);
    cf.add(r.values[1]);
    hm.add(r.values[2]);
  }
  std::size_t pos = 0, zer = 0, neg = 0;
  for (const auto& r : zero_rows) {
    if (r.error) continue;
    io.add(r.values[0]);
    ray.add(r.values[3]);
    (r.tags[0] == "positive_stratum" ? pos : r.tags[0] == "zero_stratum" ? zer : neg)++;
  }
  rb["strata"] = {{"positive_stratum", pos}, {"zero_stratum", zer}, {"negative_stratum", neg}, {"total", pos + zer + neg}};
  std::string present;
  for (auto [name, k] : {std::pair{"positive", pos}, {"zero", zer}, {"negative", neg}})
    if (k) present += std::string(present.empty() ? "" : ", ") + name;
  rb.verdict("stratification: Phi^{-1}(0) samples fall into the " + present + " strata");

  // The zero stratum J^{-1}(0)/K_mu: d eta degenerates on the horizontal contact directions.
  ojson deg;
  try {
    auto zs = zero_stratum_setup(a, mu);
    auto zsamp = sample_level_set(zs, std::min<std::size_t>(count, 20), splitmix64(c.seed ^ 0x2e50u));
    Eigen::Index kmin = std::numeric_limits<Eigen::Index>::max();
    for (const auto& s : zsamp) {
      LevelSetPoint lp(zs, st, s);
      kmin = std::min(kmin, zero_stratum_degeneracy(lp, build_frame(lp)).kernel_dim);
    }
    deg = {{"samples", zsamp.size()}, {"min_kernel_dim", kmin}, {"degenerate", kmin >= 1}};
    rb.verdict(kmin >= 1 ? "zero stratum: d eta is degenerate on the horizontal directions; it carries no induced contact structure"
                         : "zero stratum: d eta is nondegenerate at the sampled points");
  } catch (const Error& e) {
    deg = {{"samples", 0}, {"skipped", e.what()}};
    rb.verdict(std::string("zero stratum: not examined (") + e.what() + ")");
  }
  rb["zero_stratum"] = deg;

  std::vector<SampleRow> all = std::move(cone_rows);
  all.insert(all.end(), zero_rows.begin(), zero_rows.end());
  rb.columns({"phi_or_iota_residual", "cone_form", "homogeneity", "ray_residual"}, {"kind"});
  rb.rows(all, a.n() * 2);
  return rb.finish();
}

// Report for a run that stopped before producing samples.
inline RunOutput failure_output(const std::string& command, const RunConfig* c, const Error& e) {
  RunOutput out;
  out.exit_code = exit_code_for(e.kind());
  out.report["command"] = command;
  out.report["config"] = c ? config_echo(*c) : ojson();
  out.report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  ojson verdicts = ojson::array();
  if (e.kind() == ErrorKind::EmptyLevelSet) verdicts.push_back(std::string("infeasible: ") + e.what());
  if (e.kind() == ErrorKind::ValidationError || e.kind() == ErrorKind::ParseError) {
    // One entry per violation, as collected by validation.
    std::string msg = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    std::size_t start = 0;
    for (std::size_t k = msg.find("; "); ; k = msg.find("; ", start)) {
      verdicts.push_back(msg.substr(start, k == std::string::npos ? std::string::npos : k - start));
      if (k == std::string::npos) break;
      start = k + 2;
    }
  }
  out.report["verdicts"] = verdicts;
  out.report["exit"] = {{"code", out.exit_code}, {"status", exit_status_name(out.exit_code)}};
  return out;
}

inline RunOutput run_command(const std::string& command, const RunConfig& c) {
  try {
    detail::Violations v;
    validate_config(c, command, v);
    if (!v.empty()) throw Error(ErrorKind::ValidationError, v.joined());
    if (command == "verify-structure") return run_verify_structure(c);
    if (command == "check-hypotheses") return run_check_hypotheses(c);
    if (command == "reduce") return run_reduce(c);
    if (command == "curvature-scan") return run_curvature_scan(c);
    if (command == "reeb-flow") return run_reeb_flow(c);
    return run_cone_check(c);
  } catch (const Error& e) {
    return failure_output(command, &c, e);
  }
}

inline void write_outputs(const std::string& dir, const RunOutput& out) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::ValidationError, "out: cannot create " + dir + ": " + ec.message());
  {
    std::ofstream f(std::filesystem::path(dir) / "report.json", std::ios::binary);
    f << out.report.dump(2) << "\n";
    if (!f) throw Error(ErrorKind::ValidationError, "out: cannot write report.json in " + dir);
  }
  std::ofstream f(std::filesystem::path(dir) / "samples.csv", std::ios::binary);
  f << out.csv;
}

}  // namespace sasred
