#include "latticecalc/experiment.hpp"

#include <fstream>
#include <sstream>

#include <Eigen/Core>

#include "latticecalc/error.hpp"
#include "latticecalc/rng.hpp"
#include "latticecalc/verify.hpp"

#ifndef LATTICECALC_VERSION
#define LATTICECALC_VERSION "unknown"
#endif

namespace latcalc {
namespace {

constexpr std::pair<Task, const char*> kTaskNames[] = {
    {Task::norm, "norm"},         {Task::dualnorm, "dualnorm"}, {Task::krivine, "krivine"},
    {Task::constant, "constant"}, {Task::duality, "duality"},   {Task::verify, "verify"},
};

const Json& need(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(std::string("config: missing '") + key + "'");
  return doc.at(key);
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InputError(std::string(what) + ": expected a nonempty array");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(json_number(x, what));
  return v;
}

std::size_t positive_int(const Json& doc, const char* key, std::size_t fallback) {
  if (!doc.contains(key)) return fallback;
  const Json& j = doc.at(key);
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw InputError(std::string("config: '") + key + "' must be a positive integer");
  }
  return j.get<std::size_t>();
}

Flavor flavor_from(const Json& doc) {
  const std::string name = doc.value("flavor", std::string("convexity"));
  if (name == "convexity") return Flavor::convexity;
  if (name == "concavity") return Flavor::concavity;
  throw InputError("config: unknown flavor '" + name + "'");
}

// Collects named checks and the convergence flag for the report.
class Checks {
 public:
  explicit Checks(std::uint64_t seed) : seed_(seed) {}

  void add(const std::string& name, bool passed, double lhs, double rhs, const Json& inputs) {
    Json c{{"name", name},         {"passed", passed}, {"lhs", number_to_json(lhs)},
           {"rhs", number_to_json(rhs)}, {"gap", number_to_json(lhs - rhs)}};
    if (!passed) {
      c["seed"] = seed_;
      c["inputs"] = inputs;
      c["inputs_digest"] = inputs_digest(inputs);
      failed_ = true;
    }
    list_.push_back(std::move(c));
  }
  void converged(bool ok) { converged_ = converged_ && ok; }

  bool failed() const { return failed_; }
  bool all_converged() const { return converged_; }
  const Json& list() const { return list_; }

 private:
  std::uint64_t seed_;
  Json list_ = Json::array();
  bool failed_ = false;
  bool converged_ = true;
};

OperatorInstance load_operator(const ExperimentConfig& cfg) {
  const Json& doc = cfg.document;
  Json desc = need(doc, "operator");
  if (!desc.is_object()) throw InputError("config: 'operator' must be an object");
  if (!desc.contains("domain")) desc["domain"] = need(doc, "E");
  if (!desc.contains("codomain")) desc["codomain"] = need(doc, "X");
  if (desc.contains("random")) {
    const Json& r = desc.at("random");
    const auto dims = numbers(need(r, "dims"), "operator.random.dims");
    if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1 || dims[0] != std::floor(dims[0]) ||
        dims[1] != std::floor(dims[1])) {
      throw InputError("operator.random.dims: expected [rows, cols] of positive integers");
    }
    Rng rng = substream(r.value("seed", cfg.seed), 0);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(dims[0]),
                                          std::vector<double>(static_cast<std::size_t>(dims[1])));
    for (auto& row : rows) {
      for (auto& x : row) x = uniform(rng, -1.0, 1.0);
    }
    desc["matrix"] = rows;
  }
  return operator_from_json(desc, cfg.base_dir);
}

SeqNormFamily load_y(const ExperimentConfig& cfg) { return family_from_json(need(cfg.document, "Y")); }

DualMethod dual_method(const ExperimentConfig& cfg) {
  const std::string name = cfg.document.value("method", std::string("analytic"));
  if (name == "analytic") return DualMethod::analytic();
  if (name == "numeric") return DualMethod::numeric(cfg.budget, cfg.seed);
  throw InputError("config: unknown dual method '" + name + "'");
}

Json task_norm(const ExperimentConfig& cfg, Checks&) {
  const Json& doc = cfg.document;
  const SeqNormFamily y = load_y(cfg);
  if (doc.contains("t")) {
    return {{"value", number_to_json(y.norm(numbers(doc.at("t"), "t")))}};
  }
  const std::string space = doc.value("space", std::string(doc.contains("X") ? "XnY_tau" : "EnY"));
  if (space == "EnY") {
    const FiniteLattice e = lattice_from_json(need(doc, "E"));
    return {{"space", space},
            {"value", number_to_json(norm_EnY(e, y, tuple_from_json(need(doc, "tuple"), SpaceTag::normed_space)))}};
  }
  if (space == "XnY_tau") {
    const FiniteLattice x = lattice_from_json(need(doc, "X"));
    return {{"space", space},
            {"value", number_to_json(norm_XnY_tau(x, y, tuple_from_json(need(doc, "tuple"))))}};
  }
  throw InputError("config: unknown space '" + space + "'");
}

Json task_dualnorm(const ExperimentConfig& cfg, Checks& checks) {
  const Json& doc = cfg.document;
  const SeqNormFamily y = load_y(cfg);
  const DualMethod method = dual_method(cfg);
  const auto beta = numbers(need(doc, "beta"), "beta");
  const DualNormResult r = kothe_dual_norm(y, beta, method);
  checks.converged(r.converged);
  Json out{{"value", number_to_json(r.value)},
           {"analytic", r.analytic},
           {"converged", r.converged},
           {"witness", r.witness}};
  if (doc.contains("alpha")) {
    const auto alpha = numbers(doc.at("alpha"), "alpha");
    const HolderReport h = holder_check(y, alpha, beta, method);
    checks.add("holder", h.holds, h.lhs, h.rhs,
               Json{{"Y", to_json(y)}, {"alpha", alpha}, {"beta", beta}});
  }
  return out;
}

HomogeneousFunction homogeneous_from(const Json& desc, const Json& doc, std::size_t n) {
  const std::string kind = need(desc, "kind").get<std::string>();
  if (kind == "projection") {
    const std::size_t j = positive_int(desc, "j", 1) - 1;
    if (j >= n) throw InputError("h.projection: 'j' exceeds the tuple length");
    return HomogeneousFunction::projection(n, j);
  }
  if (kind == "join") return HomogeneousFunction::join(n);
  if (kind == "meet") return HomogeneousFunction::meet(n);
  if (kind == "y_norm") return HomogeneousFunction::y_norm(family_from_json(need(doc, "Y")), n);
  if (kind == "linear") {
    auto c = numbers(need(desc, "coefficients"), "h.coefficients");
    if (c.size() != n) throw InputError("h.linear: need one coefficient per tuple entry");
    return HomogeneousFunction::linear(std::move(c));
  }
  throw InputError("h: unknown kind '" + kind + "'");
}

Json task_krivine(const ExperimentConfig& cfg, Checks& checks) {
  const Json& doc = cfg.document;
  const FiniteLattice x_lattice = lattice_from_json(need(doc, "X"));
  const VectorTuple x = tuple_from_json(need(doc, "tuple"));
  if (x.dim() != x_lattice.dim()) throw InputError("tuple rows must have the dimension of X");
  const HomogeneousFunction h = homogeneous_from(need(doc, "h"), doc, x.size());
  const auto value = krivine_apply(h, x);
  const BoundCheck b = krivine_bound_check(x_lattice, h, x);
  checks.add("bound", b.holds, b.lhs, b.rhs,
             Json{{"X", to_json(x_lattice)}, {"tuple", to_json(x)}, {"h", doc.at("h")}});
  return {{"value", value},
          {"norm", number_to_json(x_lattice.norm(value))},
          {"h", h.label()},
          {"hnorm", number_to_json(h.hnorm())},
          {"hnorm_exact", h.hnorm_exact()}};
}

Json task_constant(const ExperimentConfig& cfg, Checks& checks) {
  const Json& doc = cfg.document;
  const OperatorInstance t = load_operator(cfg);
  const SeqNormFamily y = load_y(cfg);
  const Flavor flavor = flavor_from(doc);
  const std::size_t n_max = positive_int(doc, "n_max", 2);
  const ConstantEstimate est = estimate_constant(t, y, flavor, n_max, cfg.budget, cfg.seed);
  checks.converged(est.converged());
  Json out{{"estimate", to_json(est)}};
  if (doc.contains("brute_force")) {
    const Json& bf = doc.at("brute_force");
    const std::size_t n = positive_int(bf, "n", n_max);
    const int res = static_cast<int>(positive_int(bf, "grid_resolution", 25));
    const ConstantEstimate grid = brute_force_constant(t, y, flavor, n, res);
    out["brute_force"] = to_json(grid);
    if (n <= est.per_n.size() && grid.per_n.back().upper_bound) {
      checks.add("estimate_below_certified_upper", est.per_n[n - 1].lower_bound <= *grid.per_n.back().upper_bound,
                 est.per_n[n - 1].lower_bound, *grid.per_n.back().upper_bound,
                 Json{{"operator", to_json(t)}, {"Y", to_json(y)}, {"n", n}});
    }
  }
  return out;
}

Json task_duality(const ExperimentConfig& cfg, Checks& checks) {
  const Json& doc = cfg.document;
  const bool identity = doc.value("identity", false);
  const OperatorInstance t =
      identity ? identity_operator(lattice_from_json(need(doc, "X"))) : load_operator(cfg);
  const SeqNormFamily y = load_y(cfg);
  const std::size_t n = positive_int(doc, "n", 2);
  const double max_gap = doc.contains("max_gap") ? json_number(doc.at("max_gap"), "max_gap") : 5e-2;
  const DualityReport r = duality_check(t, y, n, cfg.budget, cfg.seed);
  checks.converged(r.converged);
  checks.add("rel_gap", r.rel_gap <= max_gap, r.rel_gap, max_gap,
             Json{{"operator", to_json(t)}, {"Y", to_json(y)}, {"n", n}});
  return to_json(r);
}

Json task_verify(const ExperimentConfig& cfg, Checks& checks) {
  const Json v = cfg.document.value("verify", Json::object());
  VerifyOptions o;
  o.seed = cfg.seed;
  o.budget = cfg.budget;
  const auto count = [&](const char* key, int& field) {
    if (v.contains(key)) field = static_cast<int>(positive_int(v, key, 1));
  };
  count("probes", o.probes);
  count("compose_probes", o.compose_probes);
  count("numeric_probes", o.numeric_probes);
  count("optimizer_instances", o.optimizer_instances);
  count("grid_resolution", o.grid_resolution);
  count("max_recorded", o.max_recorded);
  if (v.contains("dual_budget")) o.dual_budget = ascent_options_from_json(v.at("dual_budget"), o.dual_budget);
  std::vector<std::string> only;
  if (v.contains("suites")) only = v.at("suites").get<std::vector<std::string>>();
  const VerifyReport report = run_verify(o, only);
  for (const auto& s : report.suites) {
    checks.add(s.name, s.failures == 0, static_cast<double>(s.failures), 0.0, Json{{"suite", s.name}});
  }
  return to_json(report);
}

}  // namespace

const char* to_string(Task task) {
  for (const auto& [t, name] : kTaskNames) {
    if (t == task) return name;
  }
  return "?";
}

Task task_from_string(const std::string& name) {
  for (const auto& [t, n] : kTaskNames) {
    if (name == n) return t;
  }
  throw InputError("unknown task '" + name + "'");
}

ExperimentConfig config_from_json(const Json& document, std::filesystem::path base_dir,
                                  std::optional<Task> task) {
  if (!document.is_object()) throw InputError("config: expected a JSON object");
  ExperimentConfig cfg;
  cfg.document = document;
  cfg.base_dir = std::move(base_dir);
  if (document.contains("task")) {
    if (!document.at("task").is_string()) throw InputError("config: 'task' must be a string");
    cfg.task = task_from_string(document.at("task").get<std::string>());
    if (task && *task != cfg.task) {
      throw InputError(std::string("config task '") + to_string(cfg.task) +
                       "' does not match the requested task '" + to_string(*task) + "'");
    }
  } else if (task) {
    cfg.task = *task;
  } else {
    throw InputError("config: missing 'task'");
  }
  cfg.document["task"] = to_string(cfg.task);
  if (document.contains("seed")) {
    const Json& s = document.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw InputError("config: 'seed' must be a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  if (document.contains("budget")) cfg.budget = ascent_options_from_json(document.at("budget"));
  if (document.contains("output")) {
    if (!document.at("output").is_string()) throw InputError("config: 'output' must be a string");
    cfg.output = document.at("output").get<std::string>();
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<Task> task) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config '" + path.string() + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("config '" + path.string() + "': " + e.what());
  }
  return config_from_json(doc, path.parent_path(), task);
}

Report run(const ExperimentConfig& cfg) {
  Report report;
  Json doc = cfg.document;
  doc["seed"] = cfg.seed;
  // Where the report goes is not part of the experiment.
  doc.erase("output");
  Json& j = report.json;
  j["task"] = to_string(cfg.task);
  j["seed"] = cfg.seed;
  j["config"] = doc;
  j["versions"] = {{"latticecalc", LATTICECALC_VERSION},
                   {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                 std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)}};
  Checks checks(cfg.seed);
  try {
    ExperimentConfig c = cfg;
    c.document = doc;
    switch (cfg.task) {
      case Task::norm: j["results"] = task_norm(c, checks); break;
      case Task::dualnorm: j["results"] = task_dualnorm(c, checks); break;
      case Task::krivine: j["results"] = task_krivine(c, checks); break;
      case Task::constant: j["results"] = task_constant(c, checks); break;
      case Task::duality: j["results"] = task_duality(c, checks); break;
      case Task::verify: j["results"] = task_verify(c, checks); break;
    }
  } catch (const InputError& e) {
    j["error"] = e.what();
    report.status = kInputError;
  } catch (const ScaleGuardError& e) {
    j["error"] = e.what();
    report.status = kInputError;
  } catch (const Json::exception& e) {
    j["error"] = std::string("config: ") + e.what();
    report.status = kInputError;
  }
  if (report.status != kInputError) {
    if (checks.failed()) report.status = kCheckFailure;
    else if (!checks.all_converged()) report.status = kNonconvergent;
  }
  j["checks"] = checks.list();
  j["converged"] = checks.all_converged();
  j["passed"] = report.status == kOk;
  j["status"] = static_cast<int>(report.status);
  return report;
}

std::string render(const Report& report) { return report.json.dump(2) + "\n"; }

}  // namespace latcalc
