#include "latticecalc/descriptors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "latticecalc/error.hpp"

namespace latcalc {
namespace {

const Json& require(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string(where) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

std::vector<double> number_array(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(json_number(v, what));
  return out;
}

}  // namespace

double json_number(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return kInfinity;
  }
  throw InputError(std::string(what) + ": expected a number");
}

Json number_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

SeqNormFamily family_from_json(const Json& j) {
  const auto kind = require(j, "kind", "norm family").get<std::string>();
  if (kind == "lp") return SeqNormFamily::lp(json_number(require(j, "p", "lp"), "p"));
  if (kind == "weighted_lp") {
    return SeqNormFamily::weighted_lp(json_number(require(j, "p", "weighted_lp"), "p"),
                                      number_array(require(j, "weights", "weighted_lp"), "weights"));
  }
  if (kind == "orlicz") {
    return SeqNormFamily::orlicz(
        OrliczFunction::from_expression(require(j, "phi", "orlicz").get<std::string>()));
  }
  if (kind == "dual") {
    const SeqNormFamily base = family_from_json(require(j, "base", "dual"));
    DualMethod method = DualMethod::numeric(ascent_options_from_json(j),
                                            j.value("seed", std::uint64_t{0}));
    return kothe_dual(base, method);
  }
  throw InputError("unknown norm family kind '" + kind + "'");
}

Json to_json(const SeqNormFamily& family) {
  switch (family.kind()) {
    case FamilyKind::lp:
      return {{"kind", "lp"}, {"p", number_to_json(family.exponent())}};
    case FamilyKind::weighted_lp:
      return {{"kind", "weighted_lp"},
              {"p", number_to_json(family.exponent())},
              {"weights", std::vector<double>(family.weights().begin(), family.weights().end())}};
    case FamilyKind::orlicz:
      return {{"kind", "orlicz"}, {"phi", family.orlicz_function()->label()}};
    case FamilyKind::numeric_dual: {
      Json j = to_json(family.dual_method()->budget);
      j["kind"] = "dual";
      j["base"] = to_json(*family.dual_base());
      j["seed"] = family.dual_method()->seed;
      return j;
    }
    case FamilyKind::custom:
      break;
  }
  return {{"kind", "custom"}, {"label", family.label()}};
}

FiniteLattice lattice_from_json(const Json& j) {
  const Json& dim = require(j, "dim", "space");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    throw InputError("space: 'dim' must be a positive integer");
  }
  return FiniteLattice(dim.get<std::size_t>(), family_from_json(require(j, "norm", "space")));
}

Json to_json(const FiniteLattice& lattice) {
  return {{"dim", lattice.dim()}, {"norm", to_json(lattice.norm_family())}};
}

VectorTuple tuple_from_json(const Json& j, SpaceTag tag) {
  if (!j.is_array() || j.empty()) throw InputError("tuple must be a nonempty array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) rows.push_back(number_array(r, "tuple row"));
  return VectorTuple(rows, tag);
}

Json to_json(const VectorTuple& tuple) {
  Json rows = Json::array();
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    rows.push_back(std::vector<double>(tuple.row(j).begin(), tuple.row(j).end()));
  }
  return rows;
}

std::vector<std::vector<double>> parse_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    std::vector<double> row;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      std::string_view cell = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
      while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
      if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw InputError("CSV line " + std::to_string(line_no) + ": bad number '" +
                         std::string(cell) + "'");
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError("CSV line " + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " columns");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("CSV input has no rows");
  return rows;
}

std::vector<std::vector<double>> read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) rows.push_back(number_array(r, "matrix row"));
  return Matrix::from_rows(rows);
}

OperatorInstance operator_from_json(const Json& j, const std::filesystem::path& base_dir) {
  Matrix m;
  if (j.contains("matrix")) {
    m = matrix_from_json(j.at("matrix"));
  } else if (j.contains("matrix_file")) {
    std::filesystem::path p = j.at("matrix_file").get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    m = Matrix::from_rows(read_csv_file(p));
  } else {
    throw InputError("operator: needs 'matrix' or 'matrix_file'");
  }
  return OperatorInstance(std::move(m), lattice_from_json(require(j, "domain", "operator")),
                          lattice_from_json(require(j, "codomain", "operator")),
                          j.value("label", std::string{}));
}

Json to_json(const OperatorInstance& op) {
  return {{"matrix", op.matrix.to_rows()},
          {"domain", to_json(op.domain)},
          {"codomain", to_json(op.codomain)},
          {"label", op.label}};
}

Json to_json(const AscentOptions& options) {
  return {{"restarts", options.restarts},
          {"iterations", options.iterations},
          {"initial_step", options.initial_step},
          {"step_tolerance", options.step_tolerance},
          {"polish", options.polish}};
}

AscentOptions ascent_options_from_json(const Json& j, AscentOptions o) {
  if (!j.is_object()) return o;
  o.restarts = j.value("restarts", o.restarts);
  o.iterations = j.value("iterations", o.iterations);
  o.initial_step = j.value("initial_step", o.initial_step);
  o.step_tolerance = j.value("step_tolerance", o.step_tolerance);
  o.polish = j.value("polish", o.polish);
  o.threads = j.value("threads", o.threads);
  if (o.polish < 0) throw InputError("optimizer polish count must be non-negative");
  if (o.restarts < 1 || o.iterations < 1 || !(o.initial_step > 0.0) || !(o.step_tolerance > 0.0)) {
    throw InputError("optimizer budget must be positive");
  }
  return o;
}

Json to_json(const ConstantEstimate& estimate) {
  Json levels = Json::array();
  for (const auto& l : estimate.per_n) {
    Json level = {{"n", l.n},
                  {"lower_bound", number_to_json(l.lower_bound)},
                  {"witness", to_json(l.witness)},
                  {"converged", l.converged}};
    if (l.upper_bound) level["upper_bound"] = number_to_json(*l.upper_bound);
    levels.push_back(std::move(level));
  }
  Json j = {{"flavor", to_string(estimate.flavor)},
            {"Y", estimate.y_label},
            {"per_n", std::move(levels)},
            {"overall", number_to_json(estimate.overall)},
            {"certified", estimate.certified},
            {"converged", estimate.converged()}};
  if (estimate.certified) {
    j["grid_resolution"] = estimate.grid_resolution;
  } else {
    j["budget"] = to_json(estimate.optimizer);
    j["seed"] = estimate.seed;
  }
  return j;
}

Json to_json(const DualityReport& report) {
  return {{"n", report.n},
          {"convex_n", number_to_json(report.convex_n)},
          {"concave_dual_n", number_to_json(report.concave_dual_n)},
          {"rel_gap", number_to_json(report.rel_gap)},
          {"converged", report.converged},
          {"convex", to_json(report.convex)},
          {"concave_dual", to_json(report.concave_dual)}};
}

std::string inputs_digest(const Json& inputs) {
  const std::string text = inputs.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace latcalc
