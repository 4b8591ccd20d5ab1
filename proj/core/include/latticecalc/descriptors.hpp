#pragma once

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "latticecalc/constants.hpp"
#include "latticecalc/finite_lattice.hpp"
#include "latticecalc/mixed_norms.hpp"
#include "latticecalc/operators.hpp"
#include "latticecalc/seq_lattice.hpp"
#include "latticecalc/vector_tuple.hpp"

// Text formats shared by the CLI and the library.
//
// Norm family:   {"kind":"lp","p":2}            p is a number or "inf"
//                {"kind":"weighted_lp","p":1,"weights":[2,1]}
//                {"kind":"orlicz","phi":"u^2"}
//                {"kind":"dual","base":{...},"restarts":32,"iterations":500,"seed":0}
// Lattice/space: {"dim":3,"norm":<family>}
// Tuple:         [[x11,...,x1m], ...]           rows are tuple entries
// Operator:      {"matrix":[[...]] | "matrix_file":"T.csv", "domain":<space>,
//                 "codomain":<space>, "label":"..."}
// CSV:           comma separated, row-major, no header.

namespace latcalc {

using Json = nlohmann::json;

SeqNormFamily family_from_json(const Json& j);
Json to_json(const SeqNormFamily& family);

FiniteLattice lattice_from_json(const Json& j);
Json to_json(const FiniteLattice& lattice);

VectorTuple tuple_from_json(const Json& j, SpaceTag tag = SpaceTag::lattice);
Json to_json(const VectorTuple& tuple);

std::vector<std::vector<double>> parse_csv(std::string_view text);
std::vector<std::vector<double>> read_csv_file(const std::filesystem::path& path);

Matrix matrix_from_json(const Json& j);
/// Relative "matrix_file" paths resolve against `base_dir`.
OperatorInstance operator_from_json(const Json& j, const std::filesystem::path& base_dir = {});
Json to_json(const OperatorInstance& op);

Json to_json(const AscentOptions& options);
AscentOptions ascent_options_from_json(const Json& j, AscentOptions defaults = {});

Json to_json(const ConstantEstimate& estimate);
Json to_json(const DualityReport& report);

/// FNV-1a digest of the compact JSON text, as 16 hex digits.
std::string inputs_digest(const Json& inputs);

/// A number, or one of the strings "inf" / "infinity".
double json_number(const Json& j, const char* what);
/// Finite doubles as numbers, infinities as "inf" / "-inf".
Json number_to_json(double x);

}  // namespace latcalc
