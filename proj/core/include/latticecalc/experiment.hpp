#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "latticecalc/descriptors.hpp"

// Declarative experiments: one JSON document in, one JSON report out.
//
// {
//   "task": "norm" | "dualnorm" | "krivine" | "constant" | "duality" | "verify",
//   "seed": 42,
//   "Y": <family>, "E": <space>, "X": <space>,
//   "operator": {"matrix": [[...]]} | {"matrix_file": "T.csv"}
//             | {"random": {"dims": [rows, cols], "seed": 7}},
//   "budget": {"restarts": 32, "iterations": 500, "initial_step": 0.1, ...},
//   "output": "report.json",
//   ...task parameters (see README)
// }

namespace latcalc {

enum class Task { norm, dualnorm, krivine, constant, duality, verify };

const char* to_string(Task task);
/// InputError for an unknown name.
Task task_from_string(const std::string& name);

enum ExitStatus : int { kOk = 0, kCheckFailure = 1, kInputError = 2, kNonconvergent = 3 };

struct ExperimentConfig {
  Task task = Task::norm;
  std::uint64_t seed = 0;
  AscentOptions budget{};
  std::optional<std::string> output;
  /// The whole document; task parameters are read from it.
  Json document;
  /// Directory that relative file references resolve against.
  std::filesystem::path base_dir;
};

/// Validates the common fields. The task-specific ones are checked by run().
/// `task` fills in a missing "task" entry and must match a present one.
ExperimentConfig config_from_json(const Json& document, std::filesystem::path base_dir = {},
                                  std::optional<Task> task = {});
/// Reads and parses a config file; relative paths in it resolve against its directory.
ExperimentConfig load_config(const std::filesystem::path& path, std::optional<Task> task = {});

struct Report {
  Json json;
  ExitStatus status = kOk;
};

/// Runs the configured task. Deterministic: the same config gives the same
/// report byte for byte. Input errors surface as status kInputError with an
/// "error" entry instead of an exception.
Report run(const ExperimentConfig& config);

/// Canonical text of a report: two-space indentation and a final newline.
std::string render(const Report& report);

}  // namespace latcalc
