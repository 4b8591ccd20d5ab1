#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latticecalc/descriptors.hpp"
#include "latticecalc/optimize.hpp"

namespace latcalc {

/// Sweep sizes of the property suite. Sweeps whose probes each run an
/// optimizer use the smaller counts.
struct VerifyOptions {
  std::uint64_t seed = 42;
  int probes = 1000;
  int compose_probes = 100;
  int numeric_probes = 200;
  int optimizer_instances = 20;
  int grid_resolution = 25;
  AscentOptions budget{};
  /// Budget of numerically evaluated dual norms. Their objectives are
  /// smooth away from the axes, so fewer restarts suffice.
  AscentOptions dual_budget{.restarts = 8, .polish = 1};
  /// Failed checks kept per suite with full inputs; the rest are only counted.
  int max_recorded = 10;
};

struct Violation {
  std::string check;
  /// Reproducer: the probe is stream `instance` of `sweep` under `seed`;
  /// `inputs` holds the probe itself.
  std::uint64_t seed = 0;
  std::string sweep;
  std::uint64_t instance = 0;
  Json inputs;
  std::string inputs_digest;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

struct SuiteResult {
  std::string name;
  long checks = 0;
  long failures = 0;
  long inconclusive = 0;
  /// Largest relative excess over the asserted relation among all checks,
  /// passing ones included; 0 when every relation held exactly.
  double max_violation = 0.0;
  std::vector<Violation> violations;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;

  long checks() const;
  long failures() const;
  bool passed() const { return failures() == 0; }
};

/// Names of the suites, in run order.
std::vector<std::string> verify_suite_names();

/// Runs the suites named in `only` (all when empty). Deterministic for fixed
/// options. Throws InputError for an unknown suite name.
VerifyReport run_verify(const VerifyOptions& options, const std::vector<std::string>& only = {});

Json to_json(const SuiteResult& suite);
Json to_json(const VerifyReport& report);

}  // namespace latcalc
