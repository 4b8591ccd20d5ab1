// lattice-calc <task> --config <file> [--seed N] [--out <file>]

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "latticecalc/error.hpp"
#include "latticecalc/experiment.hpp"

namespace {

int emit(const latcalc::Report& report, const std::optional<std::string>& out) {
  const std::string text = latcalc::render(report);
  if (!out) {
    std::cout << text;
  } else {
    std::ofstream file(*out, std::ios::binary);
    if (!(file << text)) {
      std::cerr << "lattice-calc: cannot write '" << *out << "'\n";
      return latcalc::kInputError;
    }
  }
  if (report.json.contains("error")) {
    std::cerr << "lattice-calc: " << report.json["error"].get<std::string>() << "\n";
  }
  return report.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Banach lattice norms, duals and operator constants"};
  std::string task;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  app.add_option("task", task, "norm | dualnorm | krivine | constant | duality | verify")
      ->required()
      ->check(CLI::IsMember({"norm", "dualnorm", "krivine", "constant", "duality", "verify"}));
  app.add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Overrides the config seed");
  app.add_option("--out", out, "Report path (default: the config's output, else stdout)");
  app.set_version_flag("--version", LATTICECALC_VERSION);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : latcalc::kInputError;
  }

  try {
    latcalc::ExperimentConfig config =
        latcalc::load_config(config_path, latcalc::task_from_string(task));
    if (seed) config.seed = *seed;
    if (out) config.output = out;
    return emit(latcalc::run(config), config.output);
  } catch (const latcalc::InputError& e) {
    std::cerr << "lattice-calc: " << e.what() << "\n";
    return latcalc::kInputError;
  }
}
