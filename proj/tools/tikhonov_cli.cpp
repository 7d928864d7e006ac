#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "tikhonov/errors.hpp"
#include "tikhonov/experiment/config.hpp"
#include "tikhonov/experiment/runners.hpp"

namespace {

using tikhonov::experiment::ExperimentKind;

int exit_code(const tikhonov::Error& e) {
  static const std::map<std::string, int> codes = {
      {"ConfigError", 2},      {"IoError", 3},          {"ParameterError", 4},   {"DimensionError", 5},
      {"RangeError", 6},       {"CalibrationError", 7}, {"NumericalError", 8},   {"DomainError", 9},
      {"InvalidFieldError", 10}, {"NotRealValuedError", 11}, {"ProvenanceError", 12}};
  const auto it = codes.find(e.kind());
  return it == codes.end() ? 13 : it->second;
}

struct Options {
  std::string config;
  std::string out;
  std::int64_t seed_offset = 0;
};

int run(ExperimentKind expected, const Options& options) {
  auto config = tikhonov::experiment::load_config(options.config);
  if (config.experiment != expected)
    throw tikhonov::ConfigError(std::string("experiment.kind: config is for '") + to_string(config.experiment) +
                                "' but the subcommand runs '" + to_string(expected) + "'");
  if (!options.out.empty()) config.output_dir = options.out;
  tikhonov::experiment::apply_seed_offset(config, options.seed_offset);
  const auto result = tikhonov::experiment::run_experiment(config);
  for (const auto& file : result.files) std::cout << file.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tikhonov regularization experiments on the periodic torus"};
  app.require_subcommand(1);
  Options options;
  const std::pair<const char*, ExperimentKind> commands[] = {
      {"deblur", ExperimentKind::deblur},
      {"rates", ExperimentKind::rates},
      {"noise-probe", ExperimentKind::noise_probe},
      {"gamma", ExperimentKind::gamma},
  };
  std::map<CLI::App*, ExperimentKind> kinds;
  for (const auto& [name, kind] : commands) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", options.config, "INI experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", options.out, "output directory (overrides [output] dir)");
    sub->add_option("--seed-offset", options.seed_offset, "added to every seed in the config");
    kinds[sub] = kind;
  }
  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [sub, kind] : kinds)
      if (sub->parsed()) return run(kind, options);
  } catch (const tikhonov::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: InternalError: " << e.what() << '\n';
    return 70;
  }
  return 1;
}
