#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "tikhonov/experiment/config.hpp"

namespace tikhonov::experiment {

struct RunResult {
  std::vector<std::filesystem::path> files;  // in write order, metadata.json last
  nlohmann::json metadata;
};

// Each runner writes its CSV tables, SVG plots and metadata.json into
// config.output_dir. Outputs depend only on the config.
RunResult run_deblur(const ExperimentConfig& config);
RunResult run_rates(const ExperimentConfig& config);
RunResult run_noise_probe(const ExperimentConfig& config);
RunResult run_gamma(const ExperimentConfig& config);
RunResult run_experiment(const ExperimentConfig& config);

// Real, even, low-frequency test functions φ̂_j(ℓ) = ½[g(ℓ−j) + g(ℓ+j)] with
// g(x) = exp(−x²/(2σ²)), for j = 0..count−1 on a one-dimensional lattice.
std::vector<SpectralField> gaussian_bump_test_functions(const FrequencyLattice& lattice, int count, double width);

}  // namespace tikhonov::experiment
