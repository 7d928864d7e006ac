#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tikhonov/multiplier.hpp"
#include "tikhonov/noise.hpp"
#include "tikhonov/tikhonov_solver.hpp"

namespace tikhonov::experiment {

enum class ExperimentKind { deblur, rates, noise_probe, gamma };
const char* to_string(ExperimentKind kind);

struct OperatorSpec {
  enum class Kind { deblur_1d, power_law };
  Kind kind = Kind::deblur_1d;
  double exponent = 0.0;  // t, power_law only

  MultiplierOperator build() const;
};

struct TruthSpec {
  enum class Kind { hat, file };
  Kind kind = Kind::hat;
  std::filesystem::path path;  // file only: CSV with header ell,re,im and ell >= 0

  SpectralField build(const FrequencyLattice& lattice) const;
};

struct SweepSpec {
  std::vector<double> deltas;
  std::vector<std::uint64_t> seeds;
  int bandlimit = 0;
  int reference_bandlimit = 0;
  std::vector<double> s1_list;
  double noise_regularity = 0.0;
};

struct SignalSpec {
  double delta = 0.0;
  std::uint64_t seed = 0;
  int points = 0;
};

struct ProbeSpec {
  int dimension = 1;
  std::vector<double> s_values;
  std::vector<int> bandlimits;
  std::vector<std::uint64_t> seeds;
  double threshold = 0.0;
  ClassificationRule rule = ClassificationRule::growth_threshold;
};

struct GammaSpec {
  std::vector<int> bandlimits;  // sizes n = k = 2M+1
  int reference_bandlimit = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  int test_functions = 0;
  double test_width = 0.0;
};

// One experiment run. Which sections are present depends on the kind:
//   deblur      operator truth schedule sweep signal divergence
//   rates       operator truth schedule sweep
//   noise_probe probe
//   gamma       operator truth schedule gamma
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::deblur;
  std::optional<OperatorSpec> op;
  std::optional<TruthSpec> truth;
  std::optional<RegularizationSchedule> schedule;
  std::optional<SweepSpec> sweep;
  std::optional<SignalSpec> signal;
  std::optional<double> divergence_alpha0;
  std::optional<ProbeSpec> probe;
  std::optional<GammaSpec> gamma;
  std::filesystem::path output_dir;
};

// Parses INI text. Relative paths resolve against base_dir. Every key of a
// used section is required; unknown sections or keys are rejected. Throws
// ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

// Checks the cross-field invariants (grids nonempty, deltas positive and
// strictly decreasing, reference bandlimit >= 4 x bandlimit, ...).
void validate(const ExperimentConfig& config);

// Adds offset to every seed; ConfigError on overflow.
void apply_seed_offset(ExperimentConfig& config, std::int64_t offset);

// "1..3, 7" -> {1, 2, 3, 7}.
std::vector<std::uint64_t> parse_seed_list(const std::string& text, const std::string& field);
std::vector<double> parse_double_list(const std::string& text, const std::string& field);

nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace tikhonov::experiment
