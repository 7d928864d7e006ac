#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tikhonov/spectral_field.hpp"

namespace tikhonov {

// Standard normal variates from std::mt19937_64 by the Box–Muller transform
// on 53-bit uniforms. Both members of each Box–Muller pair are used, in
// order. mt19937_64's output sequence is fixed by the C++ standard, so the
// stream is reproducible across platforms up to the last-ulp behaviour of
// std::log, std::sqrt, std::cos and std::sin.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// A seeded realization of normalized white noise W on the lattice. A
// realization without a seed is the zero field (used for noise-free runs).
struct NoiseRealization {
  std::optional<std::uint64_t> seed;
  SpectralField field;

  const FrequencyLattice& lattice() const noexcept { return field.lattice(); }
  static NoiseRealization zero(const FrequencyLattice& lattice);
};

// ĉ(0) ~ N(0,1); for ℓ ≠ 0, Re ĉ(ℓ), Im ĉ(ℓ) ~ N(0, 1/2) independent with
// ĉ(−ℓ) = conj ĉ(ℓ). Modes are drawn in nested_representatives() order, so
// truncate(sample(M), M') == sample(M') for M' ≤ M and the same seed.
NoiseRealization sample_white_noise(const FrequencyLattice& lattice, std::uint64_t seed);

// Σ_ℓ (1+|ℓ|²)^s over the lattice = E‖W_M‖²_{H^s}.
double expected_sobolev_energy(const FrequencyLattice& lattice, double s);

enum class Classification { convergent, divergent };
const char* to_string(Classification c);

enum class ClassificationRule {
  // Convergent iff the final relative growth (E_last − E_prev)/E_prev of the
  // expected energy is below the threshold.
  growth_threshold,
  // Convergent iff the final increment, normalized by ln(M_last/M_prev), is
  // smaller than the preceding one. Needs at least three bandlimits.
  increment_decay,
};
const char* to_string(ClassificationRule rule);
ClassificationRule parse_classification_rule(const std::string& name);

struct ProbeConfig {
  int dimension = 1;
  std::vector<double> s_values;
  std::vector<int> bandlimits;
  std::vector<std::uint64_t> seeds;
  double threshold = 0.02;
  ClassificationRule rule = ClassificationRule::growth_threshold;
};

struct ProbeRow {
  double s;
  int bandlimit;
  std::optional<std::uint64_t> seed;  // nullopt = deterministic expected trajectory
  double partial_energy;
  double growth_ratio;  // NaN at the first bandlimit
  Classification classification;
};

struct ProbeSummary {
  double s;
  double final_growth_ratio;
  Classification classification;
};

struct ProbeResult {
  std::vector<ProbeRow> rows;
  std::vector<ProbeSummary> summary;
};

// Partial sums of ‖W‖²_{H^s} over nested truncations, per seed and in
// expectation, with a convergent/divergent verdict per s.
ProbeResult regularity_probe(const ProbeConfig& config);

}  // namespace tikhonov
