#include "tikhonov/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tikhonov/errors.hpp"

namespace tikhonov {

double NormalStream::next() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  // u1 ∈ (0, 1], u2 ∈ [0, 1)
  const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * kScale;
  const double u2 = static_cast<double>(engine_() >> 11) * kScale;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

NoiseRealization NoiseRealization::zero(const FrequencyLattice& lattice) {
  return {std::nullopt, SpectralField::zero(lattice)};
}

NoiseRealization sample_white_noise(const FrequencyLattice& lattice, std::uint64_t seed) {
  NormalStream stream(seed);
  std::vector<Complex> c(lattice.size());
  const double half = std::sqrt(0.5);
  for (std::size_t index : nested_representatives(lattice)) {
    if (index == lattice.center()) {
      c[index] = {stream.next(), 0.0};
      continue;
    }
    const double re = half * stream.next();
    const double im = half * stream.next();
    c[index] = {re, im};
    c[lattice.mirror(index)] = {re, -im};
  }
  return {seed, SpectralField(lattice, std::move(c), true)};
}

double expected_sobolev_energy(const FrequencyLattice& lattice, double s) {
  double sum = 0.0;
  for (std::size_t i = 0; i < lattice.size(); ++i) sum += s == 0.0 ? 1.0 : std::pow(lattice.weight(i), s);
  return sum;
}

const char* to_string(Classification c) { return c == Classification::convergent ? "convergent" : "divergent"; }

const char* to_string(ClassificationRule rule) {
  return rule == ClassificationRule::growth_threshold ? "growth_threshold" : "increment_decay";
}

ClassificationRule parse_classification_rule(const std::string& name) {
  if (name == "growth_threshold") return ClassificationRule::growth_threshold;
  if (name == "increment_decay") return ClassificationRule::increment_decay;
  throw ConfigError("unknown classification rule '" + name + "' (growth_threshold | increment_decay)");
}

namespace {

// Cumulative Σ (1+|ℓ|²)^s |ĉ(ℓ)|² over shells 0..M_max; with `field` null the
// coefficient magnitudes are taken to be 1.
std::vector<double> shell_cumulative(const FrequencyLattice& lattice, double s, const SpectralField* field) {
  std::vector<double> shells(static_cast<std::size_t>(lattice.bandlimit()) + 1, 0.0);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const double mag = field ? std::norm((*field)[i]) : 1.0;
    shells[static_cast<std::size_t>(lattice.shell(i))] += (s == 0.0 ? 1.0 : std::pow(lattice.weight(i), s)) * mag;
  }
  for (std::size_t m = 1; m < shells.size(); ++m) shells[m] += shells[m - 1];
  return shells;
}

std::vector<double> growth_ratios(const std::vector<double>& energies) {
  std::vector<double> ratios(energies.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i < energies.size(); ++i)
    ratios[i] = (energies[i] - energies[i - 1]) / energies[i - 1];
  return ratios;
}

Classification classify(const std::vector<double>& expected, const std::vector<int>& bandlimits,
                        const ProbeConfig& config) {
  const std::size_t n = expected.size();
  if (config.rule == ClassificationRule::growth_threshold) {
    const double growth = (expected[n - 1] - expected[n - 2]) / expected[n - 2];
    return growth < config.threshold ? Classification::convergent : Classification::divergent;
  }
  auto rate = [&](std::size_t i) {
    return (expected[i] - expected[i - 1]) /
           std::log(static_cast<double>(bandlimits[i]) / static_cast<double>(bandlimits[i - 1]));
  };
  return rate(n - 1) < rate(n - 2) ? Classification::convergent : Classification::divergent;
}

}  // namespace

ProbeResult regularity_probe(const ProbeConfig& config) {
  if (config.s_values.empty()) throw ConfigError("regularity probe: s_values is empty");
  if (config.bandlimits.empty()) throw ConfigError("regularity probe: bandlimits is empty");
  if (config.seeds.empty()) throw ConfigError("regularity probe: seeds is empty");
  const std::size_t min_points = config.rule == ClassificationRule::increment_decay ? 3 : 2;
  if (config.bandlimits.size() < min_points)
    throw ConfigError(std::string("regularity probe: rule ") + to_string(config.rule) + " needs at least " +
                      std::to_string(min_points) + " bandlimits");
  for (std::size_t i = 0; i < config.bandlimits.size(); ++i) {
    if (config.bandlimits[i] < 1) throw ConfigError("regularity probe: bandlimits must be positive");
    if (i > 0 && config.bandlimits[i] <= config.bandlimits[i - 1])
      throw ConfigError("regularity probe: bandlimits must be strictly increasing");
  }

  const FrequencyLattice full(config.dimension, config.bandlimits.back());
  std::vector<NoiseRealization> noises;
  noises.reserve(config.seeds.size());
  for (std::uint64_t seed : config.seeds) noises.push_back(sample_white_noise(full, seed));

  auto pick = [&](const std::vector<double>& cumulative) {
    std::vector<double> values;
    for (int m : config.bandlimits) values.push_back(cumulative[static_cast<std::size_t>(m)]);
    return values;
  };

  ProbeResult result;
  for (double s : config.s_values) {
    const auto expected = pick(shell_cumulative(full, s, nullptr));
    const auto expected_growth = growth_ratios(expected);
    const Classification verdict = classify(expected, config.bandlimits, config);
    result.summary.push_back({s, expected_growth.back(), verdict});

    for (std::size_t i = 0; i < expected.size(); ++i)
      result.rows.push_back({s, config.bandlimits[i], std::nullopt, expected[i], expected_growth[i], verdict});
    for (const NoiseRealization& noise : noises) {
      const auto energies = pick(shell_cumulative(full, s, &noise.field));
      const auto growth = growth_ratios(energies);
      for (std::size_t i = 0; i < energies.size(); ++i)
        result.rows.push_back({s, config.bandlimits[i], noise.seed, energies[i], growth[i], verdict});
    }
  }
  return result;
}

}  // namespace tikhonov
