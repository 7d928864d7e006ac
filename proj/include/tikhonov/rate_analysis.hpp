#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tikhonov/tikhonov_solver.hpp"

namespace tikhonov {

enum class Regime { case_i, case_ii, out_of_range };
const char* to_string(Regime regime);

// Convergence exponents for ‖T_{α(δ)}(m_δ) − u‖_{H^{s1}} ≲ δ^{predicted}.
struct RateExponents {
  double t, r, kappa, s, s1;
  double zeta;   // max{s1, −r−2t}
  double eta;    // t/(2r+2t)
  double gamma;  // r/(2r+2t)
  Regime regime;
  double bias_exponent;       // κ(r−ζ)/(2(t+r))
  double noise_exponent;      // 1 in case (i), 1 + κ(s−t−s1)/(2(t+r)) in case (ii)
  double predicted_exponent;  // min of the two; NaN when out of range
  double upper_s1;            // s − t + 2(t+r)/κ (convergence range of the general estimate)
  double alt_upper_s1;        // s − t + (t+r)/κ (narrower alternative range)
};

// Requires t > max{0, −s−r}, r ≥ 0, κ > 0; throws ParameterError otherwise.
RateExponents predicted_exponent(double t, double r, double kappa, double s, double s1);

// Exponent min(r/(t+r), 1−2β) of the translation-invariant estimate with
// α = α₀δ². Requires 0 < β < 1/2, r > 0, t > 0.
double lemma_exponent(double t, double r, double beta);
// Largest admissible s1 for that estimate: s − (1−2β)t + 2rβ.
double lemma_s1_bound(double t, double r, double beta, double s);

struct LogLogFit {
  double slope;
  double intercept;
  double residual;  // root-mean-square residual in log space
};

// Ordinary least squares of ln(error) on ln(delta). Needs ≥ 3 samples, all positive.
LogLogFit fit_loglog_slope(std::span<const std::pair<double, double>> samples);

struct ErrorRow {
  double s1;
  double delta;
  std::optional<std::uint64_t> seed;
  double raw_error;
  double normalized_error;  // raw / raw at the largest delta of the same curve
};

struct MedianRow {
  double s1;
  double delta;
  double median_normalized_error;
  double median_raw_error;
};

struct SlopeRow {
  double s1;
  LogLogFit fit;  // on the seed-median normalized error
  RateExponents prediction;
};

struct ErrorSweepResult {
  std::vector<ErrorRow> rows;
  std::vector<MedianRow> medians;
  std::vector<SlopeRow> slopes;
};

struct ErrorSweepSettings {
  std::vector<double> s1_list;
  std::vector<double> delta_grid;  // strictly decreasing
  int reconstruction_bandlimit;    // data observed and solved on this lattice
  double noise_regularity;         // s of the noise, used for the predictions
};

// Reconstruct from m_δ = Au + δε truncated to the reconstruction bandlimit and
// measure ‖T_{α(δ)}(m_δ) − u‖_{H^{s1}} on the truth's (reference) lattice, for
// every noise realization and δ. A zero realization gives the bias-only sweep.
ErrorSweepResult error_sweep(const MultiplierOperator& op, const SpectralField& truth,
                             const RegularizationSchedule& schedule, const ErrorSweepSettings& settings,
                             const std::vector<NoiseRealization>& noises);

// I(δ) = {ℓ : c0 δ²(1+|ℓ|²) ≤ |a(ℓ)|² ≤ c1 δ²(1+|ℓ|²)}.
struct ModeBand {
  double c0;
  double c1;
  double delta;
  std::vector<std::size_t> members;  // lattice indices
};

ModeBand mode_band(const MultiplierOperator& op, const FrequencyLattice& lattice, double c0, double c1, double delta);

struct BandCalibration {
  double c0;
  double c1;
  int widenings;
};

// (c0, c1) = (0.5, 2)·ρ(ℓ*) with ρ(ℓ) = |a(ℓ)|²/(δ²(1+|ℓ|²)) and ℓ* the mode
// with ρ closest to 1 at the largest δ, widened by factors of 2 until every
// band on the grid is nonempty. Throws CalibrationError when that fails.
BandCalibration calibrate_band(const MultiplierOperator& op, const FrequencyLattice& lattice,
                               std::span<const double> delta_grid);

struct DivergenceRow {
  double delta;
  std::optional<std::uint64_t> seed;
  std::size_t band_size;
  double lower_bound;  // Σ_{I(δ)} (1+α₀/c0)^{-1} (c1+α₀)^{-1} |ε̂(ℓ)|²
  double h1_norm_sq;   // ‖w_δ‖²_{H¹}
};

struct DivergenceReport {
  BandCalibration calibration;
  std::vector<DivergenceRow> rows;
  std::vector<double> seed_ratios;  // min_δ ‖w_δ‖_{H¹} / max_δ ‖w_δ‖_{H¹} per realization
  double median_ratio;
  double ratio_threshold;  // acceptance proxy for a nonvanishing limsup
};

inline constexpr double kDivergenceRatioThreshold = 0.1;

// H¹ behaviour of the filtered noise w_δ for α = α₀δ² and r = 1; the schedule
// must have κ = 2 and r = 1 (ParameterError otherwise).
DivergenceReport h1_divergence(const MultiplierOperator& op, const RegularizationSchedule& schedule,
                               std::span<const double> delta_grid, const std::vector<NoiseRealization>& noises);

double median(std::vector<double> values);

}  // namespace tikhonov
