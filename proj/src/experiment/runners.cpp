#include "tikhonov/experiment/runners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tikhonov/discrete_solver.hpp"
#include "tikhonov/errors.hpp"
#include "tikhonov/experiment/output.hpp"
#include "tikhonov/rate_analysis.hpp"

namespace tikhonov::experiment {

namespace fs = std::filesystem;

namespace {

constexpr double kRateSlack = 0.15;

class Writer {
 public:
  explicit Writer(const fs::path& dir) : dir_(dir) { prepare_output_dir(dir); }

  void write(const std::string& name, const std::string& contents) {
    write_atomically(dir_ / name, contents);
    files_.push_back(dir_ / name);
  }

  RunResult finish(nlohmann::json metadata) {
    metadata["files"] = nlohmann::json::array();
    for (const fs::path& f : files_) metadata["files"].push_back(f.filename().string());
    write("metadata.json", metadata.dump(2) + "\n");
    return {files_, std::move(metadata)};
  }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
};

template <class T>
const T& require(const std::optional<T>& value, const char* section) {
  if (!value) throw ConfigError(std::string(section) + ": required section is missing");
  return *value;
}

// NaN-valued doubles become JSON null.
nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json exponents_json(const RateExponents& e) {
  return {{"s1", e.s1},
          {"regime", to_string(e.regime)},
          {"zeta", e.zeta},
          {"eta", e.eta},
          {"gamma", e.gamma},
          {"bias_exponent", e.bias_exponent},
          {"noise_exponent", number(e.noise_exponent)},
          {"predicted_exponent", number(e.predicted_exponent)},
          {"upper_s1", e.upper_s1},
          {"alt_upper_s1", e.alt_upper_s1}};
}

nlohmann::json range_note(const RateExponents& e) {
  return {{"general_bound", "s1 < s - t + 2(t+r)/kappa"},
          {"general_value", e.upper_s1},
          {"alt_bound", "s1 < s - t + (t+r)/kappa"},
          {"alt_value", e.alt_upper_s1},
          {"bounds_differ", e.upper_s1 != e.alt_upper_s1},
          {"regime_classification_uses", "general_bound"}};
}

std::vector<NoiseRealization> draw_noises(const FrequencyLattice& lattice, const std::vector<std::uint64_t>& seeds) {
  std::vector<NoiseRealization> noises;
  noises.reserve(seeds.size());
  for (std::uint64_t seed : seeds) noises.push_back(sample_white_noise(lattice, seed));
  return noises;
}

std::string errors_csv(const ErrorSweepResult& sweep) {
  CsvTable table({"s1", "delta", "seed", "raw_error", "normalized_error"});
  for (const ErrorRow& row : sweep.rows)
    table.row({cell(row.s1), cell(row.delta), cell(row.seed), cell(row.raw_error), cell(row.normalized_error)});
  return table.str();
}

std::string medians_csv(const ErrorSweepResult& sweep) {
  CsvTable table({"s1", "delta", "median_normalized_error", "median_raw_error"});
  for (const MedianRow& row : sweep.medians)
    table.row({cell(row.s1), cell(row.delta), cell(row.median_normalized_error), cell(row.median_raw_error)});
  return table.str();
}

std::string errors_svg(const ErrorSweepResult& sweep, const std::string& title) {
  PlotSpec plot{title, "delta", "normalized error (median over seeds)", true, true, {}};
  for (const SlopeRow& slope : sweep.slopes) {
    PlotSeries series{"s1 = " + format_double(slope.s1), {}, {}};
    for (const MedianRow& row : sweep.medians)
      if (row.s1 == slope.s1) {
        series.x.push_back(row.delta);
        series.y.push_back(row.median_normalized_error);
      }
    plot.series.push_back(std::move(series));
  }
  return render_svg(plot);
}

// min/max of the median normalized error over the grid, per s1.
double decay_ratio(const ErrorSweepResult& sweep, double s1) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const MedianRow& row : sweep.medians)
    if (row.s1 == s1) {
      lo = std::min(lo, row.median_normalized_error);
      hi = std::max(hi, row.median_normalized_error);
    }
  return hi > 0.0 ? lo / hi : std::numeric_limits<double>::quiet_NaN();
}

bool strictly_decreasing(const ErrorSweepResult& sweep, double s1) {
  double previous = std::numeric_limits<double>::infinity();
  for (const MedianRow& row : sweep.medians)
    if (row.s1 == s1) {
      if (!(row.median_normalized_error < previous)) return false;
      previous = row.median_normalized_error;
    }
  return true;
}

}  // namespace

std::vector<SpectralField> gaussian_bump_test_functions(const FrequencyLattice& lattice, int count, double width) {
  if (lattice.dimension() != 1) throw DimensionError("gaussian bump test functions are one-dimensional");
  if (count < 1 || !(width > 0.0)) throw ParameterError("test functions need count >= 1 and width > 0");
  std::vector<SpectralField> out;
  for (int j = 0; j < count; ++j) {
    std::vector<Complex> c(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const double ell = lattice.mode(i)[0];
      auto g = [&](double x) { return std::exp(-x * x / (2.0 * width * width)); };
      c[i] = 0.5 * (g(ell - j) + g(ell + j));
    }
    out.emplace_back(lattice, std::move(c), true);
  }
  return out;
}

RunResult run_deblur(const ExperimentConfig& config) {
  const SweepSpec& sweep = require(config.sweep, "sweep");
  const SignalSpec& signal = require(config.signal, "signal");
  const RegularizationSchedule& schedule = require(config.schedule, "schedule");
  const MultiplierOperator op = require(config.op, "operator").build();
  const double divergence_alpha0 = require(config.divergence_alpha0, "divergence");
  Writer out(config.output_dir);

  const FrequencyLattice reference(1, sweep.reference_bandlimit);
  const SpectralField truth = require(config.truth, "truth").build(reference);

  // Single reconstruction at the signal noise level.
  const NoiseRealization signal_noise = sample_white_noise(reference, signal.seed);
  const Measurement m = forward(op, truth, signal.delta, signal_noise);
  const SpectralField observed = truncate(m.data, sweep.bandlimit);
  const SpectralField reconstruction = solve(op, observed, schedule.alpha(signal.delta), schedule.r());
  const auto p = static_cast<std::size_t>(signal.points);
  const auto truth_values = evaluate_on_grid(truth, p);
  const auto blurred_values = evaluate_on_grid(truncate(apply_multiplier(op, truth), sweep.bandlimit), p);
  const auto data_values = evaluate_on_grid(observed, p);
  const auto recon_values = evaluate_on_grid(reconstruction, p);
  {
    CsvTable table({"x", "truth", "blurred", "data", "reconstruction"});
    std::vector<double> xs(p);
    for (std::size_t j = 0; j < p; ++j) {
      xs[j] = static_cast<double>(j) / static_cast<double>(p);
      table.row({cell(xs[j]), cell(truth_values[j]), cell(blurred_values[j]), cell(data_values[j]),
                 cell(recon_values[j])});
    }
    out.write("signals.csv", table.str());
    out.write("signals.svg", render_svg({"truth, data and reconstruction, delta = " + format_double(signal.delta),
                                         "x",
                                         "value",
                                         false,
                                         false,
                                         {{"truth", xs, truth_values},
                                          {"data", xs, data_values},
                                          {"reconstruction", xs, recon_values}}}));
  }

  const std::vector<NoiseRealization> noises = draw_noises(reference, sweep.seeds);
  const ErrorSweepResult errors = error_sweep(
      op, truth, schedule, {sweep.s1_list, sweep.deltas, sweep.bandlimit, sweep.noise_regularity}, noises);
  out.write("errors.csv", errors_csv(errors));
  out.write("errors_median.csv", medians_csv(errors));
  {
    CsvTable table({"s1", "fitted_slope", "predicted_exponent", "regime"});
    for (const SlopeRow& s : errors.slopes)
      table.row({cell(s.s1), cell(s.fit.slope), cell(s.prediction.predicted_exponent), to_string(s.prediction.regime)});
    out.write("slopes.csv", table.str());
  }
  out.write("errors.svg", errors_svg(errors, "normalized reconstruction error"));

  const RegularizationSchedule divergence_schedule(divergence_alpha0, 2.0, 1.0);
  const DivergenceReport divergence = h1_divergence(op, divergence_schedule, sweep.deltas, noises);
  {
    CsvTable table({"delta", "seed", "band_size", "lower_bound", "h1_norm_sq"});
    for (const DivergenceRow& row : divergence.rows)
      table.row({cell(row.delta), cell(row.seed), cell(row.band_size), cell(row.lower_bound), cell(row.h1_norm_sq)});
    out.write("divergence.csv", table.str());
  }

  nlohmann::json meta;
  meta["config"] = to_json(config);
  meta["operator"] = {{"name", op.name()}, {"smoothing_order", op.smoothing_order()}};
  meta["signal"] = {{"alpha", schedule.alpha(signal.delta)},
                    {"l2_error", sobolev_norm(embed(reconstruction, reference) - truth, 0.0)},
                    {"truth_l2_norm", sobolev_norm(truth, 0.0)}};
  meta["slopes"] = nlohmann::json::array();
  for (const SlopeRow& s : errors.slopes) {
    nlohmann::json row = exponents_json(s.prediction);
    row["fitted_slope"] = number(s.fit.slope);
    row["fit_residual"] = number(s.fit.residual);
    row["median_min_over_max"] = number(decay_ratio(errors, s.s1));
    row["median_strictly_decreasing"] = strictly_decreasing(errors, s.s1);
    meta["slopes"].push_back(row);
  }
  if (!errors.slopes.empty()) meta["convergence_range"] = range_note(errors.slopes.front().prediction);
  const bool bound_holds = std::all_of(divergence.rows.begin(), divergence.rows.end(),
                                       [](const DivergenceRow& r) { return r.h1_norm_sq >= r.lower_bound; });
  meta["divergence"] = {{"schedule", {{"alpha0", divergence_alpha0}, {"kappa", 2.0}, {"r", 1.0}}},
                        {"c0", divergence.calibration.c0},
                        {"c1", divergence.calibration.c1},
                        {"widenings", divergence.calibration.widenings},
                        {"seed_min_over_max", divergence.seed_ratios},
                        {"median_min_over_max", number(divergence.median_ratio)},
                        {"ratio_threshold", divergence.ratio_threshold},
                        {"lower_bound_holds", bound_holds}};
  meta["normalization"] = "error divided by its value at the largest delta of the same (s1, seed) curve";
  meta["seed_aggregate"] = "median";
  return out.finish(std::move(meta));
}

RunResult run_rates(const ExperimentConfig& config) {
  const SweepSpec& sweep = require(config.sweep, "sweep");
  const RegularizationSchedule& schedule = require(config.schedule, "schedule");
  const MultiplierOperator op = require(config.op, "operator").build();
  Writer out(config.output_dir);

  const FrequencyLattice reference(1, sweep.reference_bandlimit);
  const SpectralField truth = require(config.truth, "truth").build(reference);
  const ErrorSweepResult errors =
      error_sweep(op, truth, schedule, {sweep.s1_list, sweep.deltas, sweep.bandlimit, sweep.noise_regularity},
                  {NoiseRealization::zero(reference)});
  out.write("errors.csv", errors_csv(errors));
  nlohmann::json rows = nlohmann::json::array();
  {
    CsvTable table({"s1", "regime", "predicted_exponent", "fitted_slope", "residual"});
    for (const SlopeRow& s : errors.slopes) {
      table.row({cell(s.s1), to_string(s.prediction.regime), cell(s.prediction.predicted_exponent),
                 cell(s.fit.slope), cell(s.fit.residual)});
      nlohmann::json row = exponents_json(s.prediction);
      row["fitted_slope"] = number(s.fit.slope);
      row["fit_residual"] = number(s.fit.residual);
      if (s.prediction.regime != Regime::out_of_range)
        row["meets_prediction"] = s.fit.slope >= s.prediction.predicted_exponent - kRateSlack;
      rows.push_back(row);
    }
    out.write("slopes.csv", table.str());
  }
  out.write("errors.svg", errors_svg(errors, "noise-free (bias) error"));

  nlohmann::json meta;
  meta["config"] = to_json(config);
  meta["operator"] = {{"name", op.name()}, {"smoothing_order", op.smoothing_order()}};
  meta["noise"] = "none (bias-only sweep)";
  meta["slope_tolerance"] = kRateSlack;
  meta["slopes"] = rows;
  if (!errors.slopes.empty()) meta["convergence_range"] = range_note(errors.slopes.front().prediction);
  return out.finish(std::move(meta));
}

RunResult run_noise_probe(const ExperimentConfig& config) {
  const ProbeSpec& spec = require(config.probe, "probe");
  Writer out(config.output_dir);
  const ProbeResult probe =
      regularity_probe({spec.dimension, spec.s_values, spec.bandlimits, spec.seeds, spec.threshold, spec.rule});
  {
    CsvTable table({"s", "bandlimit", "seed_or_expected", "partial_energy", "growth_ratio", "classification"});
    for (const ProbeRow& row : probe.rows)
      table.row({cell(row.s), cell(row.bandlimit), row.seed ? std::to_string(*row.seed) : "expected",
                 cell(row.partial_energy), cell(row.growth_ratio), to_string(row.classification)});
    out.write("probe.csv", table.str());
  }
  {
    CsvTable table({"s", "final_growth_ratio", "classification"});
    for (const ProbeSummary& row : probe.summary)
      table.row({cell(row.s), cell(row.final_growth_ratio), to_string(row.classification)});
    out.write("summary.csv", table.str());
  }
  PlotSpec plot{"expected partial energy of white noise", "bandlimit M", "E ||W_M||^2 in H^s", true, true, {}};
  for (double s : spec.s_values) {
    PlotSeries series{"s = " + format_double(s), {}, {}};
    for (const ProbeRow& row : probe.rows)
      if (row.s == s && !row.seed) {
        series.x.push_back(row.bandlimit);
        series.y.push_back(row.partial_energy);
      }
    plot.series.push_back(std::move(series));
  }
  out.write("probe.svg", render_svg(plot));

  nlohmann::json meta;
  meta["config"] = to_json(config);
  meta["classification_source"] = "expected trajectory";
  meta["summary"] = nlohmann::json::array();
  for (const ProbeSummary& row : probe.summary)
    meta["summary"].push_back({{"s", row.s},
                               {"final_growth_ratio", number(row.final_growth_ratio)},
                               {"classification", to_string(row.classification)}});
  return out.finish(std::move(meta));
}

RunResult run_gamma(const ExperimentConfig& config) {
  const GammaSpec& spec = require(config.gamma, "gamma");
  const RegularizationSchedule& schedule = require(config.schedule, "schedule");
  const MultiplierOperator op = require(config.op, "operator").build();
  Writer out(config.output_dir);

  const FrequencyLattice reference(1, spec.reference_bandlimit);
  const SpectralField truth = require(config.truth, "truth").build(reference);
  const NoiseRealization noise = sample_white_noise(reference, spec.seed);
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  for (int m : spec.bandlimits) {
    const auto n = static_cast<std::size_t>(2 * m + 1);
    sizes.emplace_back(n, n);
  }
  const auto tests = gaussian_bump_test_functions(reference, spec.test_functions, spec.test_width);
  const GammaSweepResult result = gamma_sweep(op, truth, noise, spec.delta, schedule, sizes, tests);
  {
    CsvTable table({"n", "k", "alpha", "test_function_id", "pairing_gap", "functional_gap", "c_k"});
    for (const GammaRow& row : result.rows)
      table.row({cell(row.n), cell(row.k), cell(row.alpha), cell(row.test_function_id), cell(row.pairing_gap),
                 cell(row.functional_gap), cell(row.c_k)});
    out.write("gamma.csv", table.str());
  }
  {
    CsvTable table({"n", "k", "discrete_functional", "minimizer_norm", "ball_radius"});
    for (const GammaSizeSummary& row : result.sizes)
      table.row({cell(row.n), cell(row.k), cell(row.discrete_functional), cell(row.minimizer_norm),
                 cell(row.ball_radius)});
    out.write("gamma_ball.csv", table.str());
  }
  PlotSpec plot{"pairing gap against the continuum minimizer", "n = k", "|<T_nk(m) - T(m), phi_j>|", true, true, {}};
  for (int j = 0; j < spec.test_functions; ++j) {
    PlotSeries series{"phi_" + std::to_string(j), {}, {}};
    for (const GammaRow& row : result.rows)
      if (row.test_function_id == static_cast<std::size_t>(j)) {
        series.x.push_back(static_cast<double>(row.n));
        series.y.push_back(std::abs(row.pairing_gap));
      }
    plot.series.push_back(std::move(series));
  }
  out.write("gamma.svg", render_svg(plot));

  nlohmann::json meta;
  meta["config"] = to_json(config);
  meta["operator"] = {{"name", op.name()}, {"smoothing_order", op.smoothing_order()}};
  meta["alpha"] = result.alpha;
  meta["continuum_functional"] = result.continuum_functional;
  meta["penalty"] = "spectral, L^T L = diag (1+l^2)^r in the real trigonometric basis";
  meta["test_functions"] = "phi_j(l) = (g(l-j) + g(l+j))/2, g(x) = exp(-x^2/(2 width^2))";
  return out.finish(std::move(meta));
}

RunResult run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::deblur:
      return run_deblur(config);
    case ExperimentKind::rates:
      return run_rates(config);
    case ExperimentKind::noise_probe:
      return run_noise_probe(config);
    case ExperimentKind::gamma:
      return run_gamma(config);
  }
  throw ConfigError("experiment.kind: unsupported experiment");
}

}  // namespace tikhonov::experiment
