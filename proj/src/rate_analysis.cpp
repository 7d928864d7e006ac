#include "tikhonov/rate_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tikhonov/errors.hpp"

namespace tikhonov {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_decreasing_grid(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw ParameterError(std::string(what) + ": delta grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw ParameterError(std::string(what) + ": deltas must be positive");
    if (i > 0 && !(grid[i] < grid[i - 1]))
      throw ParameterError(std::string(what) + ": delta grid must be strictly decreasing");
  }
}

}  // namespace

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::case_i:
      return "case_i";
    case Regime::case_ii:
      return "case_ii";
    case Regime::out_of_range:
      return "out_of_range";
  }
  return "unknown";
}

RateExponents predicted_exponent(double t, double r, double kappa, double s, double s1) {
  if (!(t > std::max(0.0, -s - r)))
    throw ParameterError("rate estimate needs t > max{0, -s-r} (operator order against noise regularity)");
  if (!(r >= 0.0)) throw ParameterError("rate estimate needs penalty order r >= 0");
  if (!(kappa > 0.0)) throw ParameterError("rate estimate needs kappa > 0 in alpha = alpha0 delta^kappa");

  RateExponents e{};
  e.t = t;
  e.r = r;
  e.kappa = kappa;
  e.s = s;
  e.s1 = s1;
  e.zeta = std::max(s1, -r - 2.0 * t);
  e.eta = t / (2.0 * r + 2.0 * t);
  e.gamma = r / (2.0 * r + 2.0 * t);
  e.upper_s1 = s - t + 2.0 * (t + r) / kappa;
  e.alt_upper_s1 = s - t + (t + r) / kappa;
  e.bias_exponent = kappa * (r - e.zeta) / (2.0 * (t + r));

  if (s1 <= s - t) {
    e.regime = Regime::case_i;
    e.noise_exponent = 1.0;
  } else if (s1 < e.upper_s1) {
    e.regime = Regime::case_ii;
    e.noise_exponent = 1.0 + kappa * (s - t - s1) / (2.0 * (t + r));
  } else {
    e.regime = Regime::out_of_range;
    e.noise_exponent = kNaN;
    e.predicted_exponent = kNaN;
    return e;
  }
  e.predicted_exponent = std::min(e.bias_exponent, e.noise_exponent);
  return e;
}

double lemma_exponent(double t, double r, double beta) {
  if (!(beta > 0.0 && beta < 0.5)) throw ParameterError("lemma rate needs 0 < beta < 1/2");
  if (!(r > 0.0)) throw ParameterError("lemma rate needs r > 0");
  if (!(t > 0.0)) throw ParameterError("lemma rate needs t > 0");
  return std::min(r / (t + r), 1.0 - 2.0 * beta);
}

double lemma_s1_bound(double t, double r, double beta, double s) {
  lemma_exponent(t, r, beta);
  return s - (1.0 - 2.0 * beta) * t + 2.0 * r * beta;
}

LogLogFit fit_loglog_slope(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw ParameterError("log-log fit needs at least 3 samples");
  const auto n = static_cast<double>(samples.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [delta, error] : samples) {
    if (!(delta > 0.0) || !(error > 0.0))
      throw DomainError("log-log fit needs positive samples, got (" + std::to_string(delta) + ", " +
                        std::to_string(error) + ")");
    mx += std::log(delta);
    my += std::log(error);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [delta, error] : samples) {
    const double dx = std::log(delta) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(error) - my);
  }
  if (sxx == 0.0) throw DomainError("log-log fit needs at least two distinct deltas");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (const auto& [delta, error] : samples) {
    const double res = std::log(error) - (intercept + slope * std::log(delta));
    ss += res * res;
  }
  return {slope, intercept, std::sqrt(ss / n)};
}

double median(std::vector<double> values) {
  std::erase_if(values, [](double v) { return std::isnan(v); });
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

ErrorSweepResult error_sweep(const MultiplierOperator& op, const SpectralField& truth,
                             const RegularizationSchedule& schedule, const ErrorSweepSettings& settings,
                             const std::vector<NoiseRealization>& noises) {
  require_decreasing_grid(settings.delta_grid, "error sweep");
  if (settings.s1_list.empty()) throw ParameterError("error sweep: s1 list is empty");
  if (noises.empty()) throw ParameterError("error sweep: no noise realizations");
  const FrequencyLattice& reference = truth.lattice();
  if (settings.reconstruction_bandlimit < 0 || settings.reconstruction_bandlimit > reference.bandlimit())
    throw RangeError("error sweep: reconstruction bandlimit exceeds the reference bandlimit");
  if (!std::isfinite(sobolev_norm(truth, schedule.r())))
    throw InvalidFieldError("error sweep: truth has no finite H^r norm");
  for (const NoiseRealization& noise : noises)
    if (!(noise.lattice() == reference)) throw DimensionError("error sweep: noise lattice differs from truth lattice");

  const std::size_t n_s1 = settings.s1_list.size();
  const std::size_t n_delta = settings.delta_grid.size();
  // raw[noise][delta][s1]
  std::vector<double> raw(noises.size() * n_delta * n_s1);
  auto at = [&](std::size_t q, std::size_t d, std::size_t j) -> double& { return raw[(q * n_delta + d) * n_s1 + j]; };

  for (std::size_t q = 0; q < noises.size(); ++q)
    for (std::size_t d = 0; d < n_delta; ++d) {
      const double delta = settings.delta_grid[d];
      const Measurement m = forward(op, truth, delta, noises[q]);
      const SpectralField observed = truncate(m.data, settings.reconstruction_bandlimit);
      const SpectralField reconstruction = solve(op, observed, schedule.alpha(delta), schedule.r());
      const SpectralField error = embed(reconstruction, reference) - truth;
      for (std::size_t j = 0; j < n_s1; ++j) at(q, d, j) = sobolev_norm(error, settings.s1_list[j]);
    }

  ErrorSweepResult result;
  for (std::size_t j = 0; j < n_s1; ++j) {
    const double s1 = settings.s1_list[j];
    std::vector<std::vector<double>> normalized(n_delta);
    std::vector<std::vector<double>> raws(n_delta);
    for (std::size_t q = 0; q < noises.size(); ++q) {
      const double scale = at(q, 0, j);
      for (std::size_t d = 0; d < n_delta; ++d) {
        const double value = at(q, d, j);
        const double norm = scale > 0.0 ? value / scale : kNaN;
        result.rows.push_back({s1, settings.delta_grid[d], noises[q].seed, value, norm});
        normalized[d].push_back(norm);
        raws[d].push_back(value);
      }
    }
    std::vector<std::pair<double, double>> curve;
    bool fittable = n_delta >= 3;
    for (std::size_t d = 0; d < n_delta; ++d) {
      const double med = median(normalized[d]);
      result.medians.push_back({s1, settings.delta_grid[d], med, median(raws[d])});
      curve.emplace_back(settings.delta_grid[d], med);
      fittable = fittable && med > 0.0;
    }
    const LogLogFit fit = fittable ? fit_loglog_slope(curve) : LogLogFit{kNaN, kNaN, kNaN};
    result.slopes.push_back({s1, fit,
                             predicted_exponent(op.smoothing_order(), schedule.r(), schedule.kappa(),
                                                settings.noise_regularity, s1)});
  }
  return result;
}

ModeBand mode_band(const MultiplierOperator& op, const FrequencyLattice& lattice, double c0, double c1, double delta) {
  ModeBand band{c0, c1, delta, {}};
  const auto a = op.symbol_on(lattice);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const double scale = delta * delta * lattice.weight(i);
    const double mag = std::norm(a[i]);
    if (c0 * scale <= mag && mag <= c1 * scale) band.members.push_back(i);
  }
  return band;
}

BandCalibration calibrate_band(const MultiplierOperator& op, const FrequencyLattice& lattice,
                               std::span<const double> delta_grid) {
  if (delta_grid.empty()) throw ParameterError("band calibration: delta grid is empty");
  const double largest = *std::max_element(delta_grid.begin(), delta_grid.end());
  const auto a = op.symbol_on(lattice);
  auto ratio = [&](std::size_t i, double delta) { return std::norm(a[i]) / (delta * delta * lattice.weight(i)); };

  double centre = kNaN;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const double rho = ratio(i, largest);
    if (!(rho > 0.0)) continue;
    const double distance = std::abs(std::log(rho));
    if (distance < best) {
      best = distance;
      centre = rho;
    }
  }
  if (std::isnan(centre)) throw CalibrationError("band calibration: symbol vanishes on the whole lattice");

  BandCalibration cal{0.5 * centre, 2.0 * centre, 0};
  constexpr int kMaxWidenings = 60;
  for (; cal.widenings <= kMaxWidenings; ++cal.widenings) {
    const bool all_nonempty = std::all_of(delta_grid.begin(), delta_grid.end(), [&](double delta) {
      return !mode_band(op, lattice, cal.c0, cal.c1, delta).members.empty();
    });
    if (all_nonempty) return cal;
    cal.c0 *= 0.5;
    cal.c1 *= 2.0;
  }
  for (double delta : delta_grid) {
    if (!mode_band(op, lattice, cal.c0, cal.c1, delta).members.empty()) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      lo = std::min(lo, ratio(i, delta));
      hi = std::max(hi, ratio(i, delta));
    }
    throw CalibrationError("band I(delta) is empty at delta=" + std::to_string(delta) +
                           "; |a|^2/(delta^2(1+|l|^2)) spans [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] on the lattice, so admissible (c0, c1) must overlap that range");
  }
  throw CalibrationError("band calibration failed");
}

DivergenceReport h1_divergence(const MultiplierOperator& op, const RegularizationSchedule& schedule,
                               std::span<const double> delta_grid, const std::vector<NoiseRealization>& noises) {
  if (schedule.kappa() != 2.0 || schedule.r() != 1.0)
    throw ParameterError("h1 divergence analysis needs kappa = 2 and r = 1");
  if (noises.empty()) throw ParameterError("h1 divergence: no noise realizations");
  require_decreasing_grid(delta_grid, "h1 divergence");
  const FrequencyLattice& lattice = noises.front().lattice();
  for (const NoiseRealization& noise : noises)
    if (!(noise.lattice() == lattice)) throw DimensionError("h1 divergence: noise lattices differ");

  DivergenceReport report{calibrate_band(op, lattice, delta_grid), {}, {}, kNaN, kDivergenceRatioThreshold};
  const double alpha0 = schedule.alpha0();
  const double band_factor = 1.0 / (1.0 + alpha0 / report.calibration.c0) / (report.calibration.c1 + alpha0);
  const auto a = op.symbol_on(lattice);

  std::vector<ModeBand> bands;
  for (double delta : delta_grid)
    bands.push_back(mode_band(op, lattice, report.calibration.c0, report.calibration.c1, delta));

  for (const NoiseRealization& noise : noises) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t d = 0; d < delta_grid.size(); ++d) {
      const double delta = delta_grid[d];
      const auto z = regularized_symbol(op, lattice, schedule.alpha(delta), 1.0);
      double h1 = 0.0;
      for (std::size_t i = 0; i < lattice.size(); ++i)
        h1 += lattice.weight(i) * std::norm(std::conj(a[i]) * noise.field[i] * delta / z[i]);
      double bound = 0.0;
      for (std::size_t i : bands[d].members) bound += band_factor * std::norm(noise.field[i]);
      report.rows.push_back({delta, noise.seed, bands[d].members.size(), bound, h1});
      lo = std::min(lo, h1);
      hi = std::max(hi, h1);
    }
    report.seed_ratios.push_back(hi > 0.0 ? std::sqrt(lo / hi) : kNaN);
  }
  report.median_ratio = median(report.seed_ratios);
  return report;
}

}  // namespace tikhonov
