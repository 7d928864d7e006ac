#include "tikhonov/tikhonov_solver.hpp"

#include <cmath>
#include <string>

#include "tikhonov/errors.hpp"

namespace tikhonov {

namespace {

void require_lattice(const SpectralField& a, const SpectralField& b, const char* what) {
  if (!(a.lattice() == b.lattice())) throw DimensionError(std::string(what) + ": lattice mismatch");
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ParameterError("regularization parameter alpha must be positive and finite, got " + std::to_string(alpha));
}

}  // namespace

RegularizationSchedule::RegularizationSchedule(double alpha0, double kappa, double r)
    : alpha0_(alpha0), kappa_(kappa), r_(r) {
  if (!(alpha0 > 0.0)) throw ParameterError("schedule alpha0 must be positive");
  if (!(kappa > 0.0)) throw ParameterError("schedule kappa must be positive");
  if (!(r >= 0.0)) throw ParameterError("schedule penalty order r must be nonnegative");
}

double RegularizationSchedule::alpha(double delta) const {
  if (!(delta > 0.0)) throw ParameterError("noise level delta must be positive");
  return alpha0_ * std::pow(delta, kappa_);
}

Measurement forward(const MultiplierOperator& op, const SpectralField& truth, double delta,
                    const NoiseRealization& noise) {
  if (!(delta > 0.0)) throw ParameterError("noise level delta must be positive");
  require_lattice(truth, noise.field, "forward");
  SpectralField data = apply_multiplier(op, truth) + delta * SpectralField(noise.field);
  return {std::move(data), delta, noise, truth};
}

std::vector<double> regularized_symbol(const MultiplierOperator& op, const FrequencyLattice& lattice,
                                       double alpha, double r) {
  require_alpha(alpha);
  const auto a = op.symbol_on(lattice);
  std::vector<double> z(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i)
    z[i] = std::norm(a[i]) + alpha * (r == 0.0 ? 1.0 : std::pow(lattice.weight(i), r));
  return z;
}

SpectralField solve(const MultiplierOperator& op, const SpectralField& data, double alpha, double r) {
  const FrequencyLattice& lattice = data.lattice();
  const auto z = regularized_symbol(op, lattice, alpha, r);
  const auto a = op.symbol_on(lattice);
  std::vector<Complex> u(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) u[i] = std::conj(a[i]) * data[i] / z[i];
  return SpectralField(lattice, std::move(u), data.hermitian() && op.preserves_real_on(lattice));
}

TikhonovSplit solve_split(const MultiplierOperator& op, const Measurement& measurement,
                          const RegularizationSchedule& schedule) {
  if (!measurement.truth) throw ProvenanceError("solve_split needs the measurement's truth");
  if (!measurement.noise) throw ProvenanceError("solve_split needs the measurement's noise realization");
  const SpectralField& truth = *measurement.truth;
  const SpectralField& noise = measurement.noise->field;
  require_lattice(truth, noise, "solve_split");
  require_lattice(truth, measurement.data, "solve_split");

  const FrequencyLattice& lattice = truth.lattice();
  const double delta = measurement.delta;
  const auto z = regularized_symbol(op, lattice, schedule.alpha(delta), schedule.r());
  const auto a = op.symbol_on(lattice);
  std::vector<Complex> bias(lattice.size());
  std::vector<Complex> filtered_noise(lattice.size());
  std::vector<Complex> total(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    bias[i] = std::norm(a[i]) * truth[i] / z[i];
    filtered_noise[i] = std::conj(a[i]) * noise[i] * delta / z[i];
    total[i] = bias[i] + filtered_noise[i];
  }
  const bool real = op.preserves_real_on(lattice);
  return {SpectralField(lattice, std::move(total), real && truth.hermitian() && noise.hermitian()),
          SpectralField(lattice, std::move(bias), real && truth.hermitian()),
          SpectralField(lattice, std::move(filtered_noise), real && noise.hermitian())};
}

double tikhonov_functional(const MultiplierOperator& op, const SpectralField& u, const SpectralField& data,
                           double alpha, double r) {
  require_lattice(u, data, "tikhonov_functional");
  const SpectralField au = apply_multiplier(op, u);
  return sobolev_norm_sq(au, 0.0) - 2.0 * inner_product(data, au).real() + alpha * sobolev_norm_sq(u, r);
}

double misfit_functional(const MultiplierOperator& op, const SpectralField& u, const SpectralField& data,
                         double alpha, double r) {
  require_lattice(u, data, "misfit_functional");
  return sobolev_norm_sq(apply_multiplier(op, u) - data, 0.0) + alpha * sobolev_norm_sq(u, r);
}

BiasBound bias_bound_check(const MultiplierOperator& op, const SpectralField& truth,
                           const RegularizationSchedule& schedule, double delta, double zeta) {
  const double t = op.smoothing_order();
  const double r = schedule.r();
  if (!(t > 0.0)) throw ParameterError("bias bound needs a smoothing operator (t > 0)");
  if (zeta > r || zeta < -r - 2.0 * t)
    throw ParameterError("bias bound needs -r-2t <= zeta <= r, got zeta=" + std::to_string(zeta));

  const FrequencyLattice& lattice = truth.lattice();
  const double alpha = schedule.alpha(delta);
  const auto z = regularized_symbol(op, lattice, alpha, r);
  double observed_sq = 0.0;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const double w = lattice.weight(i);
    const double penalty = alpha * (r == 0.0 ? 1.0 : std::pow(w, r));
    observed_sq += std::pow(w, zeta) * std::norm(penalty * truth[i] / z[i]);
  }
  const double p = (r - zeta) / (2.0 * (t + r));
  const double c = op.frame_constant(lattice);
  return {std::sqrt(observed_sq), std::pow(c, -p) * std::pow(alpha, p) * sobolev_norm(truth, r),
          schedule.kappa() * p, c};
}

}  // namespace tikhonov
