#pragma once

#include <optional>

#include "tikhonov/multiplier.hpp"
#include "tikhonov/noise.hpp"

namespace tikhonov {

// α(δ) = α₀ δ^κ with Sobolev penalty order r.
class RegularizationSchedule {
 public:
  RegularizationSchedule(double alpha0, double kappa, double r);

  double alpha0() const noexcept { return alpha0_; }
  double kappa() const noexcept { return kappa_; }
  double r() const noexcept { return r_; }
  double alpha(double delta) const;

 private:
  double alpha0_;
  double kappa_;
  double r_;
};

// m_δ = A u + δ ε, with the truth and the noise kept for provenance.
struct Measurement {
  SpectralField data;
  double delta;
  std::optional<NoiseRealization> noise;
  std::optional<SpectralField> truth;
};

// T_α(m_δ) = v_δ + w_δ: the filtered truth and the filtered noise.
struct TikhonovSplit {
  SpectralField reconstruction;
  SpectralField bias_part;
  SpectralField noise_part;
};

Measurement forward(const MultiplierOperator& op, const SpectralField& truth, double delta,
                    const NoiseRealization& noise);

// û(ℓ) = conj(a(ℓ)) m̂(ℓ) / (|a(ℓ)|² + α (1+|ℓ|²)^r), the diagonal form of
// (A*A + α(I−Δ)^r)^{-1} A* m.
SpectralField solve(const MultiplierOperator& op, const SpectralField& data, double alpha, double r);

// Per-mode denominators z(ℓ) = |a(ℓ)|² + α(1+|ℓ|²)^r.
std::vector<double> regularized_symbol(const MultiplierOperator& op, const FrequencyLattice& lattice,
                                       double alpha, double r);

TikhonovSplit solve_split(const MultiplierOperator& op, const Measurement& measurement,
                          const RegularizationSchedule& schedule);

// ‖Au‖² − 2 Re⟨m, Au⟩ + α‖u‖²_{H^r}: the functional that stays finite for
// white-noise data.
double tikhonov_functional(const MultiplierOperator& op, const SpectralField& u, const SpectralField& data,
                           double alpha, double r);
// ‖Au − m‖² + α‖u‖²_{H^r}; equals tikhonov_functional + ‖m‖² on a truncated lattice.
double misfit_functional(const MultiplierOperator& op, const SpectralField& u, const SpectralField& data,
                         double alpha, double r);

struct BiasBound {
  double observed;  // ‖α Z^{-1} (I−Δ)^r u‖_{H^ζ}
  double bound;     // c^{-p} α^p ‖u‖_{H^r}, p = (r−ζ)/(2(t+r))
  double delta_exponent;  // κ p
  double frame_constant;  // c = min_ℓ |a|²(1+|ℓ|²)^t on the truth's lattice
};

// Compares the regularization bias u − v_δ in H^ζ with its interpolation
// bound. Requires t > 0 and −r−2t ≤ ζ ≤ r.
BiasBound bias_bound_check(const MultiplierOperator& op, const SpectralField& truth,
                           const RegularizationSchedule& schedule, double delta, double zeta);

}  // namespace tikhonov
