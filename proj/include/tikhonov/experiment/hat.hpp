#pragma once

#include "tikhonov/spectral_field.hpp"

namespace tikhonov::experiment {

// The piecewise-linear test signal on the unit torus: 0 outside (0.3, 0.7),
// ramps 10x−3 and −10x+7, plateau 1 on [0.4, 0.6]. Periodic in x.
double hat_value(double x);

// Exact Fourier coefficients: ĉ(0) = 0.3 and, for ℓ ≠ 0,
// ĉ(ℓ) = 10 (e(0.4) + e(0.6) − e(0.3) − e(0.7)) / (4π²ℓ²), e(x) = exp(−2πiℓx).
// Throws DimensionError unless the lattice is one-dimensional.
SpectralField hat_coefficients(const FrequencyLattice& lattice);

// ∫₀¹ u² = 4/15.
inline constexpr double kHatL2NormSq = 4.0 / 15.0;

}  // namespace tikhonov::experiment
