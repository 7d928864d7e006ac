#include "tikhonov/experiment/hat.hpp"

#include <cmath>
#include <numbers>

#include "tikhonov/errors.hpp"

namespace tikhonov::experiment {

namespace {

// exp(−2πi ℓ x) with the phase ℓx reduced mod 1 before scaling by 2π.
Complex phase(long ell, double x) {
  const double turns = std::remainder(static_cast<double>(ell) * x, 1.0);
  const double angle = 2.0 * std::numbers::pi * turns;
  return {std::cos(angle), -std::sin(angle)};
}

}  // namespace

double hat_value(double x) {
  x -= std::floor(x);
  if (x <= 0.3 || x >= 0.7) return 0.0;
  if (x < 0.4) return 10.0 * x - 3.0;
  if (x <= 0.6) return 1.0;
  return -10.0 * x + 7.0;
}

SpectralField hat_coefficients(const FrequencyLattice& lattice) {
  if (lattice.dimension() != 1) throw DimensionError("hat signal is defined on the one-dimensional torus only");
  std::vector<Complex> c(lattice.size());
  const std::size_t centre = lattice.center();
  c[centre] = 0.3;
  const double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  for (int ell = 1; ell <= lattice.bandlimit(); ++ell) {
    const Complex e = phase(ell, 0.4) + phase(ell, 0.6) - phase(ell, 0.3) - phase(ell, 0.7);
    const Complex value = 10.0 * e / (four_pi_sq * ell * ell);
    c[centre + ell] = value;
    c[centre - ell] = std::conj(value);
  }
  return SpectralField(lattice, std::move(c), true);
}

}  // namespace tikhonov::experiment
