#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tikhonov/lattice.hpp"

namespace tikhonov {

using Complex = std::complex<double>;

// Fourier coefficients ĉ(ℓ) of a function on the unit-period torus, with basis
// e_ℓ(x) = exp(2πi ℓ·x), stored densely in the lattice enumeration order.
//
// The hermitian flag asserts ĉ(−ℓ) = conj(ĉ(ℓ)), i.e. the represented
// function is real-valued. It is verified on construction (finite entries
// only, absolute tolerance 1e-12 scaled by the largest coefficient).
class SpectralField {
 public:
  SpectralField(FrequencyLattice lattice, std::vector<Complex> coefficients, bool hermitian);

  static SpectralField zero(const FrequencyLattice& lattice);
  // Field with a single nonzero coefficient. Hermitian only for ℓ = 0 with a
  // real value.
  static SpectralField single_mode(const FrequencyLattice& lattice, const Mode& mode, Complex value);

  const FrequencyLattice& lattice() const noexcept { return lattice_; }
  std::span<const Complex> coefficients() const noexcept { return coefficients_; }
  std::size_t size() const noexcept { return coefficients_.size(); }
  Complex operator[](std::size_t index) const noexcept { return coefficients_[index]; }
  Complex at(const Mode& mode) const { return coefficients_[lattice_.index_of(mode)]; }
  bool hermitian() const noexcept { return hermitian_; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double factor);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double factor, SpectralField a) { return a *= factor; }

  // Multiplication by a complex scalar; keeps the hermitian flag only when
  // the scalar is real.
  SpectralField scaled(Complex factor) const;

 private:
  FrequencyLattice lattice_;
  std::vector<Complex> coefficients_;
  bool hermitian_;
};

// True when every pair satisfies |ĉ(−ℓ) − conj ĉ(ℓ)| ≤ tol and ĉ(0) is real to tol.
bool is_conjugate_symmetric(const FrequencyLattice& lattice, std::span<const Complex> coefficients,
                            double tol);

// (Σ_ℓ (1+|ℓ|²)^s |ĉ(ℓ)|²)^{1/2}, summed in lattice order. Throws
// InvalidFieldError on non-finite coefficients.
double sobolev_norm(const SpectralField& field, double s);
double sobolev_norm_sq(const SpectralField& field, double s);

// L² pairing ⟨f, g⟩ = Σ_ℓ f̂(ℓ) conj(ĝ(ℓ)). Requires identical lattices.
Complex inner_product(const SpectralField& f, const SpectralField& g);

// The projector P_k: keep modes with max_i |ℓ_i| ≤ new_bandlimit.
// Throws RangeError when new_bandlimit exceeds the field's bandlimit.
SpectralField truncate(const SpectralField& field, int new_bandlimit);

// Zero-padding into a lattice of the same dimension and larger bandlimit.
SpectralField embed(const SpectralField& field, const FrequencyLattice& target);

// Real samples f(j/P) on the uniform grid with P points per axis. The result
// is row-major with the first axis outermost (length P^d). Throws
// NotRealValuedError unless the field is hermitian.
std::vector<double> evaluate_on_grid(const SpectralField& field, std::size_t points_per_axis);

// Inverse of evaluate_on_grid: ĉ(ℓ) = P^{-d} Σ_j f(x_j) exp(−2πi ℓ·x_j) for
// the modes of `lattice`. Requires P ≥ 2M+1 so that no mode aliases.
SpectralField analyze_grid(std::span<const double> values, std::size_t points_per_axis,
                           const FrequencyLattice& lattice);

}  // namespace tikhonov
