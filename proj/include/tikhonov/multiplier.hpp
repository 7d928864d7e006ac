#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tikhonov/spectral_field.hpp"

namespace tikhonov {

// c1 |ℓ|^{−t} ≤ |a(ℓ)| ≤ c2 |ℓ|^{−t} for |ℓ| > n0.
struct Ellipticity {
  double c1 = 1.0;
  double c2 = 1.0;
  double n0 = 0.0;
};

// Translation-invariant operator acting diagonally on Fourier coefficients,
// (Au)^(ℓ) = a(ℓ) û(ℓ), of order −t.
class MultiplierOperator {
 public:
  using Symbol = std::function<Complex(const Mode&)>;

  MultiplierOperator(Symbol symbol, double smoothing_order, Ellipticity ellipticity, std::string name,
                     std::optional<int> dimension = std::nullopt);

  static MultiplierOperator identity();
  // (1 + |ℓ|²)^p, i.e. (I − Δ)^p; order −t with t = −2p.
  static MultiplierOperator sobolev_power(double p);
  // (1 + |ℓ|²)^{−t/2}.
  static MultiplierOperator power_law(double t);
  // The one-dimensional blur (1 + |ℓ|²)^{−1} (t = 2).
  static MultiplierOperator deblur_1d();

  Complex symbol(const Mode& mode) const { return symbol_(mode); }
  std::vector<Complex> symbol_on(const FrequencyLattice& lattice) const;

  // t, where the operator has order −t.
  double smoothing_order() const noexcept { return order_; }
  const Ellipticity& ellipticity() const noexcept { return ellipticity_; }
  const std::string& name() const noexcept { return name_; }
  std::optional<int> dimension() const noexcept { return dimension_; }

  // a(ℓ) ≠ 0 on every lattice mode.
  bool injective_on(const FrequencyLattice& lattice) const;
  // The stored constants bound |a(ℓ)| on every lattice mode with |ℓ| > n0,
  // to relative tolerance 1e-12.
  bool ellipticity_holds_on(const FrequencyLattice& lattice) const;
  // a(−ℓ) = conj(a(ℓ)) exactly on the lattice, so real fields map to real fields.
  bool preserves_real_on(const FrequencyLattice& lattice) const;
  // min_ℓ |a(ℓ)|² (1+|ℓ|²)^t over the lattice: the largest c with
  // A*A ≥ c (I − Δ)^{−t} on the truncated space.
  double frame_constant(const FrequencyLattice& lattice) const;

  // Product symbol a(ℓ) b(ℓ) of order −(t_a + t_b).
  MultiplierOperator compose(const MultiplierOperator& other) const;

  // Throws DimensionError if the operator is restricted to another dimension.
  void check_dimension(const FrequencyLattice& lattice) const;

 private:
  Symbol symbol_;
  double order_;
  Ellipticity ellipticity_;
  std::string name_;
  std::optional<int> dimension_;
};

// Per-mode product a(ℓ) ĉ(ℓ). The hermitian flag survives when the symbol
// preserves real functions on the field's lattice.
SpectralField apply_multiplier(const MultiplierOperator& op, const SpectralField& field);

}  // namespace tikhonov
