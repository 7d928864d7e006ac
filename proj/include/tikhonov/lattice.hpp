#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace tikhonov {

// Integer frequency ℓ ∈ ℤ^d. For d = 1 the second component is always 0.
using Mode = std::array<int, 2>;

// Truncated frequency lattice {ℓ ∈ ℤ^d : max_i |ℓ_i| ≤ M} on the unit-period
// torus, d ∈ {1, 2}.
//
// Modes are enumerated lexicographically with ℓ_i = −M..M per axis (first
// axis outermost). With this order the mirror −ℓ of the mode at index i sits
// at index size() − 1 − i, and the zero mode is the centre index.
class FrequencyLattice {
 public:
  FrequencyLattice(int dimension, int bandlimit);

  int dimension() const noexcept { return dimension_; }
  int bandlimit() const noexcept { return bandlimit_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t side() const noexcept { return static_cast<std::size_t>(2 * bandlimit_ + 1); }
  std::size_t center() const noexcept { return size_ / 2; }

  Mode mode(std::size_t index) const noexcept;
  bool contains(const Mode& mode) const noexcept;
  // Throws RangeError for modes outside the lattice.
  std::size_t index_of(const Mode& mode) const;

  std::size_t mirror(std::size_t index) const noexcept { return size_ - 1 - index; }
  // |ℓ|² (Euclidean).
  double norm_sq(std::size_t index) const noexcept;
  // 1 + |ℓ|², the symbol of I − Δ in integer-mode units.
  double weight(std::size_t index) const noexcept { return 1.0 + norm_sq(index); }
  // max_i |ℓ_i|: the smallest bandlimit whose lattice contains the mode.
  int shell(std::size_t index) const noexcept;

  friend bool operator==(const FrequencyLattice&, const FrequencyLattice&) = default;

 private:
  int dimension_;
  int bandlimit_;
  std::size_t size_;
};

// One representative per conjugate pair {ℓ, −ℓ}: the zero mode first, then
// the lexicographically positive member of each pair, ordered by shell and
// lexicographically inside a shell. For M' < M the list of the M'-lattice is
// a prefix (as modes) of the list of the M-lattice, which is what lets noise
// draws and the real trigonometric basis nest under refinement.
std::vector<std::size_t> nested_representatives(const FrequencyLattice& lattice);

// Number of modes of the d-dimensional lattice with bandlimit M, (2M+1)^d.
std::size_t lattice_size(int dimension, int bandlimit);

}  // namespace tikhonov
