#include "tikhonov/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "tikhonov/errors.hpp"

namespace tikhonov {

std::size_t lattice_size(int dimension, int bandlimit) {
  const auto side = static_cast<std::size_t>(2 * bandlimit + 1);
  return dimension == 1 ? side : side * side;
}

FrequencyLattice::FrequencyLattice(int dimension, int bandlimit)
    : dimension_(dimension), bandlimit_(bandlimit), size_(0) {
  if (dimension != 1 && dimension != 2)
    throw DimensionError("lattice dimension must be 1 or 2, got " + std::to_string(dimension));
  if (bandlimit < 0)
    throw RangeError("lattice bandlimit must be nonnegative, got " + std::to_string(bandlimit));
  size_ = lattice_size(dimension, bandlimit);
}

Mode FrequencyLattice::mode(std::size_t index) const noexcept {
  const int m = bandlimit_;
  if (dimension_ == 1) return {static_cast<int>(index) - m, 0};
  const std::size_t s = side();
  return {static_cast<int>(index / s) - m, static_cast<int>(index % s) - m};
}

bool FrequencyLattice::contains(const Mode& mode) const noexcept {
  if (std::abs(mode[0]) > bandlimit_) return false;
  if (dimension_ == 1) return mode[1] == 0;
  return std::abs(mode[1]) <= bandlimit_;
}

std::size_t FrequencyLattice::index_of(const Mode& mode) const {
  if (!contains(mode))
    throw RangeError("mode (" + std::to_string(mode[0]) + "," + std::to_string(mode[1]) +
                     ") is outside the lattice with bandlimit " + std::to_string(bandlimit_));
  const auto i0 = static_cast<std::size_t>(mode[0] + bandlimit_);
  if (dimension_ == 1) return i0;
  return i0 * side() + static_cast<std::size_t>(mode[1] + bandlimit_);
}

double FrequencyLattice::norm_sq(std::size_t index) const noexcept {
  const Mode l = mode(index);
  return static_cast<double>(l[0]) * l[0] + static_cast<double>(l[1]) * l[1];
}

int FrequencyLattice::shell(std::size_t index) const noexcept {
  const Mode l = mode(index);
  return std::max(std::abs(l[0]), std::abs(l[1]));
}

std::vector<std::size_t> nested_representatives(const FrequencyLattice& lattice) {
  std::vector<std::size_t> reps;
  reps.reserve(lattice.size() / 2 + 1);
  for (std::size_t i = lattice.center(); i < lattice.size(); ++i) reps.push_back(i);
  // Lexicographic order is preserved inside a shell by the stable sort.
  std::stable_sort(reps.begin() + 1, reps.end(), [&](std::size_t a, std::size_t b) {
    return lattice.shell(a) < lattice.shell(b);
  });
  return reps;
}

}  // namespace tikhonov
