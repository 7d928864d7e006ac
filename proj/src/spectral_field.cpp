#include "tikhonov/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tikhonov/errors.hpp"

namespace tikhonov {

namespace {

constexpr double kHermitianTol = 1e-12;

void require_same_lattice(const SpectralField& a, const SpectralField& b, const char* what) {
  if (!(a.lattice() == b.lattice()))
    throw DimensionError(std::string(what) + ": lattice mismatch (bandlimit " +
                         std::to_string(a.lattice().bandlimit()) + " vs " +
                         std::to_string(b.lattice().bandlimit()) + ", dimension " +
                         std::to_string(a.lattice().dimension()) + " vs " +
                         std::to_string(b.lattice().dimension()) + ")");
}

// exp(2πi q / P) for q = 0..P−1, with entry P−q the exact conjugate of entry q.
std::vector<Complex> twiddles(std::size_t points) {
  std::vector<Complex> table(points);
  for (std::size_t q = 0; q <= points / 2; ++q) {
    table[q] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(points));
    if (q != 0) table[points - q] = std::conj(table[q]);
  }
  return table;
}

std::size_t phase_index(long long l, std::size_t j, std::size_t points) {
  const auto p = static_cast<long long>(points);
  long long q = (l * static_cast<long long>(j)) % p;
  if (q < 0) q += p;
  return static_cast<std::size_t>(q);
}

}  // namespace

bool is_conjugate_symmetric(const FrequencyLattice& lattice, std::span<const Complex> coefficients,
                            double tol) {
  for (std::size_t i = 0; i <= lattice.center(); ++i) {
    const Complex c = coefficients[i];
    const Complex partner = coefficients[lattice.mirror(i)];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || !std::isfinite(partner.real()) ||
        !std::isfinite(partner.imag()))
      continue;
    if (std::abs(partner - std::conj(c)) > tol) return false;
  }
  return true;
}

SpectralField::SpectralField(FrequencyLattice lattice, std::vector<Complex> coefficients, bool hermitian)
    : lattice_(lattice), coefficients_(std::move(coefficients)), hermitian_(hermitian) {
  if (coefficients_.size() != lattice_.size())
    throw DimensionError("coefficient count " + std::to_string(coefficients_.size()) +
                         " does not match lattice size " + std::to_string(lattice_.size()));
  if (hermitian_) {
    double scale = 1.0;
    for (const Complex& c : coefficients_)
      if (std::isfinite(std::abs(c))) scale = std::max(scale, std::abs(c));
    if (!is_conjugate_symmetric(lattice_, coefficients_, kHermitianTol * scale))
      throw InvalidFieldError("hermitian flag set but coefficients are not conjugate-symmetric");
  }
}

SpectralField SpectralField::zero(const FrequencyLattice& lattice) {
  return SpectralField(lattice, std::vector<Complex>(lattice.size()), true);
}

SpectralField SpectralField::single_mode(const FrequencyLattice& lattice, const Mode& mode, Complex value) {
  std::vector<Complex> c(lattice.size());
  const std::size_t index = lattice.index_of(mode);
  c[index] = value;
  const bool real = index == lattice.center() && value.imag() == 0.0;
  return SpectralField(lattice, std::move(c), real || value == Complex{});
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_lattice(*this, other, "field addition");
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] += other.coefficients_[i];
  hermitian_ = hermitian_ && other.hermitian_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_lattice(*this, other, "field subtraction");
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] -= other.coefficients_[i];
  hermitian_ = hermitian_ && other.hermitian_;
  return *this;
}

SpectralField& SpectralField::operator*=(double factor) {
  for (Complex& c : coefficients_) c *= factor;
  return *this;
}

SpectralField SpectralField::scaled(Complex factor) const {
  std::vector<Complex> c(coefficients_);
  for (Complex& v : c) v *= factor;
  return SpectralField(lattice_, std::move(c), hermitian_ && factor.imag() == 0.0);
}

double sobolev_norm_sq(const SpectralField& field, double s) {
  const FrequencyLattice& lattice = field.lattice();
  double sum = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const Complex c = field[i];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvalidFieldError("non-finite coefficient at lattice index " + std::to_string(i));
    const double mag = std::norm(c);
    if (mag == 0.0) continue;
    sum += (s == 0.0 ? 1.0 : std::pow(lattice.weight(i), s)) * mag;
  }
  return sum;
}

double sobolev_norm(const SpectralField& field, double s) { return std::sqrt(sobolev_norm_sq(field, s)); }

Complex inner_product(const SpectralField& f, const SpectralField& g) {
  require_same_lattice(f, g, "inner product");
  Complex sum{};
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * std::conj(g[i]);
  return sum;
}

SpectralField truncate(const SpectralField& field, int new_bandlimit) {
  const FrequencyLattice& from = field.lattice();
  if (new_bandlimit < 0 || new_bandlimit > from.bandlimit())
    throw RangeError("truncation bandlimit " + std::to_string(new_bandlimit) + " outside [0, " +
                     std::to_string(from.bandlimit()) + "]");
  const FrequencyLattice to(from.dimension(), new_bandlimit);
  std::vector<Complex> c(to.size());
  for (std::size_t i = 0; i < to.size(); ++i) c[i] = field[from.index_of(to.mode(i))];
  return SpectralField(to, std::move(c), field.hermitian());
}

SpectralField embed(const SpectralField& field, const FrequencyLattice& target) {
  const FrequencyLattice& from = field.lattice();
  if (target.dimension() != from.dimension())
    throw DimensionError("embed: dimension mismatch");
  if (target.bandlimit() < from.bandlimit())
    throw RangeError("embed: target bandlimit " + std::to_string(target.bandlimit()) +
                     " is smaller than " + std::to_string(from.bandlimit()));
  std::vector<Complex> c(target.size());
  for (std::size_t i = 0; i < from.size(); ++i) c[target.index_of(from.mode(i))] = field[i];
  return SpectralField(target, std::move(c), field.hermitian());
}

std::vector<double> evaluate_on_grid(const SpectralField& field, std::size_t points_per_axis) {
  if (!field.hermitian())
    throw NotRealValuedError("grid evaluation needs a hermitian (real-valued) field");
  if (points_per_axis == 0) throw RangeError("grid evaluation needs at least one point per axis");
  const FrequencyLattice& lattice = field.lattice();
  const std::size_t p = points_per_axis;
  const auto tw = twiddles(p);
  const long long m = lattice.bandlimit();
  const std::size_t side = lattice.side();

  if (lattice.dimension() == 1) {
    std::vector<double> out(p);
    for (std::size_t j = 0; j < p; ++j) {
      Complex sum{};
      for (std::size_t i = 0; i < side; ++i)
        sum += field[i] * tw[phase_index(static_cast<long long>(i) - m, j, p)];
      out[j] = sum.real();
    }
    return out;
  }

  // Sum over the second axis first, then the first.
  std::vector<Complex> partial(side * p);
  for (std::size_t i1 = 0; i1 < side; ++i1)
    for (std::size_t j2 = 0; j2 < p; ++j2) {
      Complex sum{};
      for (std::size_t i2 = 0; i2 < side; ++i2)
        sum += field[i1 * side + i2] * tw[phase_index(static_cast<long long>(i2) - m, j2, p)];
      partial[i1 * p + j2] = sum;
    }
  std::vector<double> out(p * p);
  for (std::size_t j1 = 0; j1 < p; ++j1)
    for (std::size_t j2 = 0; j2 < p; ++j2) {
      Complex sum{};
      for (std::size_t i1 = 0; i1 < side; ++i1)
        sum += partial[i1 * p + j2] * tw[phase_index(static_cast<long long>(i1) - m, j1, p)];
      out[j1 * p + j2] = sum.real();
    }
  return out;
}

SpectralField analyze_grid(std::span<const double> values, std::size_t points_per_axis,
                           const FrequencyLattice& lattice) {
  const std::size_t p = points_per_axis;
  const std::size_t expected = lattice.dimension() == 1 ? p : p * p;
  if (values.size() != expected)
    throw DimensionError("grid has " + std::to_string(values.size()) + " samples, expected " +
                         std::to_string(expected));
  if (p < lattice.side())
    throw RangeError("grid with " + std::to_string(p) + " points per axis aliases bandlimit " +
                     std::to_string(lattice.bandlimit()));
  const auto tw = twiddles(p);
  const long long m = lattice.bandlimit();
  const std::size_t side = lattice.side();
  std::vector<Complex> c(lattice.size());

  if (lattice.dimension() == 1) {
    for (std::size_t i = 0; i < side; ++i) {
      Complex sum{};
      for (std::size_t j = 0; j < p; ++j) sum += values[j] * tw[phase_index(m - static_cast<long long>(i), j, p)];
      c[i] = sum / static_cast<double>(p);
    }
    return SpectralField(lattice, std::move(c), true);
  }

  std::vector<Complex> partial(p * side);
  for (std::size_t j1 = 0; j1 < p; ++j1)
    for (std::size_t i2 = 0; i2 < side; ++i2) {
      Complex sum{};
      for (std::size_t j2 = 0; j2 < p; ++j2)
        sum += values[j1 * p + j2] * tw[phase_index(m - static_cast<long long>(i2), j2, p)];
      partial[j1 * side + i2] = sum;
    }
  const double norm = static_cast<double>(p) * static_cast<double>(p);
  for (std::size_t i1 = 0; i1 < side; ++i1)
    for (std::size_t i2 = 0; i2 < side; ++i2) {
      Complex sum{};
      for (std::size_t j1 = 0; j1 < p; ++j1)
        sum += partial[j1 * side + i2] * tw[phase_index(m - static_cast<long long>(i1), j1, p)];
      c[i1 * side + i2] = sum / norm;
    }
  return SpectralField(lattice, std::move(c), true);
}

}  // namespace tikhonov
