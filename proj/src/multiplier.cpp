#include "tikhonov/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tikhonov/errors.hpp"

namespace tikhonov {

namespace {

double mode_norm_sq(const Mode& l) {
  return static_cast<double>(l[0]) * l[0] + static_cast<double>(l[1]) * l[1];
}

Ellipticity sobolev_power_constants(double t) {
  // For |ℓ| ≥ 1: |ℓ|² ≤ 1 + |ℓ|² ≤ 2|ℓ|².
  const double factor = std::pow(2.0, -t / 2.0);
  return t >= 0.0 ? Ellipticity{factor, 1.0, 0.0} : Ellipticity{1.0, factor, 0.0};
}

}  // namespace

MultiplierOperator::MultiplierOperator(Symbol symbol, double smoothing_order, Ellipticity ellipticity,
                                       std::string name, std::optional<int> dimension)
    : symbol_(std::move(symbol)),
      order_(smoothing_order),
      ellipticity_(ellipticity),
      name_(std::move(name)),
      dimension_(dimension) {
  if (!symbol_) throw ParameterError("multiplier symbol must be callable");
  if (!(ellipticity_.c1 > 0.0) || !(ellipticity_.c2 >= ellipticity_.c1) || !(ellipticity_.n0 >= 0.0))
    throw ParameterError("ellipticity constants need 0 < c1 <= c2 and n0 >= 0");
}

MultiplierOperator MultiplierOperator::identity() {
  return MultiplierOperator([](const Mode&) { return Complex{1.0, 0.0}; }, 0.0, {1.0, 1.0, 0.0}, "identity");
}

MultiplierOperator MultiplierOperator::sobolev_power(double p) {
  return MultiplierOperator(
      [p](const Mode& l) { return Complex{std::pow(1.0 + mode_norm_sq(l), p), 0.0}; }, -2.0 * p,
      sobolev_power_constants(-2.0 * p), "sobolev_power(" + std::to_string(p) + ")");
}

MultiplierOperator MultiplierOperator::power_law(double t) {
  MultiplierOperator op = sobolev_power(-t / 2.0);
  op.name_ = "power_law(t=" + std::to_string(t) + ")";
  return op;
}

MultiplierOperator MultiplierOperator::deblur_1d() {
  return MultiplierOperator([](const Mode& l) { return Complex{1.0 / (1.0 + mode_norm_sq(l)), 0.0}; }, 2.0,
                            sobolev_power_constants(2.0), "deblur_1d", 1);
}

std::vector<Complex> MultiplierOperator::symbol_on(const FrequencyLattice& lattice) const {
  check_dimension(lattice);
  std::vector<Complex> values(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) values[i] = symbol_(lattice.mode(i));
  return values;
}

bool MultiplierOperator::injective_on(const FrequencyLattice& lattice) const {
  const auto values = symbol_on(lattice);
  return std::none_of(values.begin(), values.end(), [](Complex a) { return a == Complex{}; });
}

bool MultiplierOperator::ellipticity_holds_on(const FrequencyLattice& lattice) const {
  constexpr double kRelTol = 1e-12;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const double norm = std::sqrt(lattice.norm_sq(i));
    if (!(norm > ellipticity_.n0)) continue;
    const double reference = std::pow(norm, -order_);
    const double magnitude = std::abs(symbol_(lattice.mode(i)));
    if (magnitude < ellipticity_.c1 * reference * (1.0 - kRelTol)) return false;
    if (magnitude > ellipticity_.c2 * reference * (1.0 + kRelTol)) return false;
  }
  return true;
}

bool MultiplierOperator::preserves_real_on(const FrequencyLattice& lattice) const {
  const auto values = symbol_on(lattice);
  for (std::size_t i = 0; i <= lattice.center(); ++i)
    if (values[lattice.mirror(i)] != std::conj(values[i])) return false;
  return true;
}

double MultiplierOperator::frame_constant(const FrequencyLattice& lattice) const {
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lattice.size(); ++i)
    c = std::min(c, std::norm(symbol_(lattice.mode(i))) * std::pow(lattice.weight(i), order_));
  return c;
}

MultiplierOperator MultiplierOperator::compose(const MultiplierOperator& other) const {
  std::optional<int> dim = dimension_ ? dimension_ : other.dimension_;
  if (dimension_ && other.dimension_ && *dimension_ != *other.dimension_)
    throw DimensionError("cannot compose multipliers restricted to different dimensions");
  return MultiplierOperator(
      [a = symbol_, b = other.symbol_](const Mode& l) { return a(l) * b(l); }, order_ + other.order_,
      {ellipticity_.c1 * other.ellipticity_.c1, ellipticity_.c2 * other.ellipticity_.c2,
       std::max(ellipticity_.n0, other.ellipticity_.n0)},
      name_ + "*" + other.name_, dim);
}

void MultiplierOperator::check_dimension(const FrequencyLattice& lattice) const {
  if (dimension_ && *dimension_ != lattice.dimension())
    throw DimensionError("operator " + name_ + " is defined on T^" + std::to_string(*dimension_) +
                         ", field lives on T^" + std::to_string(lattice.dimension()));
}

SpectralField apply_multiplier(const MultiplierOperator& op, const SpectralField& field) {
  const FrequencyLattice& lattice = field.lattice();
  const auto symbol = op.symbol_on(lattice);
  std::vector<Complex> out(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) out[i] = symbol[i] * field[i];
  bool hermitian = field.hermitian();
  if (hermitian)
    for (std::size_t i = 0; i <= lattice.center() && hermitian; ++i)
      hermitian = symbol[lattice.mirror(i)] == std::conj(symbol[i]);
  return SpectralField(lattice, std::move(out), hermitian);
}

}  // namespace tikhonov
