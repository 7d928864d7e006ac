#include "tikhonov/discrete_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tikhonov/errors.hpp"

namespace tikhonov {

namespace {

int bandlimit_for(int dimension, std::size_t count) {
  int m = 0;
  while (lattice_size(dimension, m) < count) ++m;
  return m;
}

double mode_weight(const Mode& l) {
  return 1.0 + static_cast<double>(l[0]) * l[0] + static_cast<double>(l[1]) * l[1];
}

Mode negate(const Mode& l) { return {-l[0], -l[1]}; }

// Entries of the real-basis matrix of c ↦ s·c on the pair (cos, sin) at
// columns/rows (jc, js), clipped to the matrix shape.
void place_pair_block(Eigen::MatrixXd& m, std::size_t jc, std::size_t js, Complex s) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  auto put = [&](std::size_t i, std::size_t j, double v) {
    if (i < rows && j < cols) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
  };
  put(jc, jc, s.real());
  put(js, jc, -s.imag());
  put(jc, js, s.imag());
  put(js, js, s.real());
}

}  // namespace

const char* to_string(PenaltyChoice::Kind kind) {
  switch (kind) {
    case PenaltyChoice::Kind::identity:
      return "identity";
    case PenaltyChoice::Kind::identity_plus_difference:
      return "identity_plus_difference";
    case PenaltyChoice::Kind::sobolev_spectral:
      return "sobolev_spectral";
  }
  return "unknown";
}

RealTrigBasis::RealTrigBasis(int dimension, std::size_t count)
    : lattice_(dimension, bandlimit_for(dimension, count)), count_(count) {
  if (count == 0) throw ParameterError("real trigonometric basis needs at least one element");
  const auto reps = nested_representatives(lattice_);
  elements_.reserve(count);
  elements_.push_back({lattice_.mode(reps[0]), Part::constant});
  for (std::size_t p = 1; p < reps.size() && elements_.size() < count; ++p) {
    const Mode l = lattice_.mode(reps[p]);
    elements_.push_back({l, Part::cosine});
    if (elements_.size() < count) elements_.push_back({l, Part::sine});
  }
}

Eigen::VectorXd RealTrigBasis::coordinates(const SpectralField& field) const {
  if (!field.hermitian()) throw NotRealValuedError("real basis coordinates need a hermitian field");
  const FrequencyLattice& lattice = field.lattice();
  if (lattice.dimension() != dimension()) throw DimensionError("basis and field dimensions differ");
  if (lattice.bandlimit() < lattice_.bandlimit())
    throw RangeError("field bandlimit " + std::to_string(lattice.bandlimit()) + " does not cover " +
                     std::to_string(count_) + " basis functions");
  Eigen::VectorXd x(static_cast<Eigen::Index>(count_));
  for (std::size_t j = 0; j < count_; ++j) {
    const Complex c = field.at(elements_[j].mode);
    double v = c.real();
    if (elements_[j].part == Part::cosine) v = std::numbers::sqrt2 * c.real();
    if (elements_[j].part == Part::sine) v = -std::numbers::sqrt2 * c.imag();
    x[static_cast<Eigen::Index>(j)] = v;
  }
  return x;
}

SpectralField RealTrigBasis::synthesize(const Eigen::VectorXd& x, const FrequencyLattice& target) const {
  if (static_cast<std::size_t>(x.size()) != count_)
    throw DimensionError("coordinate vector has " + std::to_string(x.size()) + " entries, basis has " +
                         std::to_string(count_));
  if (target.dimension() != dimension()) throw DimensionError("basis and target dimensions differ");
  if (target.bandlimit() < lattice_.bandlimit()) throw RangeError("target lattice does not cover the basis");
  std::vector<Complex> c(target.size());
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (std::size_t j = 0; j < count_; ++j) {
    const double v = x[static_cast<Eigen::Index>(j)];
    const std::size_t idx = target.index_of(elements_[j].mode);
    switch (elements_[j].part) {
      case Part::constant:
        c[idx] += v;
        break;
      case Part::cosine:
        c[idx] += v * inv_sqrt2;
        break;
      case Part::sine:
        c[idx] += Complex{0.0, -v * inv_sqrt2};
        break;
    }
  }
  for (std::size_t i = target.center() + 1; i < target.size(); ++i) c[target.mirror(i)] = std::conj(c[i]);
  return SpectralField(target, std::move(c), true);
}

Eigen::MatrixXd DiscreteProblem::normal_matrix() const {
  if (dense) return a_matrix.transpose() * a_matrix + alpha * (l_matrix.transpose() * l_matrix);
  Eigen::VectorXd d = alpha * l_diagonal.array().square();
  d.head(a_diagonal.size()) += a_diagonal.array().square().matrix();
  return d.asDiagonal();
}

DiscreteProblem assemble(const MultiplierOperator& op, int dimension, std::size_t n, std::size_t k,
                         PenaltyChoice penalty, double alpha) {
  if (!(alpha > 0.0)) throw ParameterError("discrete problem needs alpha > 0, got " + std::to_string(alpha));
  if (n < 1 || k < 1) throw ParameterError("discrete problem needs n, k >= 1");
  const FrequencyLattice probe(dimension, 0);
  op.check_dimension(probe);
  if (penalty.kind == PenaltyChoice::Kind::identity_plus_difference) {
    if (dimension != 1) throw DimensionError("identity_plus_difference penalty is defined on T^1 only");
    if (n % 2 == 0) throw ParameterError("identity_plus_difference penalty needs odd n (= 2M+1 grid points)");
  }

  const RealTrigBasis basis(dimension, std::max(n, k));
  // Symbol per basis element; pairs share the value of their mode.
  std::vector<Complex> symbol(basis.size());
  bool real_symbol = true;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Mode l = basis.element(j).mode;
    const Complex a = op.symbol(l);
    if (op.symbol(negate(l)) != std::conj(a) || (basis.element(j).part == RealTrigBasis::Part::constant && a.imag() != 0.0))
      throw ParameterError("operator " + op.name() + " does not map real functions to real functions");
    symbol[j] = a;
    real_symbol = real_symbol && a.imag() == 0.0;
  }

  DiscreteProblem problem{dimension, n, k, penalty, alpha, true, {}, {}, {}, {}};
  const bool diagonal = real_symbol && penalty.kind != PenaltyChoice::Kind::identity_plus_difference;
  if (n > kMaxDenseDimension || k > kMaxDenseDimension) {
    if (!diagonal)
      throw ParameterError("discrete problem of size " + std::to_string(std::max(n, k)) +
                           " exceeds the dense cap and is not diagonal");
    problem.dense = false;
    const std::size_t shared = std::min(n, k);
    problem.a_diagonal.resize(static_cast<Eigen::Index>(shared));
    for (std::size_t j = 0; j < shared; ++j) problem.a_diagonal[static_cast<Eigen::Index>(j)] = symbol[j].real();
    problem.l_diagonal.resize(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j)
      problem.l_diagonal[static_cast<Eigen::Index>(j)] =
          penalty.kind == PenaltyChoice::Kind::identity ? 1.0 : std::pow(mode_weight(basis.element(j).mode), penalty.r / 2.0);
    return problem;
  }

  const auto rows = static_cast<Eigen::Index>(k);
  const auto cols = static_cast<Eigen::Index>(n);
  problem.a_matrix = Eigen::MatrixXd::Zero(rows, cols);
  problem.l_matrix = Eigen::MatrixXd::Zero(cols, cols);
  const double grid = static_cast<double>(n);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto& e = basis.element(j);
    if (e.part == RealTrigBasis::Part::sine) continue;
    const std::size_t js = j + 1;
    if (e.part == RealTrigBasis::Part::constant) {
      if (j < k && j < n) problem.a_matrix(0, 0) = symbol[j].real();
    } else {
      place_pair_block(problem.a_matrix, j, js, symbol[j]);
    }
    if (j >= n) continue;
    Complex penalty_symbol{1.0, 0.0};
    if (penalty.kind == PenaltyChoice::Kind::sobolev_spectral) {
      penalty_symbol = std::pow(mode_weight(e.mode), penalty.r / 2.0);
    } else if (penalty.kind == PenaltyChoice::Kind::identity_plus_difference) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(e.mode[0]) / grid;
      penalty_symbol = 1.0 + grid * (std::polar(1.0, theta) - 1.0);
    }
    if (e.part == RealTrigBasis::Part::constant)
      problem.l_matrix(0, 0) = penalty_symbol.real();
    else
      place_pair_block(problem.l_matrix, j, js, penalty_symbol);
  }
  return problem;
}

Eigen::VectorXd solve_discrete(const DiscreteProblem& problem, const Eigen::VectorXd& data) {
  if (static_cast<std::size_t>(data.size()) != problem.k)
    throw DimensionError("data vector has " + std::to_string(data.size()) + " entries, problem expects k=" +
                         std::to_string(problem.k));
  const auto n = static_cast<Eigen::Index>(problem.n);
  if (!problem.dense) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index j = 0; j < problem.a_diagonal.size(); ++j) {
      const double a = problem.a_diagonal[j];
      const double l = problem.l_diagonal[j];
      x[j] = a * data[j] / (a * a + problem.alpha * l * l);
    }
    return x;
  }
  const Eigen::MatrixXd normal = problem.normal_matrix();
  const Eigen::VectorXd rhs = problem.a_matrix.transpose() * data;
  const Eigen::LLT<Eigen::MatrixXd> llt(normal);
  if (llt.info() != Eigen::Success)
    throw NumericalError("Cholesky factorization failed: AᵀA + αLᵀL is not positive definite");
  Eigen::VectorXd x = llt.solve(rhs);
  const double residual = (normal * x - rhs).norm();
  if (residual > 1e-10 * rhs.norm())
    throw NumericalError("normal-equation residual " + std::to_string(residual) + " exceeds 1e-10 ‖Aᵀm‖");
  return x;
}

double discrete_objective(const DiscreteProblem& problem, const Eigen::VectorXd& x, const Eigen::VectorXd& data) {
  if (problem.dense)
    return (problem.a_matrix * x - data).squaredNorm() + problem.alpha * (problem.l_matrix * x).squaredNorm();
  Eigen::VectorXd ax = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(problem.k));
  ax.head(problem.a_diagonal.size()) = problem.a_diagonal.cwiseProduct(x.head(problem.a_diagonal.size()));
  return (ax - data).squaredNorm() + problem.alpha * problem.l_diagonal.cwiseProduct(x).squaredNorm();
}

GammaSweepResult gamma_sweep(const MultiplierOperator& op, const SpectralField& truth, const NoiseRealization& noise,
                             double delta, const RegularizationSchedule& schedule,
                             const std::vector<std::pair<std::size_t, std::size_t>>& sizes,
                             const std::vector<SpectralField>& test_functions) {
  const FrequencyLattice& lattice = truth.lattice();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto [n, k] = sizes[i];
    if (n > lattice.size() || k > lattice.size())
      throw RangeError("gamma sweep size (" + std::to_string(n) + "," + std::to_string(k) +
                       ") exceeds the reference lattice size " + std::to_string(lattice.size()));
    if (i > 0 && (n < sizes[i - 1].first || k < sizes[i - 1].second))
      throw ParameterError("gamma sweep sizes must be nondecreasing");
  }
  for (const SpectralField& phi : test_functions)
    if (!(phi.lattice() == lattice)) throw DimensionError("test function lattice differs from the truth lattice");

  const double alpha = schedule.alpha(delta);
  const double r = schedule.r();
  const Measurement measurement = forward(op, truth, delta, noise);
  const SpectralField& data = measurement.data;
  SpectralField continuum = solve(op, data, alpha, r);
  const double continuum_g = tikhonov_functional(op, continuum, data, alpha, r);
  const auto symbol = op.symbol_on(lattice);

  GammaSweepResult result{alpha, lattice.bandlimit(), continuum, continuum_g, {}, {}, {}};
  for (const auto& [n, k] : sizes) {
    const DiscreteProblem problem = assemble(op, lattice.dimension(), n, k, PenaltyChoice::sobolev_spectral(r), alpha);
    const RealTrigBasis data_basis(lattice.dimension(), k);
    const RealTrigBasis unknown_basis(lattice.dimension(), n);
    const Eigen::VectorXd projected = data_basis.coordinates(data);
    const Eigen::VectorXd x = solve_discrete(problem, projected);
    SpectralField minimizer = unknown_basis.synthesize(x, lattice);

    const double c_k = projected.squaredNorm();
    const double f_nk = discrete_objective(problem, x, projected);
    const SpectralField error = minimizer - continuum;
    for (std::size_t j = 0; j < test_functions.size(); ++j)
      result.rows.push_back({n, k, alpha, j, inner_product(error, test_functions[j]).real(),
                             f_nk - c_k - continuum_g, c_k});

    // (P_k A)* m = A* Q_k m.
    const SpectralField observed = data_basis.synthesize(projected, lattice);
    double adjoint_sq = 0.0;
    for (std::size_t i = 0; i < lattice.size(); ++i)
      adjoint_sq += std::pow(lattice.weight(i), -r) * std::norm(std::conj(symbol[i]) * observed[i]);
    result.sizes.push_back({n, k, f_nk, sobolev_norm(minimizer, r), 2.0 / alpha * std::sqrt(adjoint_sq)});
    result.discrete_minimizers.push_back(std::move(minimizer));
  }
  return result;
}

}  // namespace tikhonov
