#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tikhonov/multiplier.hpp"
#include "tikhonov/tikhonov_solver.hpp"

namespace tikhonov {

// Orthonormal real trigonometric basis of L²(T^d): the constant, then
// √2 cos(2πℓ·x), √2 sin(2πℓ·x) for each representative ℓ of
// nested_representatives(). The first (2M+1)^d functions span exactly the
// bandlimit-M lattice, so X_n ⊂ X_{n+1} and the orthogonal projector onto
// X_n is coefficient truncation.
class RealTrigBasis {
 public:
  enum class Part { constant, cosine, sine };
  struct Element {
    Mode mode;
    Part part;
  };

  RealTrigBasis(int dimension, std::size_t count);

  int dimension() const noexcept { return lattice_.dimension(); }
  std::size_t size() const noexcept { return count_; }
  // Smallest lattice containing every basis element.
  const FrequencyLattice& lattice() const noexcept { return lattice_; }
  const Element& element(std::size_t j) const { return elements_[j]; }

  // P_k: coordinates ⟨f, φ_j⟩ for j < size(). The field must be hermitian
  // and cover the basis lattice.
  Eigen::VectorXd coordinates(const SpectralField& field) const;
  // T_n^{-1}: the field Σ_j x_j φ_j on `target`, which must cover the basis lattice.
  SpectralField synthesize(const Eigen::VectorXd& x, const FrequencyLattice& target) const;

 private:
  FrequencyLattice lattice_;
  std::size_t count_;
  std::vector<Element> elements_;
};

struct PenaltyChoice {
  enum class Kind { identity, identity_plus_difference, sobolev_spectral };
  Kind kind = Kind::identity;
  double r = 0.0;

  static PenaltyChoice identity() { return {Kind::identity, 0.0}; }
  // L = I + D, D the periodic forward difference (u_{j+1} − u_j)·n on an
  // n-point grid, expressed in the real trigonometric basis. d = 1, odd n.
  static PenaltyChoice identity_plus_difference() { return {Kind::identity_plus_difference, 0.0}; }
  // LᵀL = diag (1+|ℓ|²)^r in the real trigonometric basis.
  static PenaltyChoice sobolev_spectral(double r) { return {Kind::sobolev_spectral, r}; }
};

const char* to_string(PenaltyChoice::Kind kind);

// Dense assembly is capped at this size; beyond it only diagonal problems
// (real symbol with the identity or spectral penalty) are accepted.
inline constexpr std::size_t kMaxDenseDimension = 4096;

// min_x ‖A x − m‖₂² + α ‖L x‖₂² with A = P_k A T_n in the real trigonometric basis.
struct DiscreteProblem {
  int dimension;
  std::size_t n;  // unknowns
  std::size_t k;  // data
  PenaltyChoice penalty;
  double alpha;
  bool dense;
  Eigen::MatrixXd a_matrix;  // k×n when dense
  Eigen::MatrixXd l_matrix;  // n×n when dense
  Eigen::VectorXd a_diagonal;  // min(n,k) entries when not dense
  Eigen::VectorXd l_diagonal;  // n entries when not dense

  // AᵀA + αLᵀL, formed densely.
  Eigen::MatrixXd normal_matrix() const;
};

DiscreteProblem assemble(const MultiplierOperator& op, int dimension, std::size_t n, std::size_t k,
                         PenaltyChoice penalty, double alpha);

// (AᵀA + αLᵀL)^{-1} Aᵀ m by a dense Cholesky factorization (diagonal fast
// path for non-dense problems). Throws NumericalError if the factorization
// fails or the normal-equation residual exceeds 1e-10 ‖Aᵀm‖.
Eigen::VectorXd solve_discrete(const DiscreteProblem& problem, const Eigen::VectorXd& data);

// ‖A x − m‖² + α‖L x‖².
double discrete_objective(const DiscreteProblem& problem, const Eigen::VectorXd& x, const Eigen::VectorXd& data);

struct GammaRow {
  std::size_t n;
  std::size_t k;
  double alpha;
  std::size_t test_function_id;
  double pairing_gap;     // ⟨T_{α;n,k}(m) − T_α(m), φ_j⟩
  double functional_gap;  // G_{n,k}(T_{α;n,k}(m)) − G(T_α(m)), G_{n,k} = F_{n,k} − c_k
  double c_k;             // ‖P_k m‖₂²
};

struct GammaSizeSummary {
  std::size_t n;
  std::size_t k;
  double discrete_functional;  // F_{n,k} at the discrete minimizer
  double minimizer_norm;       // ‖T_{α;n,k}(m)‖_{H^r}
  double ball_radius;          // 2α^{-1} ‖(P_k A)* m‖_{H^{-r}}
};

struct GammaSweepResult {
  double alpha;
  int reference_bandlimit;
  SpectralField continuum_minimizer;
  double continuum_functional;  // G(T_α(m))
  std::vector<GammaRow> rows;
  std::vector<GammaSizeSummary> sizes;
  std::vector<SpectralField> discrete_minimizers;  // on the reference lattice
};

// Discrete minimizers for each (n, k) against the continuum minimizer on the
// truth's lattice, with the spectral H^r penalty of `schedule`.
GammaSweepResult gamma_sweep(const MultiplierOperator& op, const SpectralField& truth, const NoiseRealization& noise,
                             double delta, const RegularizationSchedule& schedule,
                             const std::vector<std::pair<std::size_t, std::size_t>>& sizes,
                             const std::vector<SpectralField>& test_functions);

}  // namespace tikhonov
