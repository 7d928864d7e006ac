#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tikhonov/errors.hpp"
#include "tikhonov/experiment/hat.hpp"
#include "tikhonov/tikhonov_solver.hpp"

using namespace tikhonov;

namespace {

SpectralField random_hermitian(const FrequencyLattice& lattice, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> c(lattice.size());
  c[lattice.center()] = n(rng);
  for (std::size_t i = lattice.center() + 1; i < lattice.size(); ++i) {
    c[i] = {n(rng), n(rng)};
    c[lattice.mirror(i)] = std::conj(c[i]);
  }
  return SpectralField(lattice, std::move(c), true);
}

double parse(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

}  // namespace

TEST(Schedule, AlphaAndValidation) {
  const RegularizationSchedule schedule(2.0, 2.5, 1.0);
  EXPECT_DOUBLE_EQ(schedule.alpha(1e-2), 2.0 * std::pow(1e-2, 2.5));
  EXPECT_GT(schedule.alpha(1e-300), 0.0 - 1.0);
  EXPECT_THROW(schedule.alpha(0.0), ParameterError);
  EXPECT_THROW(RegularizationSchedule(0.0, 1.0, 1.0), ParameterError);
  EXPECT_THROW(RegularizationSchedule(1.0, 0.0, 1.0), ParameterError);
  EXPECT_THROW(RegularizationSchedule(1.0, 1.0, -0.5), ParameterError);
}

TEST(Forward, NoiseFreeAndPureNoise) {
  const FrequencyLattice lattice(1, 32);
  const SpectralField hat = experiment::hat_coefficients(lattice);
  const auto op = MultiplierOperator::deblur_1d();
  const Measurement clean = forward(op, hat, 0.1, NoiseRealization::zero(lattice));
  for (std::size_t i = 0; i < lattice.size(); ++i)
    EXPECT_NEAR(std::abs(clean.data[i] - hat[i] / (1.0 + lattice.norm_sq(i))), 0.0, 1e-16 * std::abs(hat[i]) + 1e-300);
  const auto noise = sample_white_noise(lattice, 3);
  const Measurement pure = forward(MultiplierOperator::identity(), SpectralField::zero(lattice), 0.25, noise);
  for (std::size_t i = 0; i < lattice.size(); ++i) EXPECT_EQ(pure.data[i], 0.25 * noise.field[i]);
  ASSERT_TRUE(pure.noise && pure.truth);
  EXPECT_EQ(pure.noise->seed, std::optional<std::uint64_t>(3));
  EXPECT_DOUBLE_EQ(pure.delta, 0.25);
}

TEST(Forward, Errors) {
  const FrequencyLattice lattice(1, 8);
  const auto op = MultiplierOperator::deblur_1d();
  EXPECT_THROW(forward(op, SpectralField::zero(lattice), 0.1, NoiseRealization::zero(FrequencyLattice(1, 9))),
               DimensionError);
  EXPECT_THROW(forward(op, SpectralField::zero(lattice), 0.0, NoiseRealization::zero(lattice)), ParameterError);
}

TEST(Forward, GoldenFixture) {
  const FrequencyLattice lattice(1, 64);
  const double delta = 3.5e-5;
  const Measurement m = forward(MultiplierOperator::deblur_1d(), experiment::hat_coefficients(lattice), delta,
                                sample_white_noise(lattice, 2718));
  std::ifstream in(std::string(TIKHONOV_TEST_DATA_DIR) + "/forward_golden.csv");
  ASSERT_TRUE(in.good());
  std::string line;
  std::getline(in, line);
  ASSERT_EQ(line, "ell,re,im");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string ell, re, im;
    std::getline(ss, ell, ',');
    std::getline(ss, re, ',');
    std::getline(ss, im, ',');
    const Complex got = m.data.at({std::stoi(ell), 0});
    const Complex want{parse(re), parse(im)};
    EXPECT_NEAR(std::abs(got - want), 0.0, 1e-15 * std::max(1.0, std::abs(want))) << "ell=" << ell;
    ++rows;
  }
  EXPECT_EQ(rows, lattice.size());

  // Independent scalar recomputation of ten modes.
  const auto noise = oracle::white_noise_1d(64, 2718);
  std::mt19937 pick(5);
  std::uniform_int_distribution<int> mode(-64, 64);
  for (int trial = 0; trial < 10; ++trial) {
    const int ell = mode(pick);
    const oracle::cd eps = ell >= 0 ? noise[static_cast<std::size_t>(ell)] : std::conj(noise[static_cast<std::size_t>(-ell)]);
    const oracle::cd expected = oracle::hat_coefficient(ell) / (1.0 + ell * ell) + delta * eps;
    EXPECT_NEAR(std::abs(m.data.at({ell, 0}) - expected), 0.0, 1e-10) << "ell=" << ell;
  }
}

TEST(Solve, ScalarExamples) {
  const FrequencyLattice lattice(1, 3);
  const SpectralField data = SpectralField::single_mode(lattice, {0, 0}, 2.0);
  EXPECT_NEAR(std::abs(solve(MultiplierOperator::identity(), data, 1.0, 0.0).at({0, 0}) - 1.0), 0.0, 1e-15);

  const double delta = 1e-2;
  const double alpha = std::pow(delta, 2.5);
  const SpectralField u = solve(MultiplierOperator::deblur_1d(), data, alpha, 1.0);
  EXPECT_NEAR(u.at({0, 0}).real(), 2.0 / (1.0 + alpha), 1e-15);

  EXPECT_THROW(solve(MultiplierOperator::identity(), data, 0.0, 0.0), ParameterError);
  EXPECT_THROW(solve(MultiplierOperator::identity(), data, -1.0, 0.0), ParameterError);
}

TEST(Solve, NoiselessLimitRecoversTruth) {
  const FrequencyLattice lattice(1, 40);
  const SpectralField hat = experiment::hat_coefficients(lattice);
  const auto op = MultiplierOperator::deblur_1d();
  const SpectralField data = apply_multiplier(op, hat);
  double previous = std::numeric_limits<double>::infinity();
  for (double alpha : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 1e-14, 1e-16}) {
    const double err = sobolev_norm(solve(op, data, alpha, 1.0) - hat, 0.0);
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 1e-6);
}

TEST(Solve, PerModeFormula) {
  std::mt19937_64 rng(8);
  const FrequencyLattice lattice(2, 6);
  const SpectralField data = random_hermitian(lattice, rng);
  const auto op = MultiplierOperator::power_law(1.5);
  const SpectralField u = solve(op, data, 0.03, 0.7);
  EXPECT_TRUE(u.hermitian());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Mode l = lattice.mode(i);
    const double w = 1.0 + l[0] * l[0] + l[1] * l[1];
    const double a = std::pow(w, -0.75);
    const Complex expected = a * data[i] / (a * a + 0.03 * std::pow(w, 0.7));
    EXPECT_NEAR(std::abs(u[i] - expected), 0.0, 1e-13 * std::max(1.0, std::abs(expected)));
  }
}

TEST(Solve, FilterFactorsInUnitInterval) {
  const FrequencyLattice lattice(1, 500);
  const auto op = MultiplierOperator::deblur_1d();
  for (double alpha : {1e-12, 1e-4, 1.0, 1e3}) {
    const auto z = regularized_symbol(op, lattice, alpha, 1.0);
    const auto a = op.symbol_on(lattice);
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const double f = std::norm(a[i]) / z[i];
      EXPECT_GT(f, 0.0);
      EXPECT_LE(f, 1.0);
    }
  }
}

TEST(Solve, LinearInData) {
  std::mt19937_64 rng(9);
  const FrequencyLattice lattice(1, 64);
  const SpectralField m1 = random_hermitian(lattice, rng);
  const SpectralField m2 = random_hermitian(lattice, rng);
  const auto op = MultiplierOperator::deblur_1d();
  const SpectralField lhs = solve(op, m1 + m2, 1e-3, 1.0);
  const SpectralField rhs = solve(op, m1, 1e-3, 1.0) + solve(op, m2, 1e-3, 1.0);
  for (std::size_t i = 0; i < lattice.size(); ++i) EXPECT_NEAR(std::abs(lhs[i] - rhs[i]), 0.0, 1e-13);
}

TEST(Solve, MonotoneDamping) {
  std::mt19937_64 rng(10);
  const FrequencyLattice lattice(1, 64);
  const SpectralField m = random_hermitian(lattice, rng);
  const auto op = MultiplierOperator::deblur_1d();
  double previous = std::numeric_limits<double>::infinity();
  for (double alpha : {1e-8, 1e-6, 1e-4, 1e-2, 1.0, 1e2}) {
    const double norm = sobolev_norm(solve(op, m, alpha, 1.0), 1.0);
    EXPECT_LT(norm, previous);
    previous = norm;
  }
}

TEST(Solve, VariationalOptimalityUnderPerModePerturbation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double h = 1e-6;
  for (int problem = 0; problem < 100; ++problem) {
    const int d = problem % 5 == 0 ? 2 : 1;
    const FrequencyLattice lattice(d, d == 1 ? 16 : 4);
    const auto op = MultiplierOperator::power_law(0.5 + 2.5 * unit(rng));
    const double alpha = std::pow(10.0, -4.0 * unit(rng));
    const double r = 2.0 * unit(rng);
    const SpectralField m = random_hermitian(lattice, rng);
    const SpectralField u = solve(op, m, alpha, r);
    auto functional = [&](const SpectralField& v) { return misfit_functional(op, v, m, alpha, r); };
    const double f0 = functional(u);
    const double scale = std::max(1.0, std::abs(f0));
    for (std::size_t i = lattice.center(); i < lattice.size(); ++i)
      for (Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        if (i == lattice.center() && dir.imag() != 0.0) continue;
        std::vector<Complex> bump(lattice.size());
        bump[i] = h * dir;
        bump[lattice.mirror(i)] += std::conj(h * dir);
        const SpectralField e(lattice, bump, true);
        const double plus = functional(u + e);
        const double minus = functional(u - e);
        EXPECT_GE(plus - f0, -1e-12 * scale);
        EXPECT_GE(minus - f0, -1e-12 * scale);
        EXPECT_LT(std::abs(plus - minus) / (2.0 * h), 1e-8 * scale);
      }
  }
}

TEST(Functionals, DifferByDataEnergy) {
  std::mt19937_64 rng(12);
  const FrequencyLattice lattice(1, 20);
  const SpectralField m = random_hermitian(lattice, rng);
  const SpectralField u = random_hermitian(lattice, rng);
  const auto op = MultiplierOperator::deblur_1d();
  const double g = tikhonov_functional(op, u, m, 0.1, 1.0);
  const double f = misfit_functional(op, u, m, 0.1, 1.0);
  EXPECT_NEAR(f - g, sobolev_norm_sq(m, 0.0), 1e-12 * f);
}

TEST(SolveSplit, RecombinesToSolve) {
  std::mt19937_64 rng(13);
  const RegularizationSchedule schedule(1.0, 2.5, 1.0);
  const auto op = MultiplierOperator::deblur_1d();
  for (int trial = 0; trial < 10; ++trial) {
    const FrequencyLattice lattice(1, 128);
    const SpectralField truth = random_hermitian(lattice, rng);
    const auto noise = sample_white_noise(lattice, 100 + static_cast<std::uint64_t>(trial));
    const double delta = std::pow(10.0, -1.0 - trial * 0.4);
    const Measurement m = forward(op, truth, delta, noise);
    const TikhonovSplit split = solve_split(op, m, schedule);
    const SpectralField direct = solve(op, m.data, schedule.alpha(delta), schedule.r());
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      EXPECT_NEAR(std::abs(split.bias_part[i] + split.noise_part[i] - direct[i]), 0.0, 1e-12);
      EXPECT_EQ(split.reconstruction[i], split.bias_part[i] + split.noise_part[i]);
    }
    EXPECT_TRUE(split.reconstruction.hermitian());
  }
}

TEST(SolveSplit, DegenerateParts) {
  const FrequencyLattice lattice(1, 16);
  const auto op = MultiplierOperator::deblur_1d();
  const RegularizationSchedule schedule(1.0, 2.0, 1.0);
  const SpectralField hat = experiment::hat_coefficients(lattice);
  const TikhonovSplit clean = solve_split(op, forward(op, hat, 0.1, NoiseRealization::zero(lattice)), schedule);
  EXPECT_EQ(sobolev_norm(clean.noise_part, 0.0), 0.0);
  for (std::size_t i = 0; i < lattice.size(); ++i) EXPECT_EQ(clean.reconstruction[i], clean.bias_part[i]);
  const TikhonovSplit pure =
      solve_split(op, forward(op, SpectralField::zero(lattice), 0.1, sample_white_noise(lattice, 1)), schedule);
  EXPECT_EQ(sobolev_norm(pure.bias_part, 0.0), 0.0);
}

TEST(SolveSplit, NeedsProvenance) {
  const FrequencyLattice lattice(1, 4);
  const auto op = MultiplierOperator::deblur_1d();
  const RegularizationSchedule schedule(1.0, 2.0, 1.0);
  Measurement m = forward(op, SpectralField::zero(lattice), 0.1, NoiseRealization::zero(lattice));
  Measurement no_truth = m;
  no_truth.truth.reset();
  EXPECT_THROW(solve_split(op, no_truth, schedule), ProvenanceError);
  Measurement no_noise = m;
  no_noise.noise.reset();
  EXPECT_THROW(solve_split(op, no_noise, schedule), ProvenanceError);
}

TEST(BiasBound, ZeroTruthAndExponent) {
  const FrequencyLattice lattice(1, 64);
  const auto op = MultiplierOperator::deblur_1d();
  const RegularizationSchedule schedule(1.0, 2.5, 1.0);
  const BiasBound zero = bias_bound_check(op, SpectralField::zero(lattice), schedule, 1e-2, -1.5);
  EXPECT_EQ(zero.observed, 0.0);
  EXPECT_LE(zero.observed, zero.bound);
  EXPECT_NEAR(zero.delta_exponent, 2.5 * 2.5 / 6.0, 1e-15);
  EXPECT_NEAR(zero.delta_exponent, 1.0417, 1e-4);
  EXPECT_DOUBLE_EQ(zero.frame_constant, 1.0);
}

TEST(BiasBound, DeblurSweepStaysBelowBound) {
  const FrequencyLattice lattice(1, 16384);
  const SpectralField hat = experiment::hat_coefficients(lattice);
  const auto op = MultiplierOperator::deblur_1d();
  const RegularizationSchedule schedule(1.0, 2.5, 1.0);
  for (double zeta : {-5.0, -3.0, -1.5, 0.0, 1.0}) {
    double worst = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (double delta : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
      const BiasBound b = bias_bound_check(op, hat, schedule, delta, zeta);
      // direct evaluation of ‖α Z^{-1}(I−Δ) u‖_{H^ζ}
      double direct = 0.0;
      const double alpha = schedule.alpha(delta);
      for (std::size_t i = 0; i < lattice.size(); ++i) {
        const double w = lattice.weight(i);
        const double z = 1.0 / (w * w) + alpha * w;
        direct += std::pow(w, zeta) * std::norm(alpha * w * hat[i] / z);
      }
      EXPECT_NEAR(b.observed, std::sqrt(direct), 1e-10 * std::sqrt(direct));
      EXPECT_LE(b.observed, b.bound * (1.0 + 1e-12));
      const double scaled = b.observed / std::pow(delta, b.delta_exponent);
      worst = std::max(worst, scaled);
      best = std::min(best, scaled);
    }
    EXPECT_LE(worst, sobolev_norm(hat, 1.0) * (1.0 + 1e-12)) << "zeta=" << zeta;
    EXPECT_GT(best, 0.0);
  }
}

TEST(BiasBound, Errors) {
  const FrequencyLattice lattice(1, 8);
  const RegularizationSchedule schedule(1.0, 2.0, 1.0);
  const auto op = MultiplierOperator::deblur_1d();
  EXPECT_THROW(bias_bound_check(op, SpectralField::zero(lattice), schedule, 0.1, 1.5), ParameterError);
  EXPECT_THROW(bias_bound_check(op, SpectralField::zero(lattice), schedule, 0.1, -5.5), ParameterError);
  EXPECT_THROW(bias_bound_check(MultiplierOperator::identity(), SpectralField::zero(lattice), schedule, 0.1, 0.0),
               ParameterError);
}
