#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "tikhonov/errors.hpp"
#include "tikhonov/experiment/hat.hpp"
#include "tikhonov/lattice.hpp"
#include "tikhonov/multiplier.hpp"
#include "tikhonov/spectral_field.hpp"

using namespace tikhonov;

namespace {

SpectralField random_hermitian(const FrequencyLattice& lattice, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> c(lattice.size());
  c[lattice.center()] = n(rng);
  for (std::size_t i = lattice.center() + 1; i < lattice.size(); ++i) {
    c[i] = {n(rng), n(rng)};
    c[lattice.mirror(i)] = std::conj(c[i]);
  }
  return SpectralField(lattice, std::move(c), true);
}

SpectralField random_complex(const FrequencyLattice& lattice, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> c(lattice.size());
  for (auto& v : c) v = {n(rng), n(rng)};
  return SpectralField(lattice, std::move(c), false);
}

}  // namespace

TEST(FrequencyLattice, CountsAndEnumeration) {
  for (int d : {1, 2})
    for (int m : {0, 1, 3, 7}) {
      const FrequencyLattice lattice(d, m);
      const std::size_t side = static_cast<std::size_t>(2 * m + 1);
      EXPECT_EQ(lattice.size(), d == 1 ? side : side * side);
      EXPECT_EQ(lattice.size(), lattice_size(d, m));
    }
  const FrequencyLattice one(1, 3);
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one.mode(i), (Mode{static_cast<int>(i) - 3, 0}));
  const FrequencyLattice two(2, 2);
  EXPECT_EQ(two.mode(0), (Mode{-2, -2}));
  EXPECT_EQ(two.mode(1), (Mode{-2, -1}));
  EXPECT_EQ(two.mode(5), (Mode{-1, -2}));
  EXPECT_EQ(two.mode(two.center()), (Mode{0, 0}));
}

TEST(FrequencyLattice, IndexMirrorAndShell) {
  const FrequencyLattice lattice(2, 4);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Mode l = lattice.mode(i);
    EXPECT_EQ(lattice.index_of(l), i);
    EXPECT_EQ(lattice.mode(lattice.mirror(i)), (Mode{-l[0], -l[1]}));
    EXPECT_EQ(lattice.shell(i), std::max(std::abs(l[0]), std::abs(l[1])));
    EXPECT_DOUBLE_EQ(lattice.weight(i), 1.0 + l[0] * l[0] + l[1] * l[1]);
  }
  EXPECT_THROW(lattice.index_of({5, 0}), RangeError);
  EXPECT_FALSE(lattice.contains({0, -5}));
}

TEST(FrequencyLattice, RejectsBadShapes) {
  EXPECT_THROW(FrequencyLattice(3, 2), DimensionError);
  EXPECT_THROW(FrequencyLattice(0, 2), DimensionError);
  EXPECT_THROW(FrequencyLattice(1, -1), RangeError);
}

TEST(FrequencyLattice, DeterministicEnumeration) {
  const FrequencyLattice a(2, 5);
  const FrequencyLattice b(2, 5);
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.mode(i), b.mode(i));
}

TEST(FrequencyLattice, NestedRepresentativesArePrefixes) {
  for (int d : {1, 2}) {
    const FrequencyLattice big(d, 6);
    const auto reps_big = nested_representatives(big);
    EXPECT_EQ(reps_big.size(), big.size() / 2 + 1);
    for (int m = 0; m < 6; ++m) {
      const FrequencyLattice small(d, m);
      const auto reps_small = nested_representatives(small);
      for (std::size_t j = 0; j < reps_small.size(); ++j)
        EXPECT_EQ(small.mode(reps_small[j]), big.mode(reps_big[j]));
    }
    // exactly one member of every ± pair
    std::vector<int> hits(big.size(), 0);
    for (std::size_t i : reps_big) {
      ++hits[i];
      ++hits[big.mirror(i)];
    }
    for (std::size_t i = 0; i < big.size(); ++i) EXPECT_EQ(hits[i], i == big.center() ? 2 : 1);
  }
}

TEST(SpectralField, HermitianFlagIsVerified) {
  const FrequencyLattice lattice(1, 2);
  std::vector<Complex> c(5);
  c[3] = {1.0, 2.0};
  EXPECT_THROW(SpectralField(lattice, c, true), InvalidFieldError);
  c[1] = {1.0, -2.0};
  EXPECT_NO_THROW(SpectralField(lattice, c, true));
  c[2] = {0.0, 1.0};
  EXPECT_THROW(SpectralField(lattice, c, true), InvalidFieldError);
  EXPECT_THROW(SpectralField(lattice, std::vector<Complex>(4), false), DimensionError);
}

TEST(SpectralField, SingleModeAndZero) {
  const FrequencyLattice lattice(2, 3);
  EXPECT_TRUE(SpectralField::zero(lattice).hermitian());
  EXPECT_TRUE(SpectralField::single_mode(lattice, {0, 0}, 2.5).hermitian());
  EXPECT_FALSE(SpectralField::single_mode(lattice, {1, 2}, 1.0).hermitian());
  EXPECT_EQ(SpectralField::single_mode(lattice, {1, 2}, 1.0).at({1, 2}), Complex(1.0));
  EXPECT_FALSE(SpectralField::zero(lattice).scaled(Complex(0.0, 1.0)).hermitian());
  EXPECT_TRUE(SpectralField::zero(lattice).scaled(2.0).hermitian());
}

TEST(SobolevNorm, ZeroFieldIsZeroForAllS) {
  const SpectralField zero = SpectralField::zero(FrequencyLattice(1, 10));
  for (double s : {-3.0, -0.5, 0.0, 1.0, 2.5}) EXPECT_EQ(sobolev_norm(zero, s), 0.0);
}

TEST(SobolevNorm, ZeroModeIsOneForAllS) {
  for (int d : {1, 2}) {
    const SpectralField f = SpectralField::single_mode(FrequencyLattice(d, 4), {0, 0}, 1.0);
    for (double s : {-3.0, -0.5, 0.0, 1.0, 2.5}) EXPECT_DOUBLE_EQ(sobolev_norm(f, s), 1.0);
  }
}

TEST(SobolevNorm, HatL2NormMatchesQuadrature) {
  const double quad = oracle::hat_l2_sq();
  EXPECT_NEAR(quad, 4.0 / 15.0, 1e-12);
  const SpectralField hat = experiment::hat_coefficients(FrequencyLattice(1, 512));
  // Truncation tail Σ_{|ℓ|>M} |ĉ|² is O(M^{-3}) for a Lipschitz signal.
  EXPECT_NEAR(sobolev_norm(hat, 0.0), std::sqrt(quad), 1e-6);
  EXPECT_NEAR(sobolev_norm(hat, 0.0), 0.5164, 1e-4);
}

TEST(SobolevNorm, ExplicitSumAndDirectSum) {
  const FrequencyLattice lattice(2, 5);
  const SpectralField f = random_complex(lattice, 3);
  for (double s : {-1.5, 0.0, 0.7}) {
    double direct = 0.0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const Mode l = lattice.mode(i);
      direct += std::pow(1.0 + l[0] * l[0] + l[1] * l[1], s) * std::norm(f[i]);
    }
    EXPECT_NEAR(sobolev_norm_sq(f, s), direct, 1e-10 * direct);
  }
}

TEST(SobolevNorm, MonotoneInS) {
  const SpectralField f = random_complex(FrequencyLattice(2, 6), 11);
  double previous = 0.0;
  for (double s = -3.0; s <= 3.0; s += 0.25) {
    const double v = sobolev_norm(f, s);
    EXPECT_GE(v, previous);
    previous = v;
  }
}

TEST(SobolevNorm, RejectsNonFinite) {
  const FrequencyLattice lattice(1, 2);
  std::vector<Complex> c(5);
  c[1] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(sobolev_norm(SpectralField(lattice, c, false), 0.0), InvalidFieldError);
  c[1] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(sobolev_norm(SpectralField(lattice, c, false), 1.0), InvalidFieldError);
}

TEST(SobolevNorm, EqualsL2NormOfBesselPotential) {
  for (int d : {1, 2}) {
    const SpectralField f = random_hermitian(FrequencyLattice(d, 7), 5 + d);
    for (double r : {-2.0, -0.5, 0.5, 1.0, 3.0}) {
      const SpectralField g = apply_multiplier(MultiplierOperator::sobolev_power(r / 2.0), f);
      EXPECT_NEAR(sobolev_norm(f, r), sobolev_norm(g, 0.0), 1e-12 * sobolev_norm(f, r));
    }
  }
}

TEST(ApplyMultiplier, IdentityLeavesFieldUnchanged) {
  const SpectralField f = random_hermitian(FrequencyLattice(2, 4), 1);
  const SpectralField g = apply_multiplier(MultiplierOperator::identity(), f);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(f[i], g[i]);
  EXPECT_TRUE(g.hermitian());
}

TEST(ApplyMultiplier, DeblurSymbolAtModeTwo) {
  const FrequencyLattice lattice(1, 4);
  const SpectralField f = SpectralField::single_mode(lattice, {2, 0}, 1.0);
  const SpectralField g = apply_multiplier(MultiplierOperator::deblur_1d(), f);
  EXPECT_NEAR(std::abs(g.at({2, 0}) - 0.2), 0.0, 1e-15);
  for (std::size_t i = 0; i < lattice.size(); ++i)
    if (lattice.mode(i)[0] != 2) {
      EXPECT_EQ(g[i], Complex{});
    }
}

TEST(ApplyMultiplier, CompositionMatchesProductSymbol) {
  const FrequencyLattice lattice(1, 30);
  const SpectralField f = random_hermitian(lattice, 9);
  const MultiplierOperator blur = MultiplierOperator::deblur_1d();
  const SpectralField twice = apply_multiplier(blur, apply_multiplier(blur, f));
  const SpectralField once = apply_multiplier(MultiplierOperator::sobolev_power(-2.0), f);
  const SpectralField composed = apply_multiplier(blur.compose(blur), f);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    EXPECT_NEAR(std::abs(twice[i] - once[i]), 0.0, 1e-12 * std::abs(f[i]) + 1e-300);
    EXPECT_NEAR(std::abs(twice[i] - composed[i]), 0.0, 1e-15);
  }
  EXPECT_DOUBLE_EQ(blur.compose(blur).smoothing_order(), 4.0);
}

TEST(ApplyMultiplier, Linearity) {
  const FrequencyLattice lattice(2, 5);
  const SpectralField f = random_hermitian(lattice, 1);
  const SpectralField g = random_hermitian(lattice, 2);
  const MultiplierOperator op = MultiplierOperator::power_law(1.5);
  const SpectralField lhs = apply_multiplier(op, 2.0 * f + (-3.0) * g);
  const SpectralField rhs = 2.0 * apply_multiplier(op, f) + (-3.0) * apply_multiplier(op, g);
  for (std::size_t i = 0; i < lattice.size(); ++i) EXPECT_NEAR(std::abs(lhs[i] - rhs[i]), 0.0, 1e-14);
}

TEST(ApplyMultiplier, HermitianFlagFollowsSymbol) {
  const FrequencyLattice lattice(1, 5);
  const SpectralField f = random_hermitian(lattice, 3);
  const MultiplierOperator shift([](const Mode& l) { return std::polar(1.0, 0.3 * l[0]); }, 0.0, {}, "shift");
  EXPECT_TRUE(shift.preserves_real_on(lattice));
  EXPECT_TRUE(apply_multiplier(shift, f).hermitian());
  const MultiplierOperator twist([](const Mode& l) { return Complex(1.0, 0.1 * (l[0] * l[0])); }, 0.0, {}, "twist");
  EXPECT_FALSE(twist.preserves_real_on(lattice));
  EXPECT_FALSE(apply_multiplier(twist, f).hermitian());
}

TEST(ApplyMultiplier, DimensionRestrictedOperatorRejectsOtherLattices) {
  const SpectralField f = SpectralField::zero(FrequencyLattice(2, 3));
  EXPECT_THROW(apply_multiplier(MultiplierOperator::deblur_1d(), f), DimensionError);
}

TEST(MultiplierOperator, EllipticityAndInjectivity) {
  for (int d : {1, 2}) {
    const FrequencyLattice lattice(d, 20);
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
      const MultiplierOperator op = MultiplierOperator::power_law(t);
      EXPECT_TRUE(op.injective_on(lattice));
      EXPECT_TRUE(op.ellipticity_holds_on(lattice));
      EXPECT_DOUBLE_EQ(op.smoothing_order(), t);
    }
  }
  const FrequencyLattice lattice(1, 50);
  EXPECT_TRUE(MultiplierOperator::deblur_1d().ellipticity_holds_on(lattice));
  const MultiplierOperator wrong([](const Mode& l) { return Complex(1.0 / (1.0 + l[0] * l[0])); }, 2.0,
                                 {1.0, 1.0, 0.0}, "too tight");
  EXPECT_FALSE(wrong.ellipticity_holds_on(lattice));
  const MultiplierOperator vanishing([](const Mode& l) { return Complex(l[0] == 3 ? 0.0 : 1.0); }, 0.0, {}, "hole");
  EXPECT_FALSE(vanishing.injective_on(lattice));
  EXPECT_THROW(MultiplierOperator(nullptr, 1.0, {}, "null"), ParameterError);
  EXPECT_THROW(MultiplierOperator([](const Mode&) { return Complex(1.0); }, 1.0, {2.0, 1.0, 0.0}, "bad"),
               ParameterError);
}

TEST(MultiplierOperator, FrameConstantOfDeblurIsOne) {
  // |a|²(1+ℓ²)² = 1 on every mode.
  EXPECT_DOUBLE_EQ(MultiplierOperator::deblur_1d().frame_constant(FrequencyLattice(1, 100)), 1.0);
}

TEST(Truncate, BasicCases) {
  const FrequencyLattice lattice(1, 5);
  const SpectralField f = random_hermitian(lattice, 4);
  const SpectralField same = truncate(f, 5);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(same[i], f[i]);
  const SpectralField single = SpectralField::single_mode(lattice, {3, 0}, 1.0);
  EXPECT_EQ(sobolev_norm(truncate(single, 2), 0.0), 0.0);
  EXPECT_THROW(truncate(f, 6), RangeError);
  EXPECT_THROW(truncate(f, -1), RangeError);
}

TEST(Truncate, KeepsCoefficientsAndNeverIncreasesNorms) {
  for (int d : {1, 2}) {
    const SpectralField f = random_complex(FrequencyLattice(d, 9), 20 + d);
    for (int m = 0; m <= 9; ++m) {
      const SpectralField g = truncate(f, m);
      for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g[i], f.at(g.lattice().mode(i)));
      for (double s : {-1.0, 0.0, 2.0}) EXPECT_LE(sobolev_norm(g, s), sobolev_norm(f, s));
    }
  }
}

TEST(Embed, ZeroPadsAndInvertsTruncation) {
  const SpectralField f = random_hermitian(FrequencyLattice(2, 3), 8);
  const SpectralField big = embed(f, FrequencyLattice(2, 6));
  EXPECT_TRUE(big.hermitian());
  EXPECT_DOUBLE_EQ(sobolev_norm(big, 1.0), sobolev_norm(f, 1.0));
  const SpectralField back = truncate(big, 3);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(back[i], f[i]);
  EXPECT_THROW(embed(f, FrequencyLattice(2, 2)), RangeError);
  EXPECT_THROW(embed(f, FrequencyLattice(1, 6)), DimensionError);
}

TEST(InnerProduct, ConjugateLinearPairing) {
  const FrequencyLattice lattice(1, 6);
  const SpectralField f = random_complex(lattice, 1);
  const SpectralField g = random_complex(lattice, 2);
  Complex direct{};
  for (std::size_t i = 0; i < lattice.size(); ++i) direct += f[i] * std::conj(g[i]);
  EXPECT_NEAR(std::abs(inner_product(f, g) - direct), 0.0, 1e-13);
  EXPECT_NEAR(inner_product(f, f).real(), sobolev_norm_sq(f, 0.0), 1e-12);
  EXPECT_THROW(inner_product(f, SpectralField::zero(FrequencyLattice(1, 5))), DimensionError);
}

TEST(EvaluateOnGrid, ZeroAndConstant) {
  for (double v : evaluate_on_grid(SpectralField::zero(FrequencyLattice(1, 4)), 16)) EXPECT_EQ(v, 0.0);
  for (double v : evaluate_on_grid(SpectralField::single_mode(FrequencyLattice(2, 3), {0, 0}, 1.75), 9))
    EXPECT_DOUBLE_EQ(v, 1.75);
}

TEST(EvaluateOnGrid, MatchesDirectSynthesis) {
  const FrequencyLattice lattice(1, 8);
  const SpectralField f = random_hermitian(lattice, 30);
  const std::vector<oracle::cd> c(f.coefficients().begin(), f.coefficients().end());
  const auto values = evaluate_on_grid(f, 37);
  for (std::size_t j = 0; j < values.size(); ++j) {
    const oracle::cd direct = oracle::synthesize_1d(c, static_cast<double>(j) / 37.0);
    EXPECT_NEAR(values[j], direct.real(), 1e-12);
    EXPECT_NEAR(direct.imag(), 0.0, 1e-12);
  }
}

TEST(EvaluateOnGrid, RoundTripAgainstDirectDft) {
  const FrequencyLattice lattice(1, 8);
  const SpectralField f = random_hermitian(lattice, 31);
  const auto values = evaluate_on_grid(f, 32);
  const SpectralField back = analyze_grid(values, 32, lattice);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    EXPECT_NEAR(std::abs(back[i] - f[i]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(oracle::dft_1d(values, lattice.mode(i)[0]) - f[i]), 0.0, 1e-12);
  }
}

TEST(EvaluateOnGrid, RoundTripTwoDimensional) {
  const FrequencyLattice lattice(2, 5);
  const SpectralField f = random_hermitian(lattice, 32);
  const auto values = evaluate_on_grid(f, 12);
  const SpectralField back = analyze_grid(values, 12, lattice);
  for (std::size_t i = 0; i < lattice.size(); ++i) EXPECT_NEAR(std::abs(back[i] - f[i]), 0.0, 1e-12);
  // direct synthesis spot check
  const int j1 = 7;
  const int j2 = 3;
  Complex direct{};
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Mode l = lattice.mode(i);
    direct += f[i] * std::polar(1.0, 2.0 * oracle::pi * (l[0] * j1 + l[1] * j2) / 12.0);
  }
  EXPECT_NEAR(values[static_cast<std::size_t>(j1 * 12 + j2)], direct.real(), 1e-12);
}

TEST(EvaluateOnGrid, ParsevalQuadrature) {
  for (int d : {1, 2}) {
    const FrequencyLattice lattice(d, 6);
    const SpectralField f = random_hermitian(lattice, 40 + d);
    const std::size_t p = 13;
    const auto values = evaluate_on_grid(f, p);
    double quad = 0.0;
    for (double v : values) quad += v * v;
    quad /= static_cast<double>(values.size());
    EXPECT_NEAR(quad, sobolev_norm_sq(f, 0.0), 1e-10 * quad);
  }
}

TEST(EvaluateOnGrid, Errors) {
  const FrequencyLattice lattice(1, 4);
  EXPECT_THROW(evaluate_on_grid(random_complex(lattice, 1), 16), NotRealValuedError);
  EXPECT_THROW(evaluate_on_grid(SpectralField::zero(lattice), 0), RangeError);
  EXPECT_THROW(analyze_grid(std::vector<double>(8, 0.0), 8, lattice), RangeError);
  EXPECT_THROW(analyze_grid(std::vector<double>(7, 0.0), 9, lattice), DimensionError);
}
