#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"

using namespace entpoly;

namespace {

struct RandomRho {
  Matrix rho;
  std::vector<double> ev;  // oracle spectrum
};

RandomRho random_rho(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto m = oracle::random_density(n, rng);
  return {oracle::from_eigen(m), oracle::eigenvalues(m)};
}

Matrix maximally_mixed(std::size_t d) {
  return Matrix::identity(d) * cplx(1.0 / double(d));
}

}  // namespace

TEST(Entropies, PureStateIsZeroForEveryFamily) {
  const auto rho = basis_state({3}, std::vector<std::size_t>{1}).density();
  EXPECT_NEAR(f_q(rho, 2), 0.0, 1e-14);
  EXPECT_NEAR(f_q(rho, 4.5), 0.0, 1e-14);
  EXPECT_NEAR(unified_entropy(rho, 2, 0.5), 0.0, 1e-14);
  EXPECT_NEAR(renyi(rho, 3), 0.0, 1e-14);
  EXPECT_NEAR(tsallis(rho, 1.5), 0.0, 1e-14);
  EXPECT_NEAR(von_neumann(rho), 0.0, 1e-14);
  EXPECT_NEAR(renyi0(rho), 0.0, 1e-14);
}

TEST(Entropies, MaximallyMixedClosedForms) {
  for (std::size_t d : {2u, 3u, 5u}) {
    const auto rho = maximally_mixed(d);
    const double dd = double(d);
    EXPECT_NEAR(f_q(rho, 3), 1.0 - std::pow(dd, -2.0), 1e-13);
    EXPECT_NEAR(renyi(rho, 2.5), std::log2(dd), 1e-12);
    EXPECT_NEAR(von_neumann(rho), std::log2(dd), 1e-12);
    EXPECT_NEAR(renyi0(rho), std::log2(dd), 1e-12);
    EXPECT_NEAR(tsallis(rho, 2), 1.0 - 1.0 / dd, 1e-13);
    const double r = 2, s = 1.5;
    EXPECT_NEAR(unified_entropy(rho, r, s),
                (1.0 - std::pow(dd, r * s - s)) / ((1.0 - r) * s * std::pow(dd, r * s - s)), 1e-12);
  }
}

TEST(Entropies, AgreeWithSpectrumOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [rho, ev] = random_rho(2 + seed % 8, seed);
    EXPECT_NEAR(f_q(rho, 2), oracle::qconc(ev, 2), 1e-12);
    EXPECT_NEAR(f_q(rho, 4.5), oracle::qconc(ev, 4.5), 1e-12);
    EXPECT_NEAR(f_q(rho, 9), oracle::qconc(ev, 9), 1e-12);
    EXPECT_NEAR(unified_entropy(rho, 3, 2), oracle::unified(ev, 3, 2), 1e-12);
    EXPECT_NEAR(unified_entropy(rho, 1.5, 0.5), oracle::unified(ev, 1.5, 0.5), 1e-12);
    EXPECT_NEAR(renyi(rho, 0.5), oracle::renyi_bits(ev, 0.5), 1e-12);
    EXPECT_NEAR(renyi(rho, 2), oracle::renyi_bits(ev, 2), 1e-12);
    EXPECT_NEAR(tsallis(rho, 1.5), oracle::tsallis(ev, 1.5), 1e-12);
    EXPECT_NEAR(von_neumann(rho), oracle::vn_bits(ev), 1e-12);
  }
}

TEST(Entropies, UnifiedSpecialCases) {
  const auto [rho, ev] = random_rho(4, 77);
  // s = 1 is Tsallis exactly.
  EXPECT_NEAR(unified_entropy(rho, 2.5, 1.0), tsallis(rho, 2.5), 1e-13);
  // r = 2, s = 1 is F_2.
  EXPECT_NEAR(unified_entropy(rho, 2.0, 1.0), f_q(rho, 2), 1e-13);
  // Exact limits dispatch to the base-2 entropies.
  EXPECT_NEAR(unified_entropy(rho, 1.0, 0.7), von_neumann(rho), 1e-13);
  EXPECT_NEAR(unified_entropy(rho, 2.0, 0.0), renyi(rho, 2.0), 1e-13);
  EXPECT_NEAR(renyi(rho, 1.0), von_neumann(rho), 1e-13);
  EXPECT_NEAR(renyi(rho, 0.0), renyi0(rho), 1e-13);
  EXPECT_NEAR(tsallis(rho, 1.0), von_neumann(rho), 1e-13);
}

TEST(Entropies, NearbyLimitsAreContinuousUpToLogUnit) {
  // The algebraic formulas tend to natural-log entropies; the dispatched
  // limits are in bits.
  const double ln2 = std::numbers::ln2;
  const auto [rho, ev] = random_rho(5, 3);
  EXPECT_NEAR(unified_entropy(rho, 2.0, 1e-6), renyi(rho, 2.0) * ln2, 1e-4);
  EXPECT_NEAR(unified_entropy(rho, 1.0 + 1e-6, 2.0), von_neumann(rho) * ln2, 1e-3);
  EXPECT_NEAR(unified_entropy(rho, 3.0, 1.0 + 1e-6), tsallis(rho, 3.0), 1e-4);
}

TEST(Entropies, Renyi0CountsRank) {
  const std::vector<double> spec{0.5, 0.5, 1e-10, 0.0};
  EXPECT_NEAR(renyi0_of_spectrum(spec), 1.0, 1e-15);
  const std::vector<double> spec3{0.2, 0.3, 0.5};
  EXPECT_NEAR(renyi0_of_spectrum(spec3), std::log2(3.0), 1e-15);
}

TEST(Entropies, TinyNegativeEigenvaluesAreClipped) {
  // Rank-deficient density with roundoff-level negative eigenvalues.
  Matrix rho = Matrix::diagonal(std::vector<double>{0.5 + 5e-11, 0.5 + 5e-11, -1e-10});
  const auto spec = density_spectrum(rho);
  EXPECT_EQ(spec.front(), 0.0);
  EXPECT_NEAR(von_neumann(rho), 1.0, 1e-9);
}

TEST(Entropies, RejectsInvalidInput) {
  const auto rho = maximally_mixed(2);
  EXPECT_THROW(f_q(rho, 1.5), invalid_input);
  EXPECT_THROW(unified_entropy(rho, -1, 1), invalid_input);
  EXPECT_THROW(unified_entropy(rho, 2, -1), invalid_input);
  EXPECT_THROW(renyi(rho, -0.5), invalid_input);
  EXPECT_THROW(tsallis(rho, 0.0), invalid_input);

  EXPECT_THROW(von_neumann(Matrix::identity(2)), invalid_input);  // trace 2
  EXPECT_THROW(von_neumann(Matrix(2, 3)), invalid_input);
  Matrix nonherm(2, 2, {0.5, 0.1, 0.0, 0.5});
  EXPECT_THROW(von_neumann(nonherm), invalid_input);
  Matrix neg = Matrix::diagonal(std::vector<double>{1.5, -0.5});
  EXPECT_THROW(von_neumann(neg), invalid_input);
  // Indefinite but with a nonnegative diagonal: only the spectrum catches it.
  Matrix indefinite(2, 2, {0.5, 0.9, 0.9, 0.5});
  EXPECT_THROW(renyi(indefinite, 0.5), invalid_input);
}

TEST(Entropies, BoundedByLogDimension) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto [rho, ev] = random_rho(6, seed);
    EXPECT_LE(von_neumann(rho), std::log2(6.0) + 1e-12);
    EXPECT_LE(renyi(rho, 2), von_neumann(rho) + 1e-12);  // Renyi decreases in r
    EXPECT_LE(renyi(rho, 3), renyi(rho, 2) + 1e-12);
    EXPECT_LE(f_q(rho, 2), 1.0 - 1.0 / 6.0 + 1e-12);
  }
}
