#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"

using namespace entpoly;
constexpr double pi = std::numbers::pi;

namespace {

MultiQuditState zero_tensor_epr() {
  return tensor(basis_state({2}, std::vector<std::size_t>{0}), epr());
}

/// Reorders the sites of a three-site state: output site k is input site perm[k].
MultiQuditState permuted(const MultiQuditState& psi, std::array<std::size_t, 3> perm) {
  const auto& d = psi.dims();
  const Dims nd{d[perm[0]], d[perm[1]], d[perm[2]]};
  std::vector<cplx> out(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const auto digits = oracle::digits_of(i, d);
    const std::size_t idx =
        (digits[perm[0]] * nd[1] + digits[perm[1]]) * nd[2] + digits[perm[2]];
    out[idx] = psi.amplitudes()[i];
  }
  return MultiQuditState::from_amplitudes(nd, out);
}

}  // namespace

TEST(Polygon, ChecksEverySite) {
  const MarginalVector mv{0.5, 0.2, 0.2};
  const auto r = polygon_check(mv, 0);
  EXPECT_NEAR(r.margin, -0.1, 1e-15);
  EXPECT_FALSE(r.satisfied);
  EXPECT_TRUE(polygon_check(mv, 1).satisfied);
  EXPECT_THROW(polygon_check(mv, 3), invalid_input);
  EXPECT_THROW(polygon_check({}, 0), invalid_input);
  // Within tolerance counts as satisfied.
  EXPECT_TRUE(polygon_check({1.0 + 5e-10, 0.5, 0.5}, 0).satisfied);
}

TEST(Triangle, WStateAndProductExamples) {
  const auto w = triangle_check({0.5, 0.5, 0.5}, 1);
  EXPECT_NEAR(w.lower.margin, 0.5, 1e-15);
  EXPECT_NEAR(w.upper.margin, 0.5, 1e-15);

  const auto mv = marginal_vector(zero_tensor_epr(), MeasureSpec::q_concurrence(2));
  const auto p = triangle_check(mv, 0);
  EXPECT_NEAR(p.lower.lhs, 0.0, 1e-14);
  EXPECT_NEAR(p.lower.margin, 0.0, 1e-14);
  EXPECT_TRUE(p.lower.satisfied);
  EXPECT_NEAR(p.upper.rhs, 1.0, 1e-14);
  EXPECT_THROW(triangle_check({1, 2}, 0), invalid_input);
}

TEST(Triangle, GeneralizedGhzIsEquilateral) {
  const auto mv = marginal_vector(generalized_ghz3(pi / 2, pi / 4), MeasureSpec::eof());
  EXPECT_NEAR(mv[0], mv[1], 1e-12);
  EXPECT_NEAR(mv[1], mv[2], 1e-12);
  EXPECT_NEAR(mv[0], 1.0, 1e-12);
}

TEST(RenyiMixed, ProductAndGhz) {
  const auto prod = basis_state({2, 2, 2}, std::vector<std::size_t>{0, 0, 0});
  const auto p = renyi_mixed_check(prod, 0, 2.0);
  EXPECT_NEAR(p.lower.lhs, 0.0, 1e-14);
  EXPECT_NEAR(p.upper.rhs, 0.0, 1e-14);
  EXPECT_TRUE(p.satisfied());

  const auto g = renyi_mixed_check(ghz(2, 3), 0, 2.0);
  EXPECT_NEAR(g.upper.margin, 1.0, 1e-12);
  EXPECT_NEAR(g.lower.margin, 1.0, 1e-12);

  EXPECT_THROW(renyi_mixed_check(ghz(2, 3), 0, 1.0), invalid_input);
  EXPECT_THROW(renyi_mixed_check(ghz(2, 4), 0, 2.0), invalid_input);
  EXPECT_THROW(renyi_mixed_check(ghz(2, 3), 0, 0, 1, 2.0), invalid_input);
}

TEST(RenyiMixed, AbsoluteValueLowerBoundFailsOnPartlyProductState) {
  // |0> (x) (sqrt(1-e)|00> + sqrt(e)|11>): R_r of site 0 is 0 and the rank of
  // site 2 is 2, so |R_r(1) - R_0(2)| is close to 1 while the bound is 0. The
  // one-sided form R_r(1) - R_0(2) <= R_r(0) still holds. Violations are
  // returned as data.
  const double e = 1e-3;
  std::vector<cplx> amps(8);
  amps[0] = std::sqrt(1 - e);
  amps[3] = std::sqrt(e);
  const auto psi = MultiQuditState::from_amplitudes({2, 2, 2}, amps);
  for (double r : {0.5, 2.0, 3.0}) {
    const auto res = renyi_mixed_check(psi, 0, 1, 2, r);
    EXPECT_FALSE(res.lower.satisfied) << r;
    EXPECT_LT(res.lower.margin, -0.5) << r;
    EXPECT_TRUE(res.upper.satisfied) << r;
    const double rj = renyi(psi.reduced(SiteSet{1}), r);
    const double r0k = renyi0(psi.reduced(SiteSet{2}));
    EXPECT_LE(rj - r0k, res.lower.rhs + 1e-12) << r;
  }
}

TEST(Bipartition, Star4Example) {
  const auto r = bipartition_check(star4(), Bipartition::parse("0,1|2,3"),
                                   MeasureSpec::q_concurrence(2));
  EXPECT_NEAR(r.lhs, 0.75, 1e-13);
  EXPECT_NEAR(r.rhs, 7.0 / 8 + 0.5, 1e-13);
  EXPECT_TRUE(r.satisfied);
  // A single-site side_a reduces to an equality.
  const auto one = bipartition_check(haar_random({2, 2, 2, 2}, 1), one_to_group(2, 4),
                                     MeasureSpec::eof());
  EXPECT_NEAR(one.margin, 0.0, 1e-12);
}

TEST(Bipartition, HoldsOnFiveSiteRandomStates) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto psi = haar_random({2, 2, 2, 2, 2}, seed);
    for (const auto& cut : default_tau_hat_cuts(5))
      for (const auto& spec : {MeasureSpec::q_concurrence(3), MeasureSpec::unified(2, 1),
                               MeasureSpec::eof()})
        EXPECT_TRUE(bipartition_check(psi, cut, spec).satisfied) << cut.to_string();
  }
}

TEST(Tau, ClosedForms) {
  for (std::size_t d : {2u, 3u})
    for (std::size_t m : {3u, 4u, 5u}) {
      const double c = 1 - 1.0 / std::pow(double(d), 1.0);  // q = 2
      EXPECT_NEAR(tau_indicator(ghz(d, m), MeasureSpec::q_concurrence(2)).value,
                  double(m - 2) * c, 1e-10);
    }
  const double w = 1 - 4.0 / 9 - 1.0 / 9;
  EXPECT_NEAR(tau_indicator(w_qutrit(), MeasureSpec::q_concurrence(2)).value, w, 1e-12);
  const auto prod = tau_indicator(zero_tensor_epr(), MeasureSpec::eof());
  EXPECT_NEAR(prod.value, 0.0, 1e-12);
  EXPECT_EQ(prod.argmin, 1u);
  EXPECT_THROW(tau_of_marginals({1.0}), invalid_input);
}

TEST(TauHat, DefaultCutEnumeration) {
  const auto cuts4 = default_tau_hat_cuts(4);
  EXPECT_EQ(cuts4.size(), 10u);  // 6 pairs + 4 triples
  EXPECT_EQ(cuts4.front().to_string(), "0,1|2,3");
  for (const auto& c : cuts4) EXPECT_GE(c.side_a.size(), 2u);
  EXPECT_EQ(default_tau_hat_cuts(2).size(), 2u);
  EXPECT_THROW(default_tau_hat_cuts(1), invalid_input);
}

TEST(TauHat, Star4) {
  for (double q : {2.0, 3.0, 4.0}) {
    const auto cq = [q](double d) { return 1 - std::pow(d, 1 - q); };
    const auto res = tau_hat_indicator(star4(), {}, MeasureSpec::q_concurrence(q));
    EXPECT_NEAR(res.value, 2 * cq(2) - cq(4), 1e-10);
  }
  EXPECT_NEAR(tau_hat_indicator(star4(), {}, MeasureSpec::q_concurrence(2)).value, 0.25, 1e-12);
  // The explicit 3,4 | 1,2 cut gives the same value.
  const std::vector<Bipartition> one{Bipartition::parse("2,3|0,1")};
  EXPECT_NEAR(tau_hat_indicator(star4(), one, MeasureSpec::q_concurrence(2)).value, 0.25, 1e-12);
}

TEST(TauHat, TwoSiteStatesGiveZero) {
  const auto psi = haar_random({2, 3}, 4);
  const std::vector<Bipartition> cut{Bipartition::parse("0|1")};
  EXPECT_NEAR(tau_hat_indicator(psi, cut, MeasureSpec::eof()).value, 0.0, 1e-12);
  const std::vector<Bipartition> bad{Bipartition::parse("0|2")};
  EXPECT_THROW(tau_hat_indicator(psi, bad, MeasureSpec::eof()), invalid_input);
}

TEST(EofProductTest, AgreesWithProductOracle) {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 60; ++t) {
    // Half product-constructed (all three placements of the lone site), half random.
    MultiQuditState psi = haar_random({3, 3, 3}, 500 + t);
    if (t % 2 == 0) {
      const auto lone = MultiQuditState::from_amplitudes({3}, oracle::random_vector(3, rng));
      const auto pair = MultiQuditState::from_amplitudes({3, 3}, oracle::random_vector(9, rng));
      const auto base = tensor(lone, pair);
      const std::size_t where = (t / 2) % 3;
      psi = where == 0 ? base : where == 1 ? permuted(base, {1, 0, 2}) : permuted(base, {1, 2, 0});
    }
    const bool product = oracle::has_product_site(oracle::amps_of(psi), psi.dims(), 1e-9);
    EXPECT_EQ(eof_product_test(psi), product) << t;
    EXPECT_EQ(product, t % 2 == 0) << t;
  }
  EXPECT_THROW(eof_product_test(ghz(2, 4)), invalid_input);
  EXPECT_TRUE(eof_product_test(generalized_ghz3(pi, 0.7)));
  EXPECT_FALSE(eof_product_test(generalized_ghz3(pi / 2, pi / 4)));
}

TEST(EntropyBounds, FqSubadditivityOnMixedStates) {
  std::mt19937_64 rng(9);
  const Dims dims{2, 3};
  for (int t = 0; t < 300; ++t) {
    // Every third state is pure.
    const auto rho = t % 3 == 0 ? Matrix::projector(oracle::random_vector(6, rng))
                                : oracle::from_eigen(oracle::random_density(6, rng));
    const auto ra = partial_trace(rho, dims, SiteSet{0});
    const auto rb = partial_trace(rho, dims, SiteSet{1});
    for (double q : {2.0, 3.0, 4.5}) {
      const double fab = f_q(rho, q), fa = f_q(ra, q), fb = f_q(rb, q);
      EXPECT_LE(fab, fa + fb + 1e-9);
      EXPECT_LE(std::abs(fa - fb), fab + 1e-9);
    }
    for (double r : {0.5, 2.0, 3.0})
      EXPECT_LE(renyi(ra, r) - renyi0(rb), renyi(rho, r) + 1e-9);
  }
}

TEST(RenyiMixed, OneSidedLowerBoundHoldsWhereAbsoluteFormFails) {
  std::vector<cplx> amps(8);
  amps[0] = std::sqrt(0.999);
  amps[3] = std::sqrt(0.001);
  const auto psi = MultiQuditState::from_amplitudes({2, 2, 2}, amps);
  EXPECT_TRUE(renyi_weak_check(psi, 0, 1, 2, 2.0).satisfied);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto h = haar_random({2, 3, 4}, seed);
    for (double r : {0.5, 2.0, 3.0})
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          if (j != i) EXPECT_TRUE(renyi_weak_check(h, i, j, 3 - i - j, r).satisfied);
  }
}
