#pragma once

// Polygon, triangle and bipartition inequalities among marginal
// entanglements, and the indicators tau and tau-hat built from them.
// Violations are reported as data (satisfied == false), never thrown.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "entpoly/errors.hpp"
#include "entpoly/measures.hpp"
#include "entpoly/states.hpp"

namespace entpoly {

inline constexpr double kDefaultTol = 1e-9;

/// lhs <= rhs, up to tol.
struct InequalityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  double tol = kDefaultTol;
  bool satisfied = true;

  static InequalityResult of(double lhs, double rhs, double tol) {
    const double margin = rhs - lhs;
    return {lhs, rhs, margin, tol, margin >= -tol};
  }
};

/// Lower and upper halves of a two-sided bound.
struct TwoSidedResult {
  InequalityResult lower;
  InequalityResult upper;
  bool satisfied() const { return lower.satisfied && upper.satisfied; }
};

struct IndicatorResult {
  double value = 0.0;
  std::size_t argmin = 0;  // minimizing site (tau) or cut index (tau-hat)
};

/// mv[j] <= sum_{k != j} mv[k]
inline InequalityResult polygon_check(const MarginalVector& mv, std::size_t j,
                                      double tol = kDefaultTol) {
  if (mv.empty()) throw invalid_input("polygon_check: empty marginal vector");
  if (j >= mv.size()) throw invalid_input("polygon_check: site out of range");
  double rest = 0.0;
  for (std::size_t k = 0; k < mv.size(); ++k)
    if (k != j) rest += mv[k];
  return InequalityResult::of(mv[j], rest, tol);
}

namespace detail {

inline std::array<std::size_t, 2> other_two(std::size_t i) {
  if (i > 2) throw invalid_input("tripartite check: site must be 0, 1 or 2");
  std::array<std::size_t, 2> out{};
  std::size_t n = 0;
  for (std::size_t k = 0; k < 3; ++k)
    if (k != i) out[n++] = k;
  return out;
}

}  // namespace detail

/// |mv[j] - mv[k]| <= mv[i] <= mv[j] + mv[k] with {j, k} the other two sites.
inline TwoSidedResult triangle_check(const MarginalVector& mv, std::size_t i,
                                     double tol = kDefaultTol) {
  if (mv.size() != 3) throw invalid_input("triangle_check: need exactly three marginals");
  const auto [j, k] = detail::other_two(i);
  return {InequalityResult::of(std::abs(mv[j] - mv[k]), mv[i], tol),
          InequalityResult::of(mv[i], mv[j] + mv[k], tol)};
}

/// |R_r^{j} - R_0^{k}| <= R_r^{i} <= R_r^{j} + R_0^{k} for a three-site pure
/// state, where R^{x} is the Renyi entanglement of x against the rest.
inline TwoSidedResult renyi_mixed_check(const MultiQuditState& psi, std::size_t i,
                                        std::size_t j, std::size_t k, double r,
                                        double tol = kDefaultTol) {
  if (psi.sites() != 3) throw invalid_input("renyi_mixed_check: need a three-site state");
  if (i > 2 || j > 2 || k > 2 || i == j || j == k || i == k)
    throw invalid_input("renyi_mixed_check: i, j, k must be distinct sites 0..2");
  if (!(r >= 0.0) || std::abs(r - 1.0) <= kLimitTol)
    throw invalid_input("renyi_mixed_check: need r >= 0 and r != 1");

  auto marginal = [&](std::size_t site, const EntropyParams& p) {
    return entropy(psi.reduced(SiteSet{site}), p);
  };
  const double ri = marginal(i, Renyi{r});
  const double rj = marginal(j, Renyi{r});
  const double r0k = marginal(k, Renyi0{});
  return {InequalityResult::of(std::abs(rj - r0k), ri, tol),
          InequalityResult::of(ri, rj + r0k, tol)};
}

inline TwoSidedResult renyi_mixed_check(const MultiQuditState& psi, std::size_t i,
                                        double r, double tol = kDefaultTol) {
  const auto [j, k] = detail::other_two(i);
  return renyi_mixed_check(psi, i, j, k, r, tol);
}

/// R_r^{j} - R_0^{k} <= R_r^{i}, the one-sided lower bound. Unlike the
/// absolute-value form above it follows from weak subadditivity and holds for
/// every pure state.
inline InequalityResult renyi_weak_check(const MultiQuditState& psi, std::size_t i,
                                         std::size_t j, std::size_t k, double r,
                                         double tol = kDefaultTol) {
  const auto two = renyi_mixed_check(psi, i, j, k, r, tol);
  const double rj = entropy(psi.reduced(SiteSet{j}), Renyi{r});
  const double r0k = entropy(psi.reduced(SiteSet{k}), Renyi0{});
  return InequalityResult::of(rj - r0k, two.lower.rhs, tol);
}

/// E^{A|B} <= sum_{a in A} E^{a|rest}
inline InequalityResult bipartition_check(const MultiQuditState& psi, const Bipartition& cut,
                                          const MeasureSpec& spec,
                                          double tol = kDefaultTol) {
  const double lhs = measure_pure(psi, cut, spec);
  double rhs = 0.0;
  for (auto a : cut.side_a) rhs += measure_pure(psi, one_to_group(a, psi.sites()), spec);
  return InequalityResult::of(lhs, rhs, tol);
}

/// min_j (sum_{k != j} mv[k] - mv[j])
inline IndicatorResult tau_of_marginals(const MarginalVector& mv) {
  if (mv.size() < 2) throw invalid_input("tau: need at least two sites");
  const double total = total_entanglement(mv);
  IndicatorResult best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t j = 0; j < mv.size(); ++j) {
    const double v = (total - mv[j]) - mv[j];
    if (v < best.value) best = {v, j};
  }
  return best;
}

inline IndicatorResult tau_indicator(const MultiQuditState& psi, const MeasureSpec& spec) {
  return tau_of_marginals(marginal_vector(psi, spec));
}

/// Cuts searched by tau-hat when none are given: every side_a with at least
/// two sites and a nonempty complement, in both orientations, ordered by
/// bitmask of side_a. States with fewer than three sites fall back to all
/// proper nonempty side_a.
inline std::vector<Bipartition> default_tau_hat_cuts(std::size_t n_sites) {
  if (n_sites < 2) throw invalid_input("tau_hat: need at least two sites");
  if (n_sites > 20) throw invalid_input("tau_hat: too many sites to enumerate cuts");
  const std::size_t min_a = n_sites < 3 ? 1 : 2;
  std::vector<Bipartition> cuts;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n_sites); ++mask) {
    std::vector<std::size_t> a;
    for (std::size_t s = 0; s < n_sites; ++s)
      if (mask >> s & 1) a.push_back(s);
    if (a.size() < min_a) continue;
    SiteSet side_a(std::move(a));
    cuts.push_back({side_a, side_a.complement(n_sites)});
  }
  return cuts;
}

/// min over cuts of (sum_{a in A} E^{a|rest} - E^{A|B}); argmin indexes `cuts`
/// (or default_tau_hat_cuts when `cuts` is empty).
inline IndicatorResult tau_hat_indicator(const MultiQuditState& psi,
                                         std::vector<Bipartition> cuts,
                                         const MeasureSpec& spec) {
  if (cuts.empty()) cuts = default_tau_hat_cuts(psi.sites());
  for (const auto& c : cuts) c.validate(psi.sites());
  const MarginalVector mv = marginal_vector(psi, spec);

  IndicatorResult best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    double sum = 0.0;
    for (auto a : cuts[c].side_a) sum += mv[a];
    const double v = sum - measure_pure(psi, cuts[c], spec);
    if (v < best.value) best = {v, c};
  }
  return best;
}

/// True iff tau with entanglement of formation is below tol, which for three
/// sites happens exactly when one site factors off the other two.
inline bool eof_product_test(const MultiQuditState& psi, double tol = kDefaultTol) {
  if (psi.sites() != 3) throw invalid_input("eof_product_test: need a three-site state");
  return tau_indicator(psi, MeasureSpec::eof()).value < tol;
}

}  // namespace entpoly
