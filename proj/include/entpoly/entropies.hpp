#pragma once

// Parameterized entropies of density matrices.
//
// Conventions:
//   * Renyi and von Neumann entropies are in bits; F_q, Tsallis and unified
//     entropies are algebraic.
//   * Eigenvalues in [-1e-9, 0) are clipped to 0; anything below -1e-9 is
//     rejected as not a density matrix.
//   * Power sums and logarithms only see eigenvalues above 1e-12, so 0 log 0 = 0.
//   * Integer powers 2..8 of Tr(rho^p) go through matrix multiplication;
//     everything else through the spectrum.
//   * Limits: unified with |r-1| <= 1e-9 is von Neumann, unified with
//     s <= 1e-9 is Renyi, Renyi/Tsallis with |r-1| <= 1e-9 are von Neumann.
//     All three dispatch to the base-2 value, so near r = 1 the algebraic
//     unified formula (which tends to the natural-log entropy) differs from
//     the dispatched value by the factor ln 2.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "entpoly/eigen.hpp"
#include "entpoly/errors.hpp"
#include "entpoly/tensor.hpp"

namespace entpoly {

inline constexpr double kClipTol = 1e-9;
inline constexpr double kSpectrumFloor = 1e-12;
inline constexpr double kRankCut = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kLimitTol = 1e-9;

struct Fq { double q; };
struct Unified { double r, s; };
struct Renyi { double r; };
struct Tsallis { double r; };
struct VonNeumann {};
struct Renyi0 {};

using EntropyParams = std::variant<Fq, Unified, Renyi, Tsallis, VonNeumann, Renyi0>;

namespace detail {

inline bool near_one(double r) { return std::abs(r - 1.0) <= kLimitTol; }

inline bool small_integer_power(double p) {
  return p >= 2.0 && p <= 8.0 && std::floor(p) == p;
}

}  // namespace detail

/// Cheap density checks: square, Hermitian, unit trace, nonnegative diagonal.
inline void check_density(const Matrix& rho) {
  if (!rho.is_square() || rho.rows() == 0)
    throw invalid_input("density matrix: not square");
  if (!is_hermitian(rho, 1e-10)) throw invalid_input("density matrix: not Hermitian");
  const double tr = trace(rho).real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw invalid_input("density matrix: trace " + std::to_string(tr) + " is not 1");
  for (std::size_t i = 0; i < rho.rows(); ++i)
    if (rho(i, i).real() < -kClipTol)
      throw invalid_input("density matrix: negative diagonal entry");
}

/// Clipped eigenvalues of a density matrix, ascending.
inline std::vector<double> density_spectrum(const Matrix& rho) {
  check_density(rho);
  auto ev = hermitian_eigenvalues(rho);
  for (auto& x : ev) {
    if (x < -kClipTol)
      throw invalid_input("density matrix: eigenvalue " + std::to_string(x) +
                          " is negative");
    if (x < 0.0) x = 0.0;
  }
  return ev;
}

/// Validates and normalizes parameters, resolving the limit cases.
inline EntropyParams resolve(const EntropyParams& p) {
  return std::visit(
      [](const auto& v) -> EntropyParams {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Fq>) {
          if (!(v.q >= 2.0)) throw invalid_input("F_q: q must be >= 2");
          return v;
        } else if constexpr (std::is_same_v<T, Unified>) {
          if (!(v.r >= 0.0) || !(v.s >= 0.0))
            throw invalid_input("unified entropy: need r >= 0 and s >= 0");
          if (detail::near_one(v.r)) return VonNeumann{};
          if (v.s <= kLimitTol) return Renyi{v.r};
          return v;
        } else if constexpr (std::is_same_v<T, Renyi>) {
          if (!(v.r >= 0.0)) throw invalid_input("Renyi entropy: need r >= 0");
          if (detail::near_one(v.r)) return VonNeumann{};
          if (v.r == 0.0) return Renyi0{};
          return v;
        } else if constexpr (std::is_same_v<T, Tsallis>) {
          if (!(v.r > 0.0)) throw invalid_input("Tsallis entropy: need r > 0");
          if (detail::near_one(v.r)) return VonNeumann{};
          return v;
        } else {
          return v;
        }
      },
      p);
}

// --- spectrum level --------------------------------------------------------

/// sum lambda^p over lambda > 1e-12.
inline double power_sum(std::span<const double> spectrum, double p) {
  double s = 0.0;
  for (auto x : spectrum)
    if (x > kSpectrumFloor) s += std::exp(p * std::log(x));
  return s;
}

inline double von_neumann_of_spectrum(std::span<const double> spectrum) {
  double s = 0.0;
  for (auto x : spectrum)
    if (x > kSpectrumFloor) s -= x * std::log2(x);
  return s;
}

inline double renyi0_of_spectrum(std::span<const double> spectrum) {
  const auto rank = std::count_if(spectrum.begin(), spectrum.end(),
                                  [](double x) { return x > kRankCut; });
  return rank > 0 ? std::log2(double(rank)) : 0.0;
}

namespace detail {

// Each functional of Tr(rho^p); `trp` supplies that trace.
template <class TracePower>
double evaluate(const EntropyParams& resolved, std::span<const double> spectrum,
                TracePower trp) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Fq>) {
          return 1.0 - trp(v.q);
        } else if constexpr (std::is_same_v<T, Unified>) {
          return (std::pow(trp(v.r), v.s) - 1.0) / ((1.0 - v.r) * v.s);
        } else if constexpr (std::is_same_v<T, Renyi>) {
          return std::log2(trp(v.r)) / (1.0 - v.r);
        } else if constexpr (std::is_same_v<T, Tsallis>) {
          return (trp(v.r) - 1.0) / (1.0 - v.r);
        } else if constexpr (std::is_same_v<T, VonNeumann>) {
          return von_neumann_of_spectrum(spectrum);
        } else {
          return renyi0_of_spectrum(spectrum);
        }
      },
      resolved);
}

inline bool needs_spectrum(const EntropyParams& resolved) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Fq>) return !small_integer_power(v.q);
        else if constexpr (std::is_same_v<T, Unified> || std::is_same_v<T, Renyi> ||
                           std::is_same_v<T, Tsallis>)
          return !small_integer_power(v.r);
        else return true;
      },
      resolved);
}

}  // namespace detail

/// Entropy of an already-computed (clipped) spectrum.
inline double entropy_of_spectrum(std::span<const double> spectrum,
                                  const EntropyParams& params) {
  return detail::evaluate(resolve(params), spectrum,
                          [&](double p) { return power_sum(spectrum, p); });
}

// --- matrix level ----------------------------------------------------------

inline double entropy(const Matrix& rho, const EntropyParams& params) {
  const auto resolved = resolve(params);
  if (detail::needs_spectrum(resolved)) {
    const auto spectrum = density_spectrum(rho);
    return entropy_of_spectrum(spectrum, resolved);
  }
  check_density(rho);
  return detail::evaluate(resolved, {}, [&](double p) {
    return trace_power(rho, static_cast<int>(p));
  });
}

/// F_q(rho) = 1 - Tr rho^q, q >= 2.
inline double f_q(const Matrix& rho, double q) { return entropy(rho, Fq{q}); }

/// [(Tr rho^r)^s - 1] / ((1 - r) s)
inline double unified_entropy(const Matrix& rho, double r, double s) {
  return entropy(rho, Unified{r, s});
}

inline double renyi(const Matrix& rho, double r) { return entropy(rho, Renyi{r}); }
inline double tsallis(const Matrix& rho, double r) { return entropy(rho, Tsallis{r}); }
inline double von_neumann(const Matrix& rho) { return entropy(rho, VonNeumann{}); }
/// log2 of the number of eigenvalues above 1e-9.
inline double renyi0(const Matrix& rho) { return entropy(rho, Renyi0{}); }

}  // namespace entpoly
