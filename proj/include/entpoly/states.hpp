#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "entpoly/errors.hpp"
#include "entpoly/tensor.hpp"

namespace entpoly {

/// Normalized pure state on a product of qudits.
class MultiQuditState {
 public:
  /// Accepts amplitudes whose norm is within 1e-6 of 1 and renormalizes them.
  static MultiQuditState from_amplitudes(Dims dims, std::vector<cplx> amps) {
    check_dims(dims);
    if (amps.size() != total_dim(dims))
      throw invalid_input("state: amplitude count " + std::to_string(amps.size()) +
                          " does not match product of dims " +
                          std::to_string(total_dim(dims)));
    const double norm = norm_of(amps);
    if (norm == 0.0) throw invalid_input("state: zero vector");
    if (std::abs(norm - 1.0) > 1e-6)
      throw invalid_input("state: norm " + std::to_string(norm) +
                          " is not within 1e-6 of 1");
    return MultiQuditState(std::move(dims), std::move(amps));
  }

  /// Normalizes any nonzero vector; for constructors, not for user input.
  static MultiQuditState normalized(Dims dims, std::vector<cplx> amps) {
    check_dims(dims);
    if (amps.size() != total_dim(dims))
      throw invalid_input("state: amplitude count does not match product of dims");
    if (norm_of(amps) == 0.0) throw invalid_input("state: zero vector");
    return MultiQuditState(std::move(dims), std::move(amps));
  }

  const Dims& dims() const { return dims_; }
  std::size_t sites() const { return dims_.size(); }
  std::size_t dim() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }

  Matrix density() const { return Matrix::projector(amps_); }
  Matrix reduced(const SiteSet& keep) const { return reduced_of_pure(dims_, amps_, keep); }

 private:
  MultiQuditState(Dims dims, std::vector<cplx> amps)
      : dims_(std::move(dims)), amps_(std::move(amps)) {
    // Vectors already normalized to rounding are kept bit-exact, so a state
    // survives a file round trip unchanged.
    const double norm = norm_of(amps_);
    if (std::abs(norm - 1.0) > 1e-14)
      for (auto& a : amps_) a /= norm;
  }

  static double norm_of(std::span<const cplx> amps) {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
  }

  Dims dims_;
  std::vector<cplx> amps_;
};

inline MultiQuditState tensor(const MultiQuditState& a, const MultiQuditState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<cplx> amps;
  amps.reserve(a.dim() * b.dim());
  for (const auto& x : a.amplitudes())
    for (const auto& y : b.amplitudes()) amps.push_back(x * y);
  return MultiQuditState::normalized(std::move(dims), std::move(amps));
}

/// Computational basis state |digits[0] digits[1] ...>.
inline MultiQuditState basis_state(Dims dims, std::span<const std::size_t> digits) {
  check_dims(dims);
  if (digits.size() != dims.size())
    throw invalid_input("basis_state: digit count does not match dims");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (digits[i] >= dims[i]) throw invalid_input("basis_state: digit out of range");
    flat = flat * dims[i] + digits[i];
  }
  std::vector<cplx> amps(total_dim(dims));
  amps[flat] = 1.0;
  return MultiQuditState::normalized(std::move(dims), std::move(amps));
}

/// (1/sqrt d) sum_j |j>^{(x) m}
inline MultiQuditState ghz(std::size_t d, std::size_t m) {
  if (d < 2 || m < 2) throw invalid_input("ghz: need d >= 2 and m >= 2");
  Dims dims(m, d);
  std::vector<cplx> amps(total_dim(dims));
  // |j...j> has flat index j * (1 + d + d^2 + ... + d^(m-1)).
  std::size_t repunit = 0;
  for (std::size_t i = 0; i < m; ++i) repunit = repunit * d + 1;
  for (std::size_t j = 0; j < d; ++j) amps[j * repunit] = 1.0 / std::sqrt(double(d));
  return MultiQuditState::normalized(std::move(dims), std::move(amps));
}

inline MultiQuditState epr() { return ghz(2, 2); }

/// sin(t)cos(p)|000> + sin(t)sin(p)|111> + cos(t)|222> on three qutrits.
inline MultiQuditState generalized_ghz3(double theta, double phi) {
  Dims dims{3, 3, 3};
  std::vector<cplx> amps(27);
  amps[0] = std::sin(theta) * std::cos(phi);
  amps[13] = std::sin(theta) * std::sin(phi);
  amps[26] = std::cos(theta);
  return MultiQuditState::normalized(std::move(dims), std::move(amps));
}

/// (1/sqrt 6) sum_{i=1,2} (|i00> + |0i0> + |00i>)
inline MultiQuditState w_qutrit() {
  Dims dims{3, 3, 3};
  std::vector<cplx> amps(27);
  const double a = 1.0 / std::sqrt(6.0);
  for (std::size_t i = 1; i <= 2; ++i) {
    amps[i * 9] = a;
    amps[i * 3] = a;
    amps[i] = a;
  }
  return MultiQuditState::normalized(std::move(dims), std::move(amps));
}

/// cos(t)|W_c> + e^{ip} sin(t)|GHZ_3>; the two components are orthogonal, so
/// the sum is normalized for every (t, p).
inline MultiQuditState w_interp(double theta, double phi) {
  const auto w = w_qutrit();
  const auto g = ghz(3, 3);
  std::vector<cplx> amps(27);
  const cplx e = std::polar(1.0, phi);
  for (std::size_t i = 0; i < 27; ++i)
    amps[i] = std::cos(theta) * w.amplitudes()[i] + e * std::sin(theta) * g.amplitudes()[i];
  return MultiQuditState::normalized(Dims{3, 3, 3}, std::move(amps));
}

/// Four-party star of three EPR pairs with the hub's three halves merged into
/// one 8-level site: (1/2sqrt2) sum_{b,c,e} |4b+2c+e, b, c, e>, dims [8,2,2,2].
inline MultiQuditState star4() {
  Dims dims{8, 2, 2, 2};
  std::vector<cplx> amps(64);
  const double a = 1.0 / (2.0 * std::sqrt(2.0));
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t e = 0; e < 2; ++e) {
        const std::size_t hub = 4 * b + 2 * c + e;
        amps[hub * 8 + b * 4 + c * 2 + e] = a;
      }
  return MultiQuditState::normalized(std::move(dims), std::move(amps));
}

/// Uniform (Haar) random pure state: i.i.d. standard complex Gaussian
/// amplitudes, normalized. Deterministic for a given seed.
inline MultiQuditState haar_random(Dims dims, std::uint64_t seed) {
  check_dims(dims);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> amps(total_dim(dims));
  for (auto& a : amps) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a = cplx(re, im);
  }
  return MultiQuditState::normalized(std::move(dims), std::move(amps));
}

}  // namespace entpoly
