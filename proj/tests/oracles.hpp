#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's partial trace, eigensolver or entropy code.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "entpoly/entpoly.hpp"

namespace oracle {

using entpoly::cplx;
using entpoly::Dims;
using CMat = Eigen::MatrixXcd;

inline CMat to_eigen(const entpoly::Matrix& m) {
  CMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline entpoly::Matrix from_eigen(const CMat& m) {
  entpoly::Matrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline std::vector<std::size_t> digits_of(std::size_t index, const Dims& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = index % dims[k];
    index /= dims[k];
  }
  return d;
}

/// Reduced density of a pure state on `keep` (ascending), by summing the
/// explicit outer product over matching traced digits.
inline CMat partial_trace(const std::vector<cplx>& amps, const Dims& dims,
                          const std::vector<std::size_t>& keep) {
  std::vector<bool> kept(dims.size(), false);
  std::size_t dk = 1;
  for (auto s : keep) {
    kept[s] = true;
    dk *= dims[s];
  }
  auto keep_index = [&](const std::vector<std::size_t>& d) {
    std::size_t idx = 0;
    for (auto s : keep) idx = idx * dims[s] + d[s];
    return idx;
  };
  CMat out = CMat::Zero(dk, dk);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto di = digits_of(i, dims);
    for (std::size_t j = 0; j < amps.size(); ++j) {
      const auto dj = digits_of(j, dims);
      bool match = true;
      for (std::size_t s = 0; s < dims.size() && match; ++s)
        if (!kept[s] && di[s] != dj[s]) match = false;
      if (match) out(keep_index(di), keep_index(dj)) += amps[i] * std::conj(amps[j]);
    }
  }
  return out;
}

/// Ascending eigenvalues of a Hermitian matrix.
inline std::vector<double> eigenvalues(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

/// Squared Schmidt coefficients across `side_a | rest`, from an SVD of the
/// coefficient matrix with side_a sites as the row index.
inline std::vector<double> schmidt_weights(const std::vector<cplx>& amps, const Dims& dims,
                                           const std::vector<std::size_t>& side_a) {
  std::vector<bool> in_a(dims.size(), false);
  std::size_t da = 1;
  for (auto s : side_a) {
    in_a[s] = true;
    da *= dims[s];
  }
  const std::size_t db = amps.size() / da;
  CMat m = CMat::Zero(da, db);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto d = digits_of(i, dims);
    std::size_t ra = 0, rb = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (in_a[s]) ra = ra * dims[s] + d[s];
      else rb = rb * dims[s] + d[s];
    }
    m(ra, rb) = amps[i];
  }
  Eigen::JacobiSVD<CMat> svd(m);
  std::vector<double> w;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    w.push_back(svd.singularValues()(k) * svd.singularValues()(k));
  return w;
}

inline double power_sum(const std::vector<double>& w, double p) {
  double s = 0.0;
  for (double x : w)
    if (x > 1e-14) s += std::pow(x, p);
  return s;
}

inline double qconc(const std::vector<double>& w, double q) { return 1.0 - power_sum(w, q); }
inline double unified(const std::vector<double>& w, double r, double s) {
  return (std::pow(power_sum(w, r), s) - 1.0) / ((1.0 - r) * s);
}
inline double renyi_bits(const std::vector<double>& w, double r) {
  return std::log2(power_sum(w, r)) / (1.0 - r);
}
inline double tsallis(const std::vector<double>& w, double r) {
  return (power_sum(w, r) - 1.0) / (1.0 - r);
}
inline double vn_bits(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w)
    if (x > 1e-14) s -= x * std::log2(x);
  return s;
}
inline double concurrence(const std::vector<double>& w) {
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - power_sum(w, 2.0))));
}
/// ((sum sqrt(w))^2 - 1) / 2 for a pure state.
inline double negativity(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w) s += std::sqrt(std::max(0.0, x));
  return (s * s - 1.0) / 2.0;
}

/// Measure value from Schmidt weights, mirroring MeasureSpec semantics.
inline double measure(const std::vector<double>& w, const entpoly::MeasureSpec& spec) {
  using K = entpoly::MeasureKind;
  switch (spec.kind) {
    case K::q_concurrence: return qconc(w, spec.q);
    case K::unified:
      if (std::abs(spec.r - 1.0) < 1e-9) return vn_bits(w);
      if (spec.s < 1e-9) return renyi_bits(w, spec.r);
      return unified(w, spec.r, spec.s);
    case K::renyi: return renyi_bits(w, spec.r);
    case K::tsallis: return tsallis(w, spec.r);
    case K::eof: return vn_bits(w);
    case K::concurrence: return concurrence(w);
    case K::negativity: return negativity(w);
  }
  return NAN;
}

/// True when some single site is (numerically) unentangled from the rest,
/// judged by the purity of its reduced density.
inline bool has_product_site(const std::vector<cplx>& amps, const Dims& dims,
                             double tol = 1e-9) {
  for (std::size_t s = 0; s < dims.size(); ++s) {
    const CMat rho = partial_trace(amps, dims, {s});
    const double purity = (rho * rho).trace().real();
    if (purity >= 1.0 - tol) return true;
  }
  return false;
}

inline std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  double norm = 0.0;
  for (auto& x : v) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

inline CMat random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  return (a + a.adjoint()) / 2.0;
}

/// Random full-rank density matrix G G^dag / Tr.
inline CMat random_density(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  CMat rho = a * a.adjoint();
  return rho / rho.trace().real();
}

/// Haar-ish unitary from the QR factorization of a Gaussian matrix.
inline CMat random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<CMat> qr(a);
  return qr.householderQ();
}

/// Applies `u` to site `site` of a pure state.
inline std::vector<cplx> apply_local(const std::vector<cplx>& amps, const Dims& dims,
                                     std::size_t site, const CMat& u) {
  std::vector<cplx> out(amps.size(), 0.0);
  std::size_t stride = 1;
  for (std::size_t k = dims.size(); k-- > site + 1;) stride *= dims[k];
  const std::size_t d = dims[site];
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::size_t digit = (i / stride) % d;
    const std::size_t base = i - digit * stride;
    for (std::size_t a = 0; a < d; ++a) out[base + a * stride] += u(a, digit) * amps[i];
  }
  return out;
}

inline std::vector<cplx> amps_of(const entpoly::MultiQuditState& psi) {
  return {psi.amplitudes().begin(), psi.amplitudes().end()};
}

}  // namespace oracle
