#pragma once

// Dense complex matrices over heterogeneous multi-qudit index spaces.
//
// Index convention: site 0 is the leftmost tensor factor and the most
// significant digit of the row-major flat index.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entpoly/errors.hpp"

namespace entpoly {

using cplx = std::complex<double>;

/// Per-site local dimensions, each >= 2.
using Dims = std::vector<std::size_t>;

inline std::size_t total_dim(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>{});
}

inline void check_dims(std::span<const std::size_t> dims) {
  if (dims.empty()) throw invalid_input("dims: empty dimension list");
  for (auto d : dims)
    if (d < 2) throw invalid_input("dims: every local dimension must be >= 2");
}

/// Sorted, duplicate-free list of site positions.
class SiteSet {
 public:
  SiteSet() = default;
  SiteSet(std::initializer_list<std::size_t> sites)
      : SiteSet(std::vector<std::size_t>(sites)) {}
  explicit SiteSet(std::vector<std::size_t> sites) : sites_(std::move(sites)) {
    std::sort(sites_.begin(), sites_.end());
    if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end())
      throw invalid_input("site set: duplicate site index");
  }

  /// All sites 0..n-1 not in this set.
  SiteSet complement(std::size_t n_sites) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_sites; ++i)
      if (!contains(i)) out.push_back(i);
    return SiteSet(std::move(out));
  }

  bool contains(std::size_t site) const {
    return std::binary_search(sites_.begin(), sites_.end(), site);
  }
  void check_within(std::size_t n_sites) const {
    if (!sites_.empty() && sites_.back() >= n_sites)
      throw invalid_input("site set: index " + std::to_string(sites_.back()) +
                          " out of range for " + std::to_string(n_sites) +
                          " sites");
  }

  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  std::size_t operator[](std::size_t i) const { return sites_[i]; }
  auto begin() const { return sites_.begin(); }
  auto end() const { return sites_.end(); }
  const std::vector<std::size_t>& indices() const { return sites_; }

  friend bool operator==(const SiteSet&, const SiteSet&) = default;

 private:
  std::vector<std::size_t> sites_;
};

/// Row-major dense complex matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw invalid_input("matrix: entry count does not match shape");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static Matrix diagonal(std::span<const double> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }
  /// |v><v|
  static Matrix projector(std::span<const cplx> v) {
    Matrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const cplx> entries() const { return data_; }
  std::span<cplx> entries() { return data_; }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw invalid_input("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        const cplx* brow = &b.data_[k * b.cols_];
        cplx* orow = &out.data_[i * out.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
      }
    return out;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw invalid_input("matrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline Matrix adjoint(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

inline Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

inline cplx trace(const Matrix& m) {
  if (!m.is_square()) throw invalid_input("trace: matrix is not square");
  cplx t{};
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

inline double max_abs(const Matrix& m) {
  double out = 0.0;
  for (const auto& x : m.entries()) out = std::max(out, std::abs(x));
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw invalid_input("max_abs_diff: shape mismatch");
  double out = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    out = std::max(out, std::abs(a.entries()[i] - b.entries()[i]));
  return out;
}

/// Largest |m_ij - conj(m_ji)|.
inline double hermiticity_error(const Matrix& m) {
  if (!m.is_square()) throw invalid_input("hermiticity: matrix is not square");
  double err = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      err = std::max(err, std::abs(m(i, j) - std::conj(m(j, i))));
  return err;
}

/// Hermitian within `tol` relative to max(1, max|m_ij|).
inline bool is_hermitian(const Matrix& m, double tol = 1e-10) {
  return m.is_square() && hermiticity_error(m) <= tol * std::max(1.0, max_abs(m));
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

namespace detail {

/// Flat-index contributions of every multi-index over `sites`, enumerated
/// row-major with the lowest site most significant.
inline std::vector<std::size_t> subsystem_offsets(std::span<const std::size_t> dims,
                                                  const SiteSet& sites) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];

  std::vector<std::size_t> offsets{0};
  for (auto s : sites) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[s]);
    for (auto base : offsets)
      for (std::size_t v = 0; v < dims[s]; ++v) next.push_back(base + v * strides[s]);
    offsets = std::move(next);
  }
  return offsets;
}

inline void check_operator_dims(const Matrix& rho, std::span<const std::size_t> dims,
                                const SiteSet& sites, const char* what) {
  check_dims(dims);
  if (!rho.is_square() || rho.rows() != total_dim(dims))
    throw invalid_input(std::string(what) +
                        ": matrix dimension does not match product of dims");
  sites.check_within(dims.size());
}

}  // namespace detail

/// Reduced operator on `keep`, tracing out every other site.
inline Matrix partial_trace(const Matrix& rho, std::span<const std::size_t> dims,
                            const SiteSet& keep) {
  detail::check_operator_dims(rho, dims, keep, "partial_trace");
  const auto kept = detail::subsystem_offsets(dims, keep);
  const auto rest = detail::subsystem_offsets(dims, keep.complement(dims.size()));

  Matrix out(kept.size(), kept.size());
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = 0; b < kept.size(); ++b) {
      cplx sum{};
      for (auto r : rest) sum += rho(kept[a] + r, kept[b] + r);
      out(a, b) = sum;
    }
  return out;
}

/// Reduced density matrix of the pure state `amps` on `keep`, computed as
/// M M^dagger with M the (kept x rest) reshaping of the amplitudes.
inline Matrix reduced_of_pure(std::span<const std::size_t> dims,
                              std::span<const cplx> amps, const SiteSet& keep) {
  check_dims(dims);
  if (amps.size() != total_dim(dims))
    throw invalid_input("reduced_of_pure: amplitude count does not match dims");
  keep.check_within(dims.size());

  const auto kept = detail::subsystem_offsets(dims, keep);
  const auto rest = detail::subsystem_offsets(dims, keep.complement(dims.size()));

  Matrix out(kept.size(), kept.size());
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = a; b < kept.size(); ++b) {
      cplx sum{};
      for (auto r : rest) sum += amps[kept[a] + r] * std::conj(amps[kept[b] + r]);
      out(a, b) = sum;
      out(b, a) = std::conj(sum);
    }
  return out;
}

/// Transpose on the indices of `subset` only.
inline Matrix partial_transpose(const Matrix& rho, std::span<const std::size_t> dims,
                                const SiteSet& subset) {
  detail::check_operator_dims(rho, dims, subset, "partial_transpose");
  const auto sub = detail::subsystem_offsets(dims, subset);
  const auto rest = detail::subsystem_offsets(dims, subset.complement(dims.size()));

  Matrix out(rho.rows(), rho.cols());
  for (auto ra : rest)
    for (auto rb : rest)
      for (auto sa : sub)
        for (auto sb : sub) out(sa + ra, sb + rb) = rho(sb + ra, sa + rb);
  return out;
}

/// Tr(rho^q) for integer q >= 2 by repeated multiplication.
inline double trace_power(const Matrix& rho, int q) {
  if (q < 2) throw invalid_input("trace_power: q must be an integer >= 2");
  if (!rho.is_square()) throw invalid_input("trace_power: matrix is not square");

  // rho^(q-1) by binary exponentiation, then Tr(P rho) without forming P rho.
  int e = q - 1;
  Matrix base = rho;
  Matrix acc;
  bool have_acc = false;
  while (e > 0) {
    if (e & 1) {
      acc = have_acc ? acc * base : base;
      have_acc = true;
    }
    e >>= 1;
    if (e > 0) base = base * base;
  }
  cplx t{};
  const std::size_t n = rho.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t += acc(i, j) * rho(j, i);
  return t.real();
}

/// Reorders tensor factors: output site k is input site perm[k].
inline Matrix permute_sites(const Matrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> perm) {
  check_dims(dims);
  if (perm.size() != dims.size())
    throw invalid_input("permute_sites: permutation length does not match dims");
  std::vector<bool> seen(dims.size(), false);
  for (auto p : perm) {
    if (p >= dims.size() || seen[p])
      throw invalid_input("permute_sites: not a permutation");
    seen[p] = true;
  }
  if (!rho.is_square() || rho.rows() != total_dim(dims))
    throw invalid_input("permute_sites: matrix dimension does not match dims");

  // map[new_flat] = old_flat
  const std::size_t n = rho.rows();
  std::vector<std::size_t> old_strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;)
    old_strides[i - 1] = old_strides[i] * dims[i];
  std::vector<std::size_t> map(n);
  std::vector<std::size_t> digit(dims.size(), 0);
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t old = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) old += digit[k] * old_strides[perm[k]];
    map[flat] = old;
    for (std::size_t k = perm.size(); k-- > 0;) {
      if (++digit[k] < dims[perm[k]]) break;
      digit[k] = 0;
    }
  }

  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = rho(map[i], map[j]);
  return out;
}

}  // namespace entpoly
