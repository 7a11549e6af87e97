#pragma once

// Cyclic Jacobi eigensolver for complex Hermitian matrices.
//
// Each rotation first removes the phase of the pivot a_pq with a diagonal
// unitary, then applies the real symmetric Jacobi rotation. Sweeps stop when
// the off-diagonal Frobenius norm drops below kOffNormTol * max(1, ||A||_F)
// or after kMaxSweeps sweeps.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "entpoly/errors.hpp"
#include "entpoly/tensor.hpp"

namespace entpoly {

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]; empty if not requested
};

namespace detail {

inline constexpr double kOffNormTol = 1e-13;
inline constexpr int kMaxSweeps = 100;

inline double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

inline double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (const auto& x : a.entries()) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace detail

inline EigenSystem hermitian_eigen(const Matrix& h, bool want_vectors = true) {
  if (!h.is_square()) throw invalid_input("hermitian_eigen: matrix is not square");
  if (!is_hermitian(h, 1e-10))
    throw invalid_input("hermitian_eigen: matrix is not Hermitian");

  const std::size_t n = h.rows();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  Matrix v = want_vectors ? Matrix::identity(n) : Matrix{};

  const double stop = detail::kOffNormTol * std::max(1.0, detail::frobenius_norm(a));
  for (int sweep = 0; sweep < detail::kMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) < stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;

        const cplx phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // U = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const cplx u_pp = c;
        const cplx u_pq = s;
        const cplx u_qp = -s * std::conj(phase);
        const cplx u_qq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * u_pp + akq * u_qp;
          a(k, q) = akp * u_pq + akq * u_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
          a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;

        if (want_vectors)
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p);
            const cplx vkq = v(k, q);
            v(k, p) = vkp * u_pp + vkq * u_qp;
            v(k, q) = vkp * u_pq + vkq * u_qq;
          }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenSystem out;
  out.values.reserve(n);
  for (auto i : order) out.values.push_back(a(i, i).real());
  if (want_vectors) {
    out.vectors = Matrix(n, n);
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = v(k, order[col]);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const Matrix& h) {
  return hermitian_eigen(h, false).values;
}

}  // namespace entpoly
