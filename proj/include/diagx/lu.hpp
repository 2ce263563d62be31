#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "diagx/matrix.hpp"

namespace diagx {

/// LU factorization with partial pivoting, kept in packed form.
template <typename T>
struct LUFactors {
  DenseMatrix<T> lu;            // L below the diagonal (unit), U on and above
  std::vector<std::size_t> piv; // row permutation
  int sign = 1;                 // permutation parity
  double min_pivot = 0.0;       // smallest |pivot| encountered
};

template <typename T>
LUFactors<T> lu_factor(const DenseMatrix<T>& a) {
  a.require_square("lu_factor");
  const std::size_t n = a.rows();
  LUFactors<T> f{a, std::vector<std::size_t>(n), 1,
                 std::numeric_limits<double>::infinity()};
  std::iota(f.piv.begin(), f.piv.end(), std::size_t{0});

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = detail::abs_of(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = detail::abs_of(f.lu(i, k));
      if (m > best) {
        best = m;
        p = i;
      }
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
      std::swap(f.piv[k], f.piv[p]);
      f.sign = -f.sign;
    }
    const T pivot = f.lu(k, k);
    f.min_pivot = std::min(f.min_pivot, detail::abs_of(pivot));
    if (detail::abs_of(pivot) == 0.0) continue;  // exactly singular; keep going for det
    for (std::size_t i = k + 1; i < n; ++i) {
      const T l = f.lu(i, k) / pivot;
      f.lu(i, k) = l;
      if (l == T{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
    }
  }
  return f;
}

template <typename T>
T lu_determinant(const LUFactors<T>& f) {
  T d = static_cast<T>(f.sign);
  for (std::size_t i = 0; i < f.lu.rows(); ++i) d *= f.lu(i, i);
  return d;
}

/// Solve with precomputed factors; b may carry multiple right-hand sides.
template <typename T>
DenseMatrix<T> lu_solve(const LUFactors<T>& f, const DenseMatrix<T>& b) {
  const std::size_t n = f.lu.rows();
  if (b.rows() != n) throw DimensionError("solve: right-hand side rows mismatch");
  DenseMatrix<T> x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = b(f.piv[i], j);
  // forward substitution (unit lower)
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) {
      const T l = f.lu(i, k);
      if (l == T{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) -= l * x(k, j);
    }
  // back substitution
  for (std::size_t ii = n; ii-- > 0;) {
    const T pivot = f.lu(ii, ii);
    for (std::size_t k = ii + 1; k < n; ++k) {
      const T u = f.lu(ii, k);
      if (u == T{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) x(ii, j) -= u * x(k, j);
    }
    for (std::size_t j = 0; j < b.cols(); ++j) x(ii, j) /= pivot;
  }
  return x;
}

/// det(a) via LU with partial pivoting.  Exact zeros survive: a zero pivot
/// makes the product zero rather than raising.
double determinant(const Matrix& a);
Complex determinant(const CMatrix& a);

/// Solve a x = b for square a.  Raises SingularMatrixError when a pivot
/// falls at or below max(m,n) * eps * max|a_ij|.
Matrix solve(const Matrix& a, const Matrix& b);
CMatrix solve(const CMatrix& a, const CMatrix& b);

}  // namespace diagx
