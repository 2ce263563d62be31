#include "diagx/lu.hpp"

#include <limits>
#include <string>

namespace diagx {

namespace {

template <typename T>
DenseMatrix<T> checked_solve(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  a.require_square("solve");
  auto f = lu_factor(a);
  const double tol = static_cast<double>(a.rows()) *
                     std::numeric_limits<double>::epsilon() * a.max_abs();
  if (f.min_pivot <= tol) {
    throw SingularMatrixError("solve: matrix is singular to working tolerance (pivot " +
                              std::to_string(f.min_pivot) + ", tolerance " +
                              std::to_string(tol) + ")");
  }
  return lu_solve(f, b);
}

}  // namespace

double determinant(const Matrix& a) {
  a.require_square("determinant");
  return lu_determinant(lu_factor(a));
}

Complex determinant(const CMatrix& a) {
  a.require_square("determinant");
  return lu_determinant(lu_factor(a));
}

Matrix solve(const Matrix& a, const Matrix& b) { return checked_solve(a, b); }

CMatrix solve(const CMatrix& a, const CMatrix& b) { return checked_solve(a, b); }

}  // namespace diagx
