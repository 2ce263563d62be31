#pragma once

#include <cstddef>
#include <vector>

#include "diagx/matrix.hpp"
#include "diagx/tolerance.hpp"

namespace diagx {

/// Singular values in descending order.
struct SingularValues {
  std::vector<double> values;

  double largest() const { return values.empty() ? 0.0 : values.front(); }
  double smallest() const { return values.empty() ? 0.0 : values.back(); }
};

/// One-sided Jacobi SVD result: values descending, matching right singular
/// vectors as columns of v.  Requires rows >= cols.
template <typename T>
struct JacobiSVD {
  std::vector<double> values;
  DenseMatrix<T> v;
  int sweeps = 0;
};

JacobiSVD<double> jacobi_svd(const Matrix& a, int max_sweeps = 60);
JacobiSVD<Complex> jacobi_svd(const CMatrix& a, int max_sweeps = 60);

/// Singular values of a general rectangular matrix.
SingularValues singular_values(const Matrix& a);

/// Numerical rank decision for one matrix.
struct RankReport {
  std::size_t rank = 0;
  std::size_t nullity = 0;  // column nullity: cols - rank
  double tolerance_used = 0.0;
  SingularValues spectrum;
};

/// rank = number of singular values strictly above the resolved rank
/// threshold (default max(m,n) * eps * sigma_1).
RankReport numerical_rank(const Matrix& a, const TolerancePolicy& policy = {});

/// dim ker(a - shift*I) under the rank threshold; complex shifts run the
/// same kernel in complex arithmetic.
std::size_t null_space_dim(const Matrix& a, Complex shift,
                           const TolerancePolicy& policy = {});

/// Orthonormal basis (columns) spanning the `count` directions of smallest
/// singular value of (a - shift*I); backbone of eigenvector extraction.
CMatrix smallest_singular_directions(const Matrix& a, Complex shift,
                                     std::size_t count);

}  // namespace diagx
