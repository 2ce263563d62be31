#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "diagx/errors.hpp"
#include "diagx/matrix.hpp"

namespace diagx {

/// Real Schur factorization a = z * t * z^T.
///
/// t is quasi upper-triangular: the diagonal is a sequence of 1x1 blocks
/// (real eigenvalues) and 2x2 blocks (conjugate pairs), recorded in order
/// in block_sizes.  Everything below that block diagonal is exactly zero.
struct SchurForm {
  Matrix t;
  Matrix z;
  int iterations_used = 0;
  std::vector<int> block_sizes;
};

/// Raised when the QR iteration hits its sweep budget; carries the partial
/// factorization accumulated so far.
class SchurConvergenceError : public ConvergenceError {
 public:
  SchurConvergenceError(const std::string& msg, SchurForm partial)
      : ConvergenceError(msg, partial.iterations_used),
        partial_(std::move(partial)) {}
  const SchurForm& partial() const { return partial_; }

 private:
  SchurForm partial_;
};

/// Householder reduction to upper Hessenberg form: a = q * h * q^T.
/// For n <= 2 the input is already Hessenberg and q = I.
std::pair<Matrix, Matrix> hessenberg(const Matrix& a);  // {h, q}

/// Francis double-shift QR iteration on the Hessenberg form.
/// max_iterations < 1 selects the default budget of 30 * n sweeps.
SchurForm real_schur(const Matrix& a, int max_iterations = -1);

/// All n eigenvalues, read off the Schur block diagonal.  Complex values
/// appear as exact conjugate pairs, adjacent in the result.
std::vector<Complex> eigenvalues(const Matrix& a);
std::vector<Complex> eigenvalues(const SchurForm& form);

}  // namespace diagx
