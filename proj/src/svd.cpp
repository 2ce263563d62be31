#include "diagx/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <type_traits>

#include "diagx/errors.hpp"

namespace diagx {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <typename T>
JacobiSVD<T> jacobi_svd_impl(const DenseMatrix<T>& a, int max_sweeps) {
  if (a.rows() < a.cols()) {
    throw DimensionError("jacobi_svd requires rows >= cols");
  }
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  DenseMatrix<T> w = a;
  DenseMatrix<T> v = DenseMatrix<T>::identity(n);

  const double gate = static_cast<double>(m) * kEps;
  int sweep = 0;
  std::vector<double> norm2(n, 0.0);
  for (; sweep < max_sweeps; ++sweep) {
    // Freeze numerically-zero columns: once a column's norm falls below
    // rounding relative to the largest column its singular value is zero at
    // working precision, and further rotations only churn underflow noise
    // (which never passes the orthogonality gate, so the sweep would cycle).
    double colmax2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double s2 = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        s2 += detail::abs_of(w(i, j)) * detail::abs_of(w(i, j));
      norm2[j] = s2;
      colmax2 = std::max(colmax2, s2);
    }
    const double floor2 = gate * gate * colmax2;
    for (std::size_t j = 0; j < n; ++j) {
      if (norm2[j] > 0.0 && norm2[j] <= floor2) {
        for (std::size_t i = 0; i < m; ++i) w(i, j) = T{};
      }
    }

    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0;
        T apq{};
        for (std::size_t i = 0; i < m; ++i) {
          const T wp = w(i, p), wq = w(i, q);
          app += detail::abs_of(wp) * detail::abs_of(wp);
          aqq += detail::abs_of(wq) * detail::abs_of(wq);
          apq += detail::conj_of(wp) * wq;
        }
        const double g = detail::abs_of(apq);
        if (g <= gate * std::sqrt(app * aqq) || app == 0.0 || aqq == 0.0) continue;
        rotated = true;

        // Twist column q so the pair's inner product is real, then apply the
        // classic two-column rotation that annihilates it.
        double gr;
        if constexpr (std::is_same_v<T, double>) {
          gr = apq;
        } else {
          const T twist = detail::conj_of(apq / T(g));
          for (std::size_t i = 0; i < m; ++i) w(i, q) *= twist;
          for (std::size_t i = 0; i < n; ++i) v(i, q) *= twist;
          gr = g;
        }
        const double zeta = (aqq - app) / (2.0 * gr);
        const double t = (zeta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const T wp = w(i, p), wq = w(i, q);
          w(i, p) = T(c) * wp - T(s) * wq;
          w(i, q) = T(s) * wp + T(c) * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const T vp = v(i, p), vq = v(i, q);
          v(i, p) = T(c) * vp - T(s) * vq;
          v(i, q) = T(s) * vp + T(c) * vq;
        }
      }
    }
    if (!rotated) break;
  }
  if (sweep >= max_sweeps) {
    throw ConvergenceError("jacobi_svd did not converge within " +
                               std::to_string(max_sweeps) + " sweeps",
                           max_sweeps);
  }

  std::vector<double> sigma(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      s += detail::abs_of(w(i, j)) * detail::abs_of(w(i, j));
    sigma[j] = std::sqrt(s);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  JacobiSVD<T> out{std::vector<double>(n), DenseMatrix<T>(n, n), sweep};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = sigma[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, order[j]);
  }
  return out;
}

}  // namespace

JacobiSVD<double> jacobi_svd(const Matrix& a, int max_sweeps) {
  return jacobi_svd_impl(a, max_sweeps);
}

JacobiSVD<Complex> jacobi_svd(const CMatrix& a, int max_sweeps) {
  return jacobi_svd_impl(a, max_sweeps);
}

SingularValues singular_values(const Matrix& a) {
  const auto svd = a.rows() >= a.cols() ? jacobi_svd(a) : jacobi_svd(a.transposed());
  return SingularValues{svd.values};
}

RankReport numerical_rank(const Matrix& a, const TolerancePolicy& policy) {
  RankReport r;
  r.spectrum = singular_values(a);
  r.tolerance_used = policy.resolved_rank(a.rows(), a.cols(), r.spectrum.largest());
  for (double s : r.spectrum.values)
    if (s > r.tolerance_used) ++r.rank;
  r.nullity = a.cols() - r.rank;
  return r;
}

std::size_t null_space_dim(const Matrix& a, Complex shift,
                           const TolerancePolicy& policy) {
  a.require_square("null_space_dim");
  const std::size_t n = a.rows();
  std::vector<double> sigma;
  if (shift.imag() == 0.0) {
    sigma = jacobi_svd(shifted_by(a, shift.real())).values;
  } else {
    sigma = jacobi_svd(shifted_by(to_complex(a), shift)).values;
  }
  const double tol = policy.resolved_rank(n, n, sigma.empty() ? 0.0 : sigma.front());
  std::size_t rank = 0;
  for (double s : sigma)
    if (s > tol) ++rank;
  return n - rank;
}

CMatrix smallest_singular_directions(const Matrix& a, Complex shift,
                                     std::size_t count) {
  a.require_square("smallest_singular_directions");
  const std::size_t n = a.rows();
  if (count == 0 || count > n) {
    throw DimensionError("direction count must be in [1, n]");
  }
  CMatrix basis(n, count);
  if (shift.imag() == 0.0) {
    const auto svd = jacobi_svd(shifted_by(a, shift.real()));
    for (std::size_t j = 0; j < count; ++j)
      for (std::size_t i = 0; i < n; ++i)
        basis(i, j) = Complex(svd.v(i, n - count + j), 0.0);
  } else {
    const auto svd = jacobi_svd(shifted_by(to_complex(a), shift));
    for (std::size_t j = 0; j < count; ++j)
      for (std::size_t i = 0; i < n; ++i) basis(i, j) = svd.v(i, n - count + j);
  }
  return basis;
}

}  // namespace diagx
