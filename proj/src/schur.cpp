#include "diagx/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace diagx {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// Householder reflector for a 2- or 3-vector: returns (v2, v3, tau, beta)
// with implicit v1 = 1 so that (I - tau v v^T) x = (beta, 0, 0)^T.
struct Reflector {
  double v2 = 0.0, v3 = 0.0, tau = 0.0, beta = 0.0;
};

Reflector make_reflector(double x, double y, double z, bool three) {
  Reflector r;
  const double scale = std::max({std::fabs(x), std::fabs(y), three ? std::fabs(z) : 0.0});
  if (scale == 0.0) {
    r.beta = x;
    return r;
  }
  x /= scale;
  y /= scale;
  z = three ? z / scale : 0.0;
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (y == 0.0 && z == 0.0) {
    r.beta = x * scale;
    return r;
  }
  const double beta = x >= 0 ? -norm : norm;
  r.tau = (beta - x) / beta;
  r.v2 = y / (x - beta);
  r.v3 = three ? z / (x - beta) : 0.0;
  r.beta = beta * scale;
  return r;
}

// Givens rotation [c s; -s c] applied as G^T * block * G on rows/columns
// (i, i+1) of t, plus the trailing column update of z.
void apply_rotation(Matrix& t, Matrix& z, std::size_t i, double c, double s) {
  const std::size_t n = t.rows();
  for (std::size_t j = 0; j < n; ++j) {  // rows i, i+1 from the left
    const double a = t(i, j), b = t(i + 1, j);
    t(i, j) = c * a + s * b;
    t(i + 1, j) = -s * a + c * b;
  }
  for (std::size_t r = 0; r < n; ++r) {  // columns i, i+1 from the right
    const double a = t(r, i), b = t(r, i + 1);
    t(r, i) = c * a + s * b;
    t(r, i + 1) = -s * a + c * b;
  }
  for (std::size_t r = 0; r < z.rows(); ++r) {
    const double a = z(r, i), b = z(r, i + 1);
    z(r, i) = c * a + s * b;
    z(r, i + 1) = -s * a + c * b;
  }
}

// Split a deflated trailing 2x2 block if its eigenvalues are real; returns
// true when the block was rotated into two 1x1 blocks.
bool split_real_block(Matrix& t, Matrix& z, std::size_t l) {
  const double a = t(l, l), b = t(l, l + 1);
  const double c = t(l + 1, l), d = t(l + 1, l + 1);
  if (c == 0.0) return true;
  const double p = 0.5 * (a - d);
  const double disc = p * p + b * c;
  if (disc < 0.0) return false;  // genuine conjugate pair, keep the block

  // Rotate so the first column becomes an eigenvector direction; the
  // eigenvalue farther from d avoids cancellation in (lambda - d).
  const double sq = std::sqrt(disc);
  const double lam_minus_d = p + (p >= 0 ? sq : -sq);
  const double v1 = lam_minus_d, v2 = c;
  const double r = std::hypot(v1, v2);
  if (r == 0.0) return true;
  apply_rotation(t, z, l, v1 / r, v2 / r);
  t(l + 1, l) = 0.0;
  return true;
}

}  // namespace

std::pair<Matrix, Matrix> hessenberg(const Matrix& a) {
  a.require_square("hessenberg");
  const std::size_t n = a.rows();
  Matrix h = a;
  Matrix q = Matrix::identity(n);
  if (n <= 2) return {h, q};

  std::vector<double> v(n, 0.0);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    // Reflector annihilating column k below the subdiagonal.
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale = std::max(scale, std::fabs(h(i, k)));
    if (scale == 0.0) continue;
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = h(i, k) / scale;
      norm2 += v[i] * v[i];
    }
    double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    const double x = v[k + 1];
    const double beta = x >= 0 ? -norm : norm;
    const double tau = (beta - x) / beta;
    const double denom = x - beta;
    v[k + 1] = 1.0;
    for (std::size_t i = k + 2; i < n; ++i) v[i] /= denom;

    // H <- P H (rows k+1..n-1)
    for (std::size_t j = k; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) sum += v[i] * h(i, j);
      sum *= tau;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= sum * v[i];
    }
    // H <- H P (columns k+1..n-1)
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) sum += h(i, j) * v[j];
      sum *= tau;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= sum * v[j];
    }
    // Q <- Q P
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) sum += q(i, j) * v[j];
      sum *= tau;
      for (std::size_t j = k + 1; j < n; ++j) q(i, j) -= sum * v[j];
    }
    h(k + 1, k) = beta * scale;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return {h, q};
}

SchurForm real_schur(const Matrix& a, int max_iterations) {
  a.require_square("real_schur");
  const std::size_t n = a.rows();
  if (max_iterations < 1) max_iterations = 30 * static_cast<int>(n);

  auto [t, z] = hessenberg(a);
  std::vector<std::pair<std::size_t, int>> blocks;  // (start, size), bottom-up
  int total_iters = 0;
  int since_deflation = 0;

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  while (hi >= 0) {
    // Locate the active block: scan for a negligible subdiagonal entry.
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      double s = std::fabs(t(lo - 1, lo - 1)) + std::fabs(t(lo, lo));
      if (s == 0.0) s = 1.0;
      if (std::fabs(t(lo, lo - 1)) <= std::max(kEps * s, kTiny)) {
        t(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }

    if (lo == hi) {  // 1x1 block converged
      blocks.emplace_back(static_cast<std::size_t>(hi), 1);
      --hi;
      since_deflation = 0;
      continue;
    }
    if (lo == hi - 1) {  // 2x2 block converged
      if (split_real_block(t, z, static_cast<std::size_t>(lo))) {
        blocks.emplace_back(static_cast<std::size_t>(hi), 1);
        blocks.emplace_back(static_cast<std::size_t>(lo), 1);
      } else {
        blocks.emplace_back(static_cast<std::size_t>(lo), 2);
      }
      hi -= 2;
      since_deflation = 0;
      continue;
    }

    if (total_iters >= max_iterations) {
      SchurForm partial{t, z, total_iters, {}};
      throw SchurConvergenceError(
          "real_schur: no convergence after " + std::to_string(total_iters) +
              " sweeps (matrix order " + std::to_string(n) + ")",
          std::move(partial));
    }
    ++total_iters;
    ++since_deflation;

    // Double shift from the trailing 2x2 of the active block; every tenth
    // stalled sweep takes the classic exceptional shift instead.
    double h11, h12, h21, h22;
    if (since_deflation % 10 == 0) {
      const double s = std::fabs(t(hi, hi - 1)) + std::fabs(t(hi - 1, hi - 2));
      h11 = 0.75 * s + t(hi, hi);
      h12 = -0.4375 * s;
      h21 = s;
      h22 = h11;
    } else {
      h11 = t(hi - 1, hi - 1);
      h12 = t(hi - 1, hi);
      h21 = t(hi, hi - 1);
      h22 = t(hi, hi);
    }
    const double shift_sum = h11 + h22;
    const double shift_prod = h11 * h22 - h12 * h21;

    // First column of (H - s1)(H - s2) e1 restricted to the active block.
    double x = t(lo, lo) * t(lo, lo) + t(lo, lo + 1) * t(lo + 1, lo) -
               shift_sum * t(lo, lo) + shift_prod;
    double y = t(lo + 1, lo) * (t(lo, lo) + t(lo + 1, lo + 1) - shift_sum);
    double w = t(lo + 1, lo) * t(lo + 2, lo + 1);

    // Chase the bulge down the block; the final step at k = hi - 1 is a
    // two-row reflector that clears the last bulge entry at (hi, hi - 2).
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const bool three = k < hi - 1;
      if (k > lo) {
        x = t(k, k - 1);
        y = t(k + 1, k - 1);
        w = three ? t(k + 2, k - 1) : 0.0;
      }
      const Reflector r = make_reflector(x, y, w, three);
      if (r.tau == 0.0) continue;
      if (k > lo) {
        t(k, k - 1) = r.beta;
        t(k + 1, k - 1) = 0.0;
        if (three) t(k + 2, k - 1) = 0.0;
      }
      const double t2 = r.tau * r.v2;
      const double t3 = r.tau * r.v3;
      // rows k..k+2, columns k..n-1
      for (std::size_t j = static_cast<std::size_t>(k); j < n; ++j) {
        double sum = t(k, j) + r.v2 * t(k + 1, j);
        if (three) sum += r.v3 * t(k + 2, j);
        t(k, j) -= sum * r.tau;
        t(k + 1, j) -= sum * t2;
        if (three) t(k + 2, j) -= sum * t3;
      }
      // columns k..k+2, rows 0..min(k+3, hi)
      const std::size_t row_end = static_cast<std::size_t>(std::min<std::ptrdiff_t>(k + 3, hi));
      for (std::size_t i = 0; i <= row_end; ++i) {
        double sum = t(i, k) + r.v2 * t(i, k + 1);
        if (three) sum += r.v3 * t(i, k + 2);
        t(i, k) -= sum * r.tau;
        t(i, k + 1) -= sum * t2;
        if (three) t(i, k + 2) -= sum * t3;
      }
      for (std::size_t i = 0; i < n; ++i) {
        double sum = z(i, k) + r.v2 * z(i, k + 1);
        if (three) sum += r.v3 * z(i, k + 2);
        z(i, k) -= sum * r.tau;
        z(i, k + 1) -= sum * t2;
        if (three) z(i, k + 2) -= sum * t3;
      }
    }
  }

  SchurForm form{std::move(t), std::move(z), total_iters, {}};
  std::sort(blocks.begin(), blocks.end());
  form.block_sizes.reserve(blocks.size());
  for (const auto& [start, size] : blocks) form.block_sizes.push_back(size);
  return form;
}

std::vector<Complex> eigenvalues(const SchurForm& form) {
  std::vector<Complex> out;
  out.reserve(form.t.rows());
  std::size_t i = 0;
  for (int size : form.block_sizes) {
    if (size == 1) {
      out.emplace_back(form.t(i, i), 0.0);
    } else {
      const double a = form.t(i, i), b = form.t(i, i + 1);
      const double c = form.t(i + 1, i), d = form.t(i + 1, i + 1);
      const double re = 0.5 * (a + d);
      const double p = 0.5 * (a - d);
      const double disc = p * p + b * c;
      const double im = disc < 0.0 ? std::sqrt(-disc) : 0.0;
      out.emplace_back(re, im);
      out.emplace_back(re, -im);
    }
    i += static_cast<std::size_t>(size);
  }
  return out;
}

std::vector<Complex> eigenvalues(const Matrix& a) {
  return eigenvalues(real_schur(a));
}

}  // namespace diagx
