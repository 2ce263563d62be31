#include "diagx/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "diagx/errors.hpp"
#include "diagx/svd.hpp"

namespace diagx {

namespace {

// Unit triangular matrix with off-diagonal entries in {-1, 0, 1}.  About
// three nonzeros per row regardless of size, which keeps the product L*U
// and its inverse small-integer and well conditioned.
Matrix unit_triangular(std::size_t n, Rng& rng, bool lower) {
  Matrix t = Matrix::identity(n);
  const double density = std::min(0.3, 3.0 / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool strict = lower ? (j < i) : (j > i);
      if (!strict) continue;
      if (rng.unit() < density) t(i, j) = static_cast<double>(rng.sign());
    }
  }
  return t;
}

// Exact inverse of a unit triangular integer matrix (the inverse is again
// integer, so plain substitution in doubles is exact while entries stay
// far below 2^53).
Matrix invert_unit_triangular(const Matrix& t, bool lower) {
  const std::size_t n = t.rows();
  Matrix x = Matrix::identity(n);
  if (lower) {
    for (std::size_t col = 0; col < n; ++col) {
      for (std::size_t i = col + 1; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = col; k < i; ++k) acc += t(i, k) * x(k, col);
        x(i, col) = -acc;
      }
    }
  } else {
    for (std::size_t col = 0; col < n; ++col) {
      for (std::size_t i = col; i-- > 0;) {
        double acc = 0.0;
        for (std::size_t k = i + 1; k <= col; ++k) acc += t(i, k) * x(k, col);
        x(i, col) = -acc;
      }
    }
  }
  return x;
}

double condition_estimate(const Matrix& s) {
  const JacobiSVD<double> svd = jacobi_svd(s);
  const double smallest = svd.values.back();
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return svd.values.front() / smallest;
}

}  // namespace

SimilarityPair unimodular_pair(std::size_t n, Rng& rng, double max_cond) {
  if (n == 0) throw DimensionError("similarity dimension must be positive");
  constexpr int kAttempts = 400;
  constexpr double kEntryCap = 1.0e6;  // keeps every later product exact
  SimilarityPair best;
  double best_cond = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const Matrix l = unit_triangular(n, rng, /*lower=*/true);
    const Matrix u = unit_triangular(n, rng, /*lower=*/false);
    const Matrix s = l * u;
    const Matrix s_inv = invert_unit_triangular(u, false) * invert_unit_triangular(l, true);
    if (s.max_abs() > kEntryCap || s_inv.max_abs() > kEntryCap) continue;
    const double cond = condition_estimate(s);
    if (cond < best_cond) {
      best_cond = cond;
      best = SimilarityPair{s, s_inv, cond};
      if (cond <= max_cond) return best;
    }
  }
  if (!std::isfinite(best_cond)) {
    throw Error("failed to sample an invertible unimodular similarity");
  }
  return best;  // best effort; callers that need the bound assert on .condition
}

Matrix jordan_matrix(const std::vector<JordanBlock>& blocks) {
  std::size_t n = 0;
  for (const JordanBlock& b : blocks) {
    if (b.size < 1) throw DimensionError("jordan block size must be positive");
    n += static_cast<std::size_t>(b.size);
  }
  if (n == 0) throw DimensionError("jordan matrix needs at least one block");
  Matrix j(n, n);
  std::size_t at = 0;
  for (const JordanBlock& b : blocks) {
    const std::size_t m = static_cast<std::size_t>(b.size);
    for (std::size_t i = 0; i < m; ++i) {
      j(at + i, at + i) = b.eigenvalue;
      if (i + 1 < m) j(at + i, at + i + 1) = 1.0;
    }
    at += m;
  }
  return j;
}

Fixture fixture_from_blocks(const std::vector<JordanBlock>& blocks, Rng& rng,
                            double max_cond) {
  const Matrix j = jordan_matrix(blocks);
  const std::size_t n = j.rows();
  const SimilarityPair sim = unimodular_pair(n, rng, max_cond);

  Fixture fx;
  fx.a = sim.s * j * sim.s_inv;
  fx.blocks = blocks;
  fx.similarity_condition = sim.condition;

  bool defective = false;
  double scale = 0.0;
  for (const JordanBlock& b : blocks) {
    if (b.size >= 2) defective = true;
    scale = std::max(scale, std::abs(b.eigenvalue));
    for (int i = 0; i < b.size; ++i) fx.eigenvalue_list.emplace_back(b.eigenvalue, 0.0);
    if (b.eigenvalue != 0.0) {
      fx.true_rank += static_cast<std::size_t>(b.size);
      fx.true_nonzero += static_cast<std::size_t>(b.size);
    } else {
      fx.true_rank += static_cast<std::size_t>(b.size - 1);
      fx.zero_multiplicity += b.size;
    }
  }
  fx.expected = defective ? Outcome::Defective : Outcome::Diagonalizable;
  scale = std::max(scale, 1.0);
  fx.recommended_zero_tolerance = 1.0e-3 * scale;
  fx.recommended_cluster_tolerance = 1.0e-3 * scale;
  return fx;
}

Fixture generate_fixture(const FixtureSpec& spec) {
  if (spec.n == 0) throw DimensionError("fixture dimension must be positive");
  Rng rng(spec.seed);
  std::vector<JordanBlock> blocks;

  switch (spec.kind) {
    case FixtureKind::Jordan: {
      blocks.push_back({1.0, static_cast<int>(spec.n)});
      break;
    }
    case FixtureKind::Diagonalizable: {
      std::vector<double> values(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        values[i] = static_cast<double>(i + 1) * rng.sign();
      }
      for (std::size_t i = spec.n; i-- > 1;) std::swap(values[i], values[rng.below(i + 1)]);
      for (double v : values) blocks.push_back({v, 1});
      break;
    }
    case FixtureKind::RankProfile: {
      const std::size_t n = spec.n;
      const std::size_t r = spec.rank;
      const std::size_t z = spec.nonzero;
      if (z > r || r > n || 2 * r > n + z) {
        std::ostringstream msg;
        msg << "rank profile infeasible: need nonzero <= rank and 2*rank - nonzero <= n, got n="
            << n << " rank=" << r << " nonzero=" << z;
        throw InfeasibleProfileError(msg.str());
      }
      for (std::size_t i = 0; i < z; ++i) {
        blocks.push_back({static_cast<double>(i + 1) * rng.sign(), 1});
      }
      for (std::size_t i = 0; i < r - z; ++i) blocks.push_back({0.0, 2});
      const std::size_t used = z + 2 * (r - z);
      for (std::size_t i = used; i < n; ++i) blocks.push_back({0.0, 1});
      break;
    }
  }
  return fixture_from_blocks(blocks, rng);
}

}  // namespace diagx
