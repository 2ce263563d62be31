#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "diagx/diagnostics.hpp"
#include "diagx/matrix.hpp"

namespace diagx {

/// Deterministic generator state.  Raw 64-bit draws are reduced by hand so
/// streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    // xorshift* stream
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  std::size_t below(std::size_t k) { return k == 0 ? 0 : next() % k; }
  int sign() { return next() & 1 ? 1 : -1; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct JordanBlock {
  double eigenvalue = 0.0;
  int size = 1;
};

enum class FixtureKind { Jordan, Diagonalizable, RankProfile };

struct FixtureSpec {
  FixtureKind kind = FixtureKind::Diagonalizable;
  std::size_t n = 4;
  std::size_t rank = 0;     // RankProfile only
  std::size_t nonzero = 0;  // RankProfile only
  std::uint64_t seed = 1;
};

/// A matrix with fully known spectral structure: a = s J s^{-1} where s is
/// an integer unimodular matrix and J an integer Jordan matrix, so the
/// product is exact in floating point and the ground truth is not a claim
/// but an identity.
struct Fixture {
  Matrix a;
  std::vector<JordanBlock> blocks;
  std::vector<Complex> eigenvalue_list;  // with multiplicity
  Outcome expected = Outcome::Diagonalizable;
  std::size_t true_rank = 0;
  std::size_t true_nonzero = 0;
  int zero_multiplicity = 0;
  double similarity_condition = 0.0;
  /// Absolute zero/cluster thresholds sized to the construction: generous
  /// enough to absorb the eigenvalue splatter of defective spectra, far
  /// below the eigenvalue separations.
  double recommended_zero_tolerance = 0.0;
  double recommended_cluster_tolerance = 0.0;
};

/// Integer unimodular matrix (det +-1) with its exact integer inverse,
/// resampled until cond(s) <= max_cond (best effort after many tries).
struct SimilarityPair {
  Matrix s;
  Matrix s_inv;
  double condition = 0.0;
};

SimilarityPair unimodular_pair(std::size_t n, Rng& rng, double max_cond = 100.0);

Matrix jordan_matrix(const std::vector<JordanBlock>& blocks);

/// Conjugate a Jordan matrix by a fresh unimodular similarity and derive
/// all ground-truth fields from the block structure.
Fixture fixture_from_blocks(const std::vector<JordanBlock>& blocks, Rng& rng,
                            double max_cond = 100.0);

/// Named construction families for the CLI and test suites.
Fixture generate_fixture(const FixtureSpec& spec);

}  // namespace diagx
