#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "diagx/generate.hpp"
#include "diagx/matrix.hpp"
#include "diagx/schur.hpp"
#include "diagx/spectrum.hpp"

using diagx::Complex;
using diagx::Matrix;
using diagx::Spectrum;
using diagx::TolerancePolicy;

namespace {

const diagx::EigenCluster* find_cluster(const Spectrum& s, Complex value, double tol) {
  for (const auto& c : s.clusters) {
    if (std::abs(c.value - value) <= tol) return &c;
  }
  return nullptr;
}

int total_am(const Spectrum& s) {
  int am = 0;
  for (const auto& c : s.clusters) am += c.algebraic_multiplicity;
  return am;
}

}  // namespace

TEST_CASE("reference 2x2 spectra cluster as expected") {
  const TolerancePolicy policy;

  SUBCASE("identity: one cluster of multiplicity 2") {
    const auto s = diagx::cluster_spectrum({Complex(1, 0), Complex(1, 0)}, 2, policy, 1.0);
    REQUIRE(s.clusters.size() == 1);
    CHECK(s.clusters[0].algebraic_multiplicity == 2);
    CHECK(std::abs(s.clusters[0].value - Complex(1, 0)) < 1e-14);
    CHECK(s.zero_multiplicity == 0);
    CHECK_FALSE(s.fragile);
  }

  SUBCASE("one nonzero, one zero") {
    const auto s = diagx::cluster_spectrum({Complex(1, 0), Complex(0, 0)}, 2, policy, 1.0);
    REQUIRE(s.clusters.size() == 2);
    CHECK(s.zero_multiplicity == 1);
    const auto* zero = find_cluster(s, Complex(0, 0), 1e-14);
    REQUIRE(zero != nullptr);
    CHECK(zero->is_zero);
    CHECK(zero->algebraic_multiplicity == 1);
    CHECK(diagx::nonzero_count(s) == 1);
    CHECK(diagx::nonzero_distinct(s));
  }

  SUBCASE("double zero") {
    const auto s = diagx::cluster_spectrum({Complex(0, 0), Complex(0, 0)}, 2, policy, 1.0);
    REQUIRE(s.clusters.size() == 1);
    CHECK(s.clusters[0].is_zero);
    CHECK(s.zero_multiplicity == 2);
    CHECK(diagx::nonzero_count(s) == 0);
    CHECK(diagx::nonzero_distinct(s));  // vacuously
  }
}

TEST_CASE("conjugate pairs stay mirror-symmetric") {
  const TolerancePolicy policy;
  const auto s = diagx::cluster_spectrum(
      {Complex(0, 1), Complex(0, -1), Complex(2, 0)}, 3, policy, 2.0);
  REQUIRE(s.clusters.size() == 3);
  const auto* up = find_cluster(s, Complex(0, 1), 1e-12);
  const auto* down = find_cluster(s, Complex(0, -1), 1e-12);
  REQUIRE(up != nullptr);
  REQUIRE(down != nullptr);
  CHECK(up->algebraic_multiplicity == down->algebraic_multiplicity);
  CHECK(up->value == std::conj(down->value));  // exact mirror
  CHECK(total_am(s) == 3);
}

TEST_CASE("a conjugate pair hugging the real axis collapses to one real cluster") {
  TolerancePolicy policy;
  policy.cluster = diagx::Threshold::absolute(1e-3);
  policy.zero = diagx::Threshold::absolute(1e-3);
  // imaginary parts cancel exactly when the pair joins a real neighbor
  const auto s = diagx::cluster_spectrum(
      {Complex(1.0, 2e-4), Complex(1.0, -2e-4), Complex(1.0, 0.0)}, 3, policy, 1.0);
  REQUIRE(s.clusters.size() == 1);
  CHECK(s.clusters[0].algebraic_multiplicity == 3);
  CHECK(s.clusters[0].value.imag() == 0.0);
}

TEST_CASE("algebraic multiplicities always sum to n") {
  diagx::Rng rng(5150);
  const TolerancePolicy policy;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(9);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a(i, j) = static_cast<double>(static_cast<int>(rng.below(7)) - 3);
    const auto values = diagx::eigenvalues(a);
    const auto s = diagx::cluster_spectrum(values, n, policy, a.frobenius_norm());
    CHECK(total_am(s) == static_cast<int>(n));
    CHECK(s.n == n);
  }
}

TEST_CASE("clustering is scale-invariant under the relative policy") {
  const TolerancePolicy policy;
  const std::vector<Complex> base = {Complex(3, 0), Complex(1, 0), Complex(1, 0),
                                     Complex(0, 0)};
  for (double c : {1e-3, 1.0, 1e3}) {
    std::vector<Complex> scaled;
    for (Complex v : base) scaled.push_back(v * c);
    const auto s = diagx::cluster_spectrum(scaled, 4, policy, 3.0 * c);
    CAPTURE(c);
    REQUIRE(s.clusters.size() == 3);
    CHECK(s.zero_multiplicity == 1);
    const auto* repeated = find_cluster(s, Complex(c, 0), 1e-9 * c);
    REQUIRE(repeated != nullptr);
    CHECK(repeated->algebraic_multiplicity == 2);
  }
}

TEST_CASE("near-threshold magnitudes raise the fragile flag") {
  TolerancePolicy policy;
  policy.zero = diagx::Threshold::absolute(1e-3);

  SUBCASE("magnitude right at the threshold") {
    const auto s = diagx::cluster_spectrum({Complex(1e-3, 0), Complex(1, 0)}, 2, policy, 1.0);
    CHECK(s.fragile);
    CHECK_FALSE(s.warnings.empty());
  }
  SUBCASE("magnitude at half the threshold") {
    const auto s = diagx::cluster_spectrum({Complex(5e-4, 0), Complex(1, 0)}, 2, policy, 1.0);
    CHECK(s.fragile);
  }
  SUBCASE("comfortably far on both sides") {
    const auto s = diagx::cluster_spectrum({Complex(1e-5, 0), Complex(1, 0)}, 2, policy, 1.0);
    CHECK_FALSE(s.fragile);
  }
}

TEST_CASE("competing merges raise the ambiguity flag") {
  TolerancePolicy policy;
  policy.cluster = diagx::Threshold::absolute(1.0);
  policy.zero = diagx::Threshold::absolute(1e-6);
  // gaps 0.90 and 0.95: both mergeable, within 10% of each other
  const auto s = diagx::cluster_spectrum(
      {Complex(10.0, 0), Complex(10.90, 0), Complex(11.85, 0)}, 3, policy, 12.0);
  CHECK(s.ambiguous);
  CHECK_FALSE(s.warnings.empty());
}

TEST_CASE("geometric multiplicities of the reference matrices") {
  const TolerancePolicy policy;

  SUBCASE("identity: GM = AM = 2") {
    const Matrix a = Matrix::identity(2);
    const auto s = diagx::cluster_spectrum(diagx::eigenvalues(a), 2, policy, 1.0);
    const auto table = diagx::geometric_multiplicities(a, s);
    REQUIRE(table.records.size() == 1);
    CHECK(table.records[0].geometric_multiplicity == 2);
    CHECK_FALSE(table.records[0].clamped);
  }

  SUBCASE("size-2 block with eigenvalue 1: GM = 1 < AM = 2") {
    const Matrix a{{1.0, 1.0}, {0.0, 1.0}};
    const auto s = diagx::cluster_spectrum(diagx::eigenvalues(a), 2, policy, 2.0);
    const auto table = diagx::geometric_multiplicities(a, s);
    REQUIRE(table.records.size() == 1);
    CHECK(table.records[0].cluster.algebraic_multiplicity == 2);
    CHECK(table.records[0].geometric_multiplicity == 1);
  }

  SUBCASE("nilpotent: zero cluster GM ties to rank-nullity") {
    const Matrix a{{0.0, 1.0}, {0.0, 0.0}};
    const auto s = diagx::cluster_spectrum(diagx::eigenvalues(a), 2, policy, 1.0);
    const auto table = diagx::geometric_multiplicities(a, s);
    REQUIRE(table.records.size() == 1);
    CHECK(table.records[0].cluster.is_zero);
    CHECK(table.records[0].geometric_multiplicity == 1);  // n - rank = 2 - 1
  }

  SUBCASE("conjugate mirror clusters share one GM computation") {
    const Matrix a{{0.0, -1.0}, {1.0, 0.0}};
    const auto s = diagx::cluster_spectrum(diagx::eigenvalues(a), 2, policy, 1.0);
    const auto table = diagx::geometric_multiplicities(a, s);
    REQUIRE(table.records.size() == 2);
    CHECK(table.records[0].geometric_multiplicity == table.records[1].geometric_multiplicity);
    CHECK(table.records[0].geometric_multiplicity == 1);
  }
}

TEST_CASE("zero absorption pulls all tiny clusters into one zero cluster") {
  TolerancePolicy policy;
  policy.zero = diagx::Threshold::absolute(1e-6);
  const auto s = diagx::cluster_spectrum(
      {Complex(4e-13, 0), Complex(-3e-13, 0), Complex(2, 0)}, 3, policy, 2.0);
  REQUIRE(s.clusters.size() == 2);
  CHECK(s.zero_multiplicity == 2);
  const auto* zero = find_cluster(s, Complex(0, 0), 1e-6);
  REQUIRE(zero != nullptr);
  CHECK(zero->algebraic_multiplicity == 2);
  CHECK(zero->is_zero);
}

TEST_CASE("clusters are ordered by descending magnitude") {
  const TolerancePolicy policy;
  const auto s = diagx::cluster_spectrum(
      {Complex(1, 0), Complex(-5, 0), Complex(0, 0), Complex(3, 0)}, 4, policy, 5.0);
  REQUIRE(s.clusters.size() == 4);
  for (std::size_t i = 0; i + 1 < s.clusters.size(); ++i) {
    CHECK(std::abs(s.clusters[i].value) >= std::abs(s.clusters[i + 1].value) - 1e-15);
  }
  CHECK(s.clusters.back().is_zero);
}
