#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "diagx/matrix.hpp"
#include "diagx/svd.hpp"
#include "diagx/tolerance.hpp"

namespace diagx {

/// One numerically distinct eigenvalue: the multiplicity-weighted mean of
/// its member values and the count it absorbed.
struct EigenCluster {
  Complex value;
  int algebraic_multiplicity = 0;
  std::vector<Complex> members;
  bool is_zero = false;
};

/// Clustered spectrum of one matrix.  Clusters are sorted by descending
/// magnitude (ties by real part, then imaginary part); mirror clusters of
/// conjugate pairs carry equal multiplicities by construction.
struct Spectrum {
  std::vector<EigenCluster> clusters;
  std::size_t n = 0;
  int zero_multiplicity = 0;
  TolerancePolicy policy;
  ResolvedPolicy resolved;
  /// Set when any raw eigenvalue magnitude falls within a factor of two of
  /// the zero threshold: the zero/nonzero split is not trustworthy.
  bool fragile = false;
  /// Set when two competing merges landed within 10% of the clustering
  /// tolerance of each other; the partition is order-dependent.
  bool ambiguous = false;
  std::vector<std::string> warnings;
};

/// Greedy agglomerative clustering of raw eigenvalues in the complex
/// plane.  `scale` is the spectral-norm estimate the relative thresholds
/// resolve against (pass sigma_1 of the source matrix).
Spectrum cluster_spectrum(const std::vector<Complex>& values, std::size_t n,
                          const TolerancePolicy& policy, double scale);

/// Number of nonzero eigenvalues counted with algebraic multiplicity.
std::size_t nonzero_count(const Spectrum& s);

/// True when every nonzero cluster is simple (vacuously true when there
/// are none).
bool nonzero_distinct(const Spectrum& s);

/// Geometric multiplicity paired with its cluster.
struct MultiplicityRecord {
  EigenCluster cluster;
  int geometric_multiplicity = 0;
  bool clamped = false;  // raw nullity fell outside [1, AM] and was pulled back
};

/// dim ker(a - lambda I) for every cluster representative.  Mirror clusters
/// of a conjugate pair share one computation, so their records agree
/// exactly.  Raw nullities outside [1, AM] are clamped with a warning
/// recorded on the result.
struct MultiplicityTable {
  std::vector<MultiplicityRecord> records;
  std::vector<std::string> warnings;
};

MultiplicityTable geometric_multiplicities(const Matrix& a, const Spectrum& s);

}  // namespace diagx
