#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "diagx/matrix.hpp"
#include "diagx/schur.hpp"
#include "diagx/spectrum.hpp"
#include "diagx/svd.hpp"
#include "diagx/tolerance.hpp"

namespace diagx {

/// Final answer of the diagonalizability test.
enum class Outcome { Diagonalizable, Defective, Indeterminate };

/// Which rule produced the outcome.
enum class Reason {
  NecessaryViolated,          // rank != number of nonzero eigenvalues
  SufficientSatisfied,        // rank matches and nonzero eigenvalues are simple
  MultiplicityResolved,       // settled by comparing GM with AM per cluster
  RepeatedNonzeroEigenvalue,  // two-step test cannot decide
  FragileSpectrum,            // zero/nonzero split too close to call
};

const char* to_string(Outcome o);
const char* to_string(Reason r);

/// Everything the verdict was computed from, kept for reporting.
struct ClusterEvidence {
  Complex value;
  int algebraic_multiplicity = 0;
  std::optional<int> geometric_multiplicity;  // filled by the full test only
  bool is_zero = false;
};

struct Evidence {
  std::size_t n = 0;
  std::size_t rank = 0;
  std::size_t nullity = 0;
  std::size_t nonzero_count = 0;
  int zero_multiplicity = 0;
  bool nonzero_distinct = false;
  std::vector<ClusterEvidence> clusters;
  ResolvedPolicy resolved;
  std::vector<std::string> warnings;
};

struct Verdict {
  Outcome outcome = Outcome::Indeterminate;
  Reason reason = Reason::RepeatedNonzeroEigenvalue;
  Evidence evidence;
};

/// Shared pipeline state: one SVD, one Schur pass, one clustering.
struct Analysis {
  RankReport rank_report;
  SchurForm schur;
  std::vector<Complex> raw_eigenvalues;
  Spectrum spectrum;
};

Analysis analyze(const Matrix& a, const TolerancePolicy& policy = {});

/// Rank test: a diagonalizable matrix must have exactly as many nonzero
/// eigenvalues (with multiplicity) as its rank.
bool necessary_check(const Analysis& analysis);
bool necessary_check(const Matrix& a, const TolerancePolicy& policy = {});

/// Rank test plus simple nonzero eigenvalues; certifies diagonalizability.
bool sufficient_check(const Analysis& analysis);
bool sufficient_check(const Matrix& a, const TolerancePolicy& policy = {});

/// The two-step screen: necessary test, then sufficient test.  Cannot
/// label anything Defective beyond a failed rank test, and leaves repeated
/// nonzero eigenvalues Indeterminate.  A fragile spectrum short-circuits
/// to Indeterminate regardless.
Verdict classify_two_step(const Matrix& a, const TolerancePolicy& policy = {});

/// Full resolution: runs the two-step screen and settles Indeterminate
/// cases by comparing geometric with algebraic multiplicity per cluster.
/// FragileSpectrum is never overridden.
Verdict classify_full(const Matrix& a, const TolerancePolicy& policy = {});

/// Lower bound on rank from the zero eigenvalue's multiplicity: a zero
/// eigenvalue repeated k times forces rank >= n - k, with equality
/// guaranteed at k = 1.
struct BoundReport {
  std::size_t n = 0;
  int zero_multiplicity = 0;
  std::size_t rank = 0;
  std::size_t bound = 0;     // n - k
  bool holds = false;        // rank >= n - k
  bool exact = false;        // k == 1 and rank == n - 1
  std::vector<std::string> warnings;
};

BoundReport zero_rank_bound(const Matrix& a, const TolerancePolicy& policy = {});

/// Eigendecomposition a = P D P^{-1} with unit-norm eigenvector columns.
struct Eigenbasis {
  CMatrix eigenvalue_matrix_d;   // diagonal
  CMatrix eigenvector_matrix_p;  // unit-norm columns
  double residual = 0.0;         // ||aP - PD||_F / max(1, ||a||_F)
  double eigenvector_det_magnitude = 0.0;
};

/// Requires classify_full(a) = Diagonalizable unless force is set; a
/// Defective verdict names the offending cluster (AM vs GM).  Without
/// force, an eigenvector matrix with condition number above 1e12 raises
/// ConditioningError.
Eigenbasis eigendecompose(const Matrix& a, const TolerancePolicy& policy = {},
                          bool force = false);

/// Near-singularity advisory on the eigenvector matrix: |det P| inside
/// [eps, 1e-4] is numerically inconclusive evidence of invertibility.
struct WarningReport {
  double det_magnitude = 0.0;
  bool inconclusive = false;
  std::string message;
};

WarningReport det_check_warning(const Eigenbasis& basis);

}  // namespace diagx
