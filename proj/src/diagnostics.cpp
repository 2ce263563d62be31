#include "diagx/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "diagx/lu.hpp"

namespace diagx {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDetInconclusiveCeiling = 1e-4;
constexpr double kConditionLimit = 1e12;

Evidence make_evidence(const Analysis& an) {
  Evidence e;
  e.n = an.rank_report.rank + an.rank_report.nullity;
  e.rank = an.rank_report.rank;
  e.nullity = an.rank_report.nullity;
  e.nonzero_count = nonzero_count(an.spectrum);
  e.zero_multiplicity = an.spectrum.zero_multiplicity;
  e.nonzero_distinct = nonzero_distinct(an.spectrum);
  e.resolved = an.spectrum.resolved;
  e.resolved.rank_threshold = an.rank_report.tolerance_used;
  e.warnings = an.spectrum.warnings;
  for (const auto& c : an.spectrum.clusters) {
    e.clusters.push_back({c.value, c.algebraic_multiplicity, std::nullopt, c.is_zero});
  }
  return e;
}

Verdict two_step_from(const Analysis& an) {
  Verdict v;
  v.evidence = make_evidence(an);
  if (an.spectrum.fragile) {
    v.outcome = Outcome::Indeterminate;
    v.reason = Reason::FragileSpectrum;
    return v;
  }
  if (v.evidence.rank != v.evidence.nonzero_count) {
    v.outcome = Outcome::Defective;
    v.reason = Reason::NecessaryViolated;
    return v;
  }
  if (v.evidence.nonzero_distinct) {
    v.outcome = Outcome::Diagonalizable;
    v.reason = Reason::SufficientSatisfied;
    return v;
  }
  v.outcome = Outcome::Indeterminate;
  v.reason = Reason::RepeatedNonzeroEigenvalue;
  return v;
}

Verdict full_from(const Matrix& a, const Analysis& an) {
  Verdict v = two_step_from(an);
  if (v.outcome != Outcome::Indeterminate || v.reason == Reason::FragileSpectrum) {
    return v;
  }
  const MultiplicityTable table = geometric_multiplicities(a, an.spectrum);
  bool all_match = true;
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    const auto& rec = table.records[i];
    v.evidence.clusters[i].geometric_multiplicity = rec.geometric_multiplicity;
    if (rec.geometric_multiplicity != rec.cluster.algebraic_multiplicity) all_match = false;
  }
  v.evidence.warnings.insert(v.evidence.warnings.end(), table.warnings.begin(),
                             table.warnings.end());
  v.outcome = all_match ? Outcome::Diagonalizable : Outcome::Defective;
  v.reason = Reason::MultiplicityResolved;
  return v;
}

std::string format_complex(const Complex& v) {
  std::ostringstream os;
  os << v.real();
  if (v.imag() != 0.0) os << (v.imag() >= 0 ? "+" : "") << v.imag() << "i";
  return os.str();
}

}  // namespace

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Diagonalizable: return "Diagonalizable";
    case Outcome::Defective: return "Defective";
    case Outcome::Indeterminate: return "Indeterminate";
  }
  return "?";
}

const char* to_string(Reason r) {
  switch (r) {
    case Reason::NecessaryViolated: return "NecessaryViolated";
    case Reason::SufficientSatisfied: return "SufficientSatisfied";
    case Reason::MultiplicityResolved: return "MultiplicityResolved";
    case Reason::RepeatedNonzeroEigenvalue: return "RepeatedNonzeroEigenvalue";
    case Reason::FragileSpectrum: return "FragileSpectrum";
  }
  return "?";
}

Analysis analyze(const Matrix& a, const TolerancePolicy& policy) {
  a.require_square("analyze");
  Analysis an{numerical_rank(a, policy), real_schur(a), {}, {}};
  an.raw_eigenvalues = eigenvalues(an.schur);
  an.spectrum = cluster_spectrum(an.raw_eigenvalues, a.rows(), policy,
                                 an.rank_report.spectrum.largest());
  return an;
}

bool necessary_check(const Analysis& an) {
  return an.rank_report.rank == nonzero_count(an.spectrum);
}

bool necessary_check(const Matrix& a, const TolerancePolicy& policy) {
  return necessary_check(analyze(a, policy));
}

bool sufficient_check(const Analysis& an) {
  return necessary_check(an) && nonzero_distinct(an.spectrum);
}

bool sufficient_check(const Matrix& a, const TolerancePolicy& policy) {
  return sufficient_check(analyze(a, policy));
}

Verdict classify_two_step(const Matrix& a, const TolerancePolicy& policy) {
  return two_step_from(analyze(a, policy));
}

Verdict classify_full(const Matrix& a, const TolerancePolicy& policy) {
  return full_from(a, analyze(a, policy));
}

BoundReport zero_rank_bound(const Matrix& a, const TolerancePolicy& policy) {
  const Analysis an = analyze(a, policy);
  BoundReport r;
  r.n = a.rows();
  r.zero_multiplicity = an.spectrum.zero_multiplicity;
  r.rank = an.rank_report.rank;
  r.bound = r.n - static_cast<std::size_t>(r.zero_multiplicity);
  r.holds = r.rank >= r.bound;
  r.exact = r.zero_multiplicity == 1 && r.rank == r.n - 1;
  if (!r.holds) {
    r.warnings.push_back("rank " + std::to_string(r.rank) +
                         " fell below the guaranteed bound n - k = " +
                         std::to_string(r.bound) + "; tolerances disagree");
  }
  return r;
}

Eigenbasis eigendecompose(const Matrix& a, const TolerancePolicy& policy, bool force) {
  a.require_square("eigendecompose");
  const std::size_t n = a.rows();
  const Analysis an = analyze(a, policy);
  const Verdict verdict = full_from(a, an);

  if (!force && verdict.outcome != Outcome::Diagonalizable) {
    if (verdict.outcome == Outcome::Defective) {
      // Name the offending cluster.  A failed rank test indicts the zero
      // cluster (its geometric multiplicity is the rank nullity).
      std::string who;
      for (const auto& c : verdict.evidence.clusters) {
        const int gm = c.geometric_multiplicity
                           ? *c.geometric_multiplicity
                           : (c.is_zero ? static_cast<int>(verdict.evidence.nullity) : -1);
        if (gm >= 0 && gm != c.algebraic_multiplicity) {
          who = "eigenvalue " + format_complex(c.value) + " has AM " +
                std::to_string(c.algebraic_multiplicity) + " but GM " +
                std::to_string(gm);
          break;
        }
      }
      throw PreconditionError("eigendecompose requires a diagonalizable matrix: " +
                              (who.empty() ? std::string("defective input") : who));
    }
    throw PreconditionError(std::string("eigendecompose requires a diagonalizable matrix; verdict is Indeterminate (") +
                            to_string(verdict.reason) + ")");
  }

  // Assemble eigenvectors cluster by cluster from the directions of
  // smallest singular value of (a - lambda I).
  Eigenbasis basis{CMatrix(n, n), CMatrix(n, n), 0.0, 0.0};
  std::size_t col = 0;
  for (const auto& c : an.spectrum.clusters) {
    const std::size_t am = static_cast<std::size_t>(c.algebraic_multiplicity);
    const Complex lambda = c.is_zero ? Complex(0.0, 0.0) : c.value;
    CMatrix vecs(1, 1);
    if (lambda.imag() < 0.0) {
      // conjugate of the mirror cluster's basis
      vecs = smallest_singular_directions(a, std::conj(lambda), am);
      for (std::size_t j = 0; j < am; ++j)
        for (std::size_t i = 0; i < n; ++i) vecs(i, j) = std::conj(vecs(i, j));
    } else {
      vecs = smallest_singular_directions(a, lambda, am);
    }
    for (std::size_t j = 0; j < am; ++j, ++col) {
      basis.eigenvalue_matrix_d(col, col) = lambda;
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += std::norm(vecs(i, j));
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < n; ++i)
        basis.eigenvector_matrix_p(i, col) = vecs(i, j) / norm;
    }
  }

  const CMatrix ac = to_complex(a);
  const CMatrix ap = ac * basis.eigenvector_matrix_p;
  const CMatrix pd = basis.eigenvector_matrix_p * basis.eigenvalue_matrix_d;
  basis.residual = (ap - pd).frobenius_norm() / std::max(1.0, a.frobenius_norm());
  basis.eigenvector_det_magnitude = std::abs(determinant(basis.eigenvector_matrix_p));

  if (!force) {
    const auto psvd = jacobi_svd(basis.eigenvector_matrix_p);
    const double smin = psvd.values.back();
    const double cond = smin > 0.0 ? psvd.values.front() / smin
                                   : std::numeric_limits<double>::infinity();
    if (!(cond <= kConditionLimit)) {
      throw ConditioningError("eigenvector matrix condition " + std::to_string(cond) +
                              " exceeds " + std::to_string(kConditionLimit));
    }
  }
  return basis;
}

WarningReport det_check_warning(const Eigenbasis& basis) {
  WarningReport w;
  w.det_magnitude = basis.eigenvector_det_magnitude;
  w.inconclusive = w.det_magnitude >= kEps && w.det_magnitude <= kDetInconclusiveCeiling;
  if (w.inconclusive) {
    w.message = "|det P| = " + std::to_string(w.det_magnitude) +
                " lies in [eps, 1e-4]: invertibility of the eigenvector matrix is "
                "numerically inconclusive at this precision";
  } else {
    w.message = "|det P| = " + std::to_string(w.det_magnitude) + " is conclusive";
  }
  return w;
}

}  // namespace diagx
