// Acceptance gate: ten observable behaviors of the classification library,
// each verified independently and reported as a single [PASS]/[FAIL] line.
// All tolerances and suite sizes are pinned here as named constants; the
// process exits nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "diagx/cli.hpp"
#include "diagx/csv.hpp"
#include "diagx/diagnostics.hpp"
#include "diagx/generate.hpp"
#include "diagx/iotable.hpp"
#include "diagx/matrix.hpp"
#include "diagx/simulate.hpp"

namespace {

using diagx::CMatrix;
using diagx::Complex;
using diagx::Fixture;
using diagx::FixtureKind;
using diagx::Matrix;
using diagx::Outcome;
using diagx::Reason;
using diagx::TolerancePolicy;
using diagx::Verdict;

// --- pinned tolerances and suite sizes ------------------------------------
constexpr int kDiagonalizableSuiteSize = 500;   // criterion 3
constexpr int kZeroPaddedSuiteSize = 500;       // criterion 4
constexpr int kJordanSuiteSize = 200;           // criterion 5
constexpr double kMaxSimilarityCondition = 1e4; // suite constraint, criterion 3
constexpr double kResidualCeiling = 1e-6;       // criterion 8: ||AP-PD||_F / ||A||_F
constexpr double kModalMatchCeiling = 1e-6;     // criterion 9, relative to ||x0||_inf
constexpr std::size_t kModalSteps = 100;        // criterion 9 horizon
constexpr double kHalfLifeExpected = 6.5788134785;  // ln 2 / -ln 0.9
constexpr double kHalfLifeTolerance = 1e-3;     // criterion 9
constexpr double kExampleBudgetMs = 10.0;       // criterion 1, per matrix
constexpr double kPipelineBudgetMs = 1000.0;    // criterion 7, per 40x40 matrix

int g_failures = 0;

void run_criterion(int number, const std::string& behavior,
                   const std::function<std::pair<bool, std::string>()>& body) {
  bool pass = false;
  std::string detail;
  try {
    std::tie(pass, detail) = body();
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << behavior;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << "\n";
  if (!pass) ++g_failures;
}

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

TolerancePolicy recommended_policy(const Fixture& fx) {
  TolerancePolicy policy;
  policy.zero = diagx::Threshold::absolute(fx.recommended_zero_tolerance);
  policy.cluster = diagx::Threshold::absolute(fx.recommended_cluster_tolerance);
  return policy;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Residual of the planted identity A P = P D, relative to ||A||_F.
double reconstruction_residual(const Matrix& a, const diagx::Eigenbasis& basis) {
  const CMatrix ap = diagx::to_complex(a) * basis.eigenvector_matrix_p;
  const CMatrix pd = basis.eigenvector_matrix_p * basis.eigenvalue_matrix_d;
  return (ap - pd).frobenius_norm() / a.frobenius_norm();
}

// --- shared suites ---------------------------------------------------------

// Suite for criteria 3/6/8: random full-rank constructions with distinct
// integer eigenvalues (separations >= 1), n in [2, 20], similarity
// condition capped at 1e4 (resampled on the rare miss).
const std::vector<Fixture>& diagonalizable_suite() {
  static const std::vector<Fixture> suite = [] {
    std::vector<Fixture> out;
    out.reserve(kDiagonalizableSuiteSize);
    for (int i = 0; i < kDiagonalizableSuiteSize; ++i) {
      const std::size_t n = 2 + static_cast<std::size_t>(i % 19);
      std::uint64_t seed = 10000 + static_cast<std::uint64_t>(i);
      Fixture fx = diagx::generate_fixture({FixtureKind::Diagonalizable, n, 0, 0, seed});
      while (fx.similarity_condition > kMaxSimilarityCondition) {
        seed += 7919;
        fx = diagx::generate_fixture({FixtureKind::Diagonalizable, n, 0, 0, seed});
      }
      out.push_back(std::move(fx));
    }
    return out;
  }();
  return suite;
}

// Suite for criteria 4/6/8: distinct nonzero integer eigenvalues plus zero
// to five genuine zero eigenvalues, all in diagonal (size-1) blocks.
const std::vector<Fixture>& zero_padded_suite() {
  static const std::vector<Fixture> suite = [] {
    std::vector<Fixture> out;
    out.reserve(kZeroPaddedSuiteSize);
    for (int i = 0; i < kZeroPaddedSuiteSize; ++i) {
      diagx::Rng rng(40000 + static_cast<std::uint64_t>(i));
      const std::size_t nonzero = 1 + rng.below(15);  // 1..15 distinct magnitudes
      const std::size_t zeros = rng.below(6);         // 0..5
      std::vector<diagx::JordanBlock> blocks;
      for (std::size_t k = 0; k < nonzero; ++k)
        blocks.push_back({static_cast<double>(k + 1) * rng.sign(), 1});
      for (std::size_t z = 0; z < zeros; ++z) blocks.push_back({0.0, 1});
      out.push_back(diagx::fixture_from_blocks(blocks, rng));
    }
    return out;
  }();
  return suite;
}

// Suite for criteria 5/6: defective constructions whose per-eigenvalue
// multiplicities are known by construction.  Block sizes stay at 3 or
// below so the eigenvalue splatter of a defective cluster remains well
// inside the recommended cluster tolerance.
struct PlantedJordan {
  Fixture fx;
  // (eigenvalue, algebraic multiplicity, geometric multiplicity)
  std::vector<std::tuple<double, int, int>> truth;
};

const std::vector<PlantedJordan>& jordan_suite() {
  static const std::vector<PlantedJordan> suite = [] {
    std::vector<PlantedJordan> out;
    out.reserve(kJordanSuiteSize);
    for (int i = 0; i < kJordanSuiteSize; ++i) {
      diagx::Rng rng(60000 + static_cast<std::uint64_t>(i));
      std::vector<diagx::JordanBlock> blocks;
      std::vector<std::tuple<double, int, int>> truth;
      const double defect_value = 1.0 * rng.sign();
      switch (i % 4) {
        case 0:
          blocks.push_back({defect_value, 2});
          truth.emplace_back(defect_value, 2, 1);
          break;
        case 1:
          blocks.push_back({defect_value, 3});
          truth.emplace_back(defect_value, 3, 1);
          break;
        case 2:
          blocks.push_back({defect_value, 2});
          blocks.push_back({defect_value, 1});
          truth.emplace_back(defect_value, 3, 2);
          break;
        default:
          blocks.push_back({defect_value, 2});
          blocks.push_back({defect_value, 2});
          truth.emplace_back(defect_value, 4, 2);
          break;
      }
      const double second = 2.0 * rng.sign();
      blocks.push_back({second, 1});
      truth.emplace_back(second, 1, 1);
      if (i % 2 == 1) {
        const double third = 3.0 * rng.sign();
        blocks.push_back({third, 1});
        truth.emplace_back(third, 1, 1);
      }
      if (i % 3 == 0) {
        blocks.push_back({0.0, 1});
        truth.emplace_back(0.0, 1, 1);
      }
      PlantedJordan planted{diagx::fixture_from_blocks(blocks, rng), std::move(truth)};
      out.push_back(std::move(planted));
    }
    return out;
  }();
  return suite;
}

// --- criterion bodies -------------------------------------------------------

std::pair<bool, std::string> criterion_reference_matrices() {
  struct Case {
    Matrix a;
    Outcome outcome;
    Reason reason;
  };
  const std::vector<Case> cases = {
      {mat2(1, 0, 0, 1), Outcome::Diagonalizable, Reason::MultiplicityResolved},
      {mat2(1, 0, 0, 0), Outcome::Diagonalizable, Reason::SufficientSatisfied},
      {mat2(1, 1, 0, 1), Outcome::Defective, Reason::MultiplicityResolved},
      {mat2(0, 1, 0, 0), Outcome::Defective, Reason::NecessaryViolated},
  };
  double worst_ms = 0.0;
  for (const Case& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const Verdict v = diagx::classify_full(c.a);
    const double ms = elapsed_ms(t0);
    worst_ms = std::max(worst_ms, ms);
    if (v.outcome != c.outcome || v.reason != c.reason) {
      return {false, std::string("got ") + diagx::to_string(v.outcome) + "/" +
                         diagx::to_string(v.reason)};
    }
    if (ms >= kExampleBudgetMs) return {false, "classification took " + fmt(ms) + " ms"};
  }
  return {true, "4/4 verdicts exact, slowest " + fmt(worst_ms) + " ms"};
}

std::pair<bool, std::string> criterion_two_step_branch() {
  const Matrix jordan = mat2(1, 1, 0, 1);
  const Matrix identity = mat2(1, 0, 0, 1);

  const Verdict sj = diagx::classify_two_step(jordan);
  const Verdict si = diagx::classify_two_step(identity);
  if (sj.outcome != Outcome::Indeterminate || sj.reason != Reason::RepeatedNonzeroEigenvalue)
    return {false, "screen did not stay indeterminate on the Jordan block"};
  if (si.outcome != Outcome::Indeterminate || si.reason != Reason::RepeatedNonzeroEigenvalue)
    return {false, "screen did not stay indeterminate on the identity"};

  const Verdict fj = diagx::classify_full(jordan);
  const Verdict fi = diagx::classify_full(identity);
  if (fj.outcome != Outcome::Defective) return {false, "full test missed the Jordan defect"};
  if (fi.outcome != Outcome::Diagonalizable) return {false, "full test misjudged the identity"};
  return {true, ""};
}

std::pair<bool, std::string> criterion_rank_screen_suite() {
  int screens_passed = 0;
  int false_defective = 0;
  double max_condition = 0.0;
  for (const Fixture& fx : diagonalizable_suite()) {
    const TolerancePolicy policy = recommended_policy(fx);
    if (diagx::necessary_check(fx.a, policy)) ++screens_passed;
    if (diagx::classify_full(fx.a, policy).outcome == Outcome::Defective) ++false_defective;
    max_condition = std::max(max_condition, fx.similarity_condition);
  }
  const bool pass =
      screens_passed == kDiagonalizableSuiteSize && false_defective == 0;
  return {pass, std::to_string(screens_passed) + "/" +
                    std::to_string(kDiagonalizableSuiteSize) + " screens passed, " +
                    std::to_string(false_defective) +
                    " false defective, max similarity condition " + fmt(max_condition)};
}

std::pair<bool, std::string> criterion_two_step_certification_suite() {
  int certified = 0;
  for (const Fixture& fx : zero_padded_suite()) {
    const Verdict v = diagx::classify_two_step(fx.a, recommended_policy(fx));
    if (v.outcome == Outcome::Diagonalizable && v.reason == Reason::SufficientSatisfied)
      ++certified;
  }
  const bool pass = certified == kZeroPaddedSuiteSize;
  return {pass, std::to_string(certified) + "/" + std::to_string(kZeroPaddedSuiteSize) +
                    " certified by the screen alone"};
}

std::pair<bool, std::string> criterion_defective_suite() {
  int convicted = 0;
  int multiplicity_mismatches = 0;
  for (const PlantedJordan& planted : jordan_suite()) {
    const Verdict v = diagx::classify_full(planted.fx.a, recommended_policy(planted.fx));
    if (v.outcome == Outcome::Defective) ++convicted;

    // Every reported cluster must match the planted multiplicities, and at
    // least one deficit must be reported.
    bool any_deficit = false;
    for (const auto& cluster : v.evidence.clusters) {
      const auto match = std::find_if(
          planted.truth.begin(), planted.truth.end(), [&](const auto& t) {
            return std::abs(cluster.value - Complex(std::get<0>(t), 0.0)) < 0.5;
          });
      if (match == planted.truth.end()) {
        ++multiplicity_mismatches;
        continue;
      }
      if (cluster.algebraic_multiplicity != std::get<1>(*match)) ++multiplicity_mismatches;
      if (cluster.geometric_multiplicity.has_value()) {
        if (*cluster.geometric_multiplicity != std::get<2>(*match)) ++multiplicity_mismatches;
        if (*cluster.geometric_multiplicity < cluster.algebraic_multiplicity) any_deficit = true;
      }
    }
    if (!any_deficit) ++multiplicity_mismatches;
  }
  const bool pass = convicted == kJordanSuiteSize && multiplicity_mismatches == 0;
  return {pass, std::to_string(convicted) + "/" + std::to_string(kJordanSuiteSize) +
                    " convicted, " + std::to_string(multiplicity_mismatches) +
                    " multiplicity mismatches"};
}

std::pair<bool, std::string> criterion_zero_rank_bound() {
  std::size_t checked = 0;
  std::size_t violations = 0;

  const auto check_fixture = [&](const Fixture& fx) {
    const diagx::BoundReport r = diagx::zero_rank_bound(fx.a, recommended_policy(fx));
    ++checked;
    if (!r.holds) ++violations;
    if (r.zero_multiplicity != fx.zero_multiplicity) ++violations;
    if (fx.zero_multiplicity == 1 && !r.exact) ++violations;
  };

  for (const Fixture& fx : diagonalizable_suite()) check_fixture(fx);
  for (const Fixture& fx : zero_padded_suite()) check_fixture(fx);
  for (const PlantedJordan& planted : jordan_suite()) check_fixture(planted.fx);

  // Dedicated simple-zero constructions: one zero eigenvalue forces rank
  // exactly n - 1.
  for (std::size_t n : {3, 7, 12, 17, 22}) {
    const Fixture fx = diagx::generate_fixture(
        {FixtureKind::RankProfile, n, n - 1, n - 1, 90000 + static_cast<std::uint64_t>(n)});
    ++checked;
    const diagx::BoundReport r = diagx::zero_rank_bound(fx.a, recommended_policy(fx));
    if (!(r.holds && r.exact && r.rank == n - 1 && r.zero_multiplicity == 1)) ++violations;
  }

  // The nilpotent 2x2 shift: two zero eigenvalues give bound n - k = 0,
  // yet the rank is 1.  Both are reported side by side, and the defect is
  // caught by the rank test, not hidden by the bound.
  const Matrix nilpotent = mat2(0, 1, 0, 0);
  const diagx::BoundReport r = diagx::zero_rank_bound(nilpotent);
  ++checked;
  if (!(r.zero_multiplicity == 2 && r.bound == 0 && r.rank == 1 && r.holds && !r.exact))
    ++violations;
  if (diagx::classify_full(nilpotent).outcome != Outcome::Defective) ++violations;

  return {violations == 0, std::to_string(checked) + " constructions checked, " +
                               std::to_string(violations) + " violations"};
}

std::pair<bool, std::string> criterion_rank_profiles() {
  struct Profile {
    std::size_t n, rank, nonzero;
    Outcome expected;
    std::uint64_t seed;
  };
  const std::vector<Profile> profiles = {
      {36, 32, 31, Outcome::Defective, 71},
      {36, 32, 31, Outcome::Defective, 72},
      {36, 34, 33, Outcome::Defective, 73},
      {22, 22, 22, Outcome::Diagonalizable, 74},
      {39, 39, 39, Outcome::Diagonalizable, 75},
  };
  for (const Profile& p : profiles) {
    const Fixture fx =
        diagx::generate_fixture({FixtureKind::RankProfile, p.n, p.rank, p.nonzero, p.seed});
    const Verdict v = diagx::classify_full(fx.a, recommended_policy(fx));
    if (v.outcome != p.expected) {
      return {false, "profile (" + std::to_string(p.n) + "," + std::to_string(p.rank) + "," +
                         std::to_string(p.nonzero) + ") classified " +
                         diagx::to_string(v.outcome)};
    }
    if (v.evidence.n != p.n || v.evidence.rank != p.rank ||
        v.evidence.nonzero_count != p.nonzero) {
      return {false, "evidence disagrees with the planted profile (" + std::to_string(p.n) +
                         "," + std::to_string(p.rank) + "," + std::to_string(p.nonzero) + ")"};
    }
  }

  // Analysis throughput: classification plus eigendecomposition of a 40x40
  // matrix inside the budget.
  const Fixture big = diagx::generate_fixture({FixtureKind::Diagonalizable, 40, 0, 0, 76});
  const TolerancePolicy policy = recommended_policy(big);
  const auto t0 = std::chrono::steady_clock::now();
  const Verdict v = diagx::classify_full(big.a, policy);
  const diagx::Eigenbasis basis = diagx::eigendecompose(big.a, policy);
  const double ms = elapsed_ms(t0);
  if (v.outcome != Outcome::Diagonalizable) return {false, "40x40 fixture misclassified"};
  if (reconstruction_residual(big.a, basis) > kResidualCeiling)
    return {false, "40x40 residual above ceiling"};
  if (ms >= kPipelineBudgetMs) return {false, "40x40 pipeline took " + fmt(ms) + " ms"};
  return {true, "5/5 profiles reproduced, 40x40 pipeline " + fmt(ms) + " ms"};
}

std::pair<bool, std::string> criterion_residuals() {
  double worst = 0.0;
  std::size_t decomposed = 0;
  const auto check_fixture = [&](const Fixture& fx) {
    const TolerancePolicy policy = recommended_policy(fx);
    if (diagx::classify_full(fx.a, policy).outcome != Outcome::Diagonalizable) return;
    const diagx::Eigenbasis basis = diagx::eigendecompose(fx.a, policy);
    worst = std::max(worst, reconstruction_residual(fx.a, basis));
    ++decomposed;
  };
  for (const Fixture& fx : diagonalizable_suite()) check_fixture(fx);
  for (const Fixture& fx : zero_padded_suite()) check_fixture(fx);

  const std::size_t expected =
      static_cast<std::size_t>(kDiagonalizableSuiteSize + kZeroPaddedSuiteSize);
  const bool pass = worst <= kResidualCeiling && decomposed == expected;
  return {pass, std::to_string(decomposed) + "/" + std::to_string(expected) +
                    " decomposed, worst residual " + fmt(worst)};
}

std::pair<bool, std::string> criterion_shock_simulation() {
  // Two tables with exactly-representable shares, distinct eigenvalues,
  // and spectral radius 0.5.
  const std::vector<std::string> tables = {
      "sector,s1,s2,s3,s4\n"
      "s1,5,1,0,0\n"
      "s2,0,3,1,0\n"
      "s3,0,0,2,1\n"
      "s4,0,0,0,1\n"
      "gross_outlay,10,10,10,10\n",
      "sector,a,b\n"
      "a,30,20\n"
      "b,10,40\n"
      "gross_outlay,100,100\n",
  };
  for (const std::string& text : tables) {
    const diagx::ShareMatrix share = diagx::expenditure_share(diagx::parse_io_table(text));
    diagx::ShockScenario scenario;
    scenario.shocks = {{share.sectors.front(), 1.0}};
    scenario.horizon = kModalSteps;
    const diagx::SimulationResult sim = diagx::simulate_shock(share, scenario);
    if (!sim.modal_summary_available || !sim.basis.has_value())
      return {false, "modal summary missing on a diagonalizable table"};
    if (!(sim.spectral_radius < 1.0)) return {false, "spectral radius not below 1"};

    const auto& basis = *sim.basis;
    const std::size_t n = share.sectors.size();
    for (std::size_t step = 0; step <= kModalSteps; ++step) {
      for (std::size_t i = 0; i < n; ++i) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
          acc += basis.eigenvector_matrix_p(i, k) *
                 std::pow(basis.eigenvalue_matrix_d(k, k), static_cast<double>(step)) *
                 sim.mode_coefficients[k];
        }
        // Initial shock has unit infinity norm, so the comparison is
        // relative to it.
        if (std::abs(acc.real() - sim.trajectory[step][i]) > kModalMatchCeiling) {
          return {false, "modal reconstruction diverged at step " + std::to_string(step)};
        }
      }
    }
  }

  const auto h = diagx::half_life(0.9);
  if (!h.has_value() || std::abs(*h - kHalfLifeExpected) > kHalfLifeTolerance)
    return {false, "half-life of 0.9 out of tolerance"};

  // A defective share matrix must exit 2 from the simulate command when
  // --force is absent.
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "diagx-acceptance";
  fs::create_directories(dir);
  const std::string table_path = (dir / "defective.csv").string();
  diagx::write_text_file(table_path,
                         "sector,a,b\n"
                         "a,50,25\n"
                         "b,0,50\n"
                         "gross_outlay,100,100\n");
  std::ostringstream out, err;
  const int code = diagx::run_cli({"simulate", table_path, "--shock", "a=1"}, out, err);
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (code != 2) return {false, "simulate exited " + std::to_string(code) + ", expected 2"};

  return {true, "modal and direct paths agree over " + std::to_string(kModalSteps) + " steps"};
}

std::pair<bool, std::string> criterion_determinant_advisory() {
  for (const double delta : {1e-6, 1e-9}) {
    const Matrix a = mat2(1, 1, 0, 1 + delta);
    const Verdict v = diagx::classify_full(a);
    const bool definitive =
        v.outcome != Outcome::Indeterminate || v.reason == Reason::FragileSpectrum;
    if (!definitive) return {false, "silent indeterminate at delta " + fmt(delta)};
    const diagx::WarningReport w = diagx::det_check_warning(diagx::eigendecompose(a));
    if (!w.inconclusive)
      return {false, "advisory stayed silent at delta " + fmt(delta) + " (|det P| " +
                         fmt(w.det_magnitude) + ")"};
  }
  return {true, "advisory fires at both gaps while the verdict stays decisive"};
}

}  // namespace

int main() {
  run_criterion(1, "the four 2x2 reference matrices classify exactly, each under 10 ms",
                criterion_reference_matrices);
  run_criterion(2, "the two-step screen stays indeterminate on repeated nonzero eigenvalues "
                   "and the full test resolves them",
                criterion_two_step_branch);
  run_criterion(3, "500 random diagonalizable constructions all pass the rank screen with no "
                   "false defective verdict",
                criterion_rank_screen_suite);
  run_criterion(4, "500 distinct-eigenvalue constructions with up to five zeros are certified "
                   "by the two-step screen alone",
                criterion_two_step_certification_suite);
  run_criterion(5, "200 Jordan-form constructions are all convicted with multiplicity deficits "
                   "matching ground truth",
                criterion_defective_suite);
  run_criterion(6, "rank never falls below n minus the zero multiplicity, with equality for "
                   "simple zeros",
                criterion_zero_rank_bound);
  run_criterion(7, "rank-profile fixtures reproduce their planted structure and a 40x40 "
                   "pipeline finishes inside 1 s",
                criterion_rank_profiles);
  run_criterion(8, "eigendecomposition residual stays below 1e-6 on every certified "
                   "construction",
                criterion_residuals);
  run_criterion(9, "modal reconstruction tracks direct iteration for 100 steps and defective "
                   "tables exit 2 from simulate",
                criterion_shock_simulation);
  run_criterion(10, "near-defective inputs trigger the determinant advisory while the verdict "
                    "stays decisive",
                criterion_determinant_advisory);

  std::cout << "acceptance: " << (10 - g_failures) << "/10 criteria passed\n";
  return g_failures > 0 ? 1 : 0;
}
