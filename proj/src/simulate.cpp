#include "diagx/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "diagx/lu.hpp"
#include "diagx/schur.hpp"

namespace diagx {

namespace {
// A computed modulus within this distance of 1 counts as non-decaying: QR
// iteration places exactly-unit eigenvalues a few ulps off, and a half-life
// beyond ~7e11 steps carries no information anyway.
constexpr double kUnitRadiusSlack = 1e-12;
}  // namespace

std::optional<double> half_life(double magnitude) {
  if (magnitude == 0.0) return 0.0;
  if (magnitude >= 1.0) return std::nullopt;
  return std::log(2.0) / (-std::log(magnitude));
}

SimulationResult simulate_shock(const ShareMatrix& share, const ShockScenario& scenario,
                                const TolerancePolicy& policy,
                                const SimulateOptions& options) {
  const Matrix a = options.propagate_transpose ? share.a.transposed() : share.a;
  const std::size_t n = a.rows();

  SimulationResult result;
  result.sectors = share.sectors;

  // shock vector
  if (scenario.shocks.empty()) throw ScenarioError("scenario names no shocked sectors");
  std::vector<double> x0(n, 0.0);
  for (const auto& [name, magnitude] : scenario.shocks) {
    auto it = std::find(share.sectors.begin(), share.sectors.end(), name);
    if (it == share.sectors.end()) {
      throw ScenarioError("unknown sector '" + name + "' in shock scenario");
    }
    if (!std::isfinite(magnitude)) throw ScenarioError("non-finite shock magnitude");
    x0[static_cast<std::size_t>(it - share.sectors.begin())] += magnitude;
  }

  const Verdict verdict = classify_full(a, policy);
  for (const auto& c : verdict.evidence.clusters) {
    result.spectral_radius = std::max(result.spectral_radius, std::abs(c.value));
  }
  if (result.spectral_radius >= 1.0 - kUnitRadiusSlack) {
    result.warnings.push_back("spectral radius " + std::to_string(result.spectral_radius) +
                              " is not below 1; deviations do not decay");
  }

  if (verdict.outcome != Outcome::Diagonalizable) {
    if (!options.force) {
      throw PreconditionError(std::string("simulate_shock requires a diagonalizable share matrix "
                                          "for the modal summary; verdict is ") +
                              to_string(verdict.outcome) + " (" + to_string(verdict.reason) +
                              "); pass force to iterate without one");
    }
    result.warnings.push_back(std::string("share matrix verdict is ") + to_string(verdict.outcome) +
                              "; modal summary skipped, direct iteration only");
  } else {
    Eigenbasis basis = eigendecompose(a, policy);
    CMatrix rhs(n, 1);
    for (std::size_t i = 0; i < n; ++i) rhs(i, 0) = Complex(x0[i], 0.0);
    const CMatrix coeff = solve(basis.eigenvector_matrix_p, rhs);
    for (std::size_t i = 0; i < n; ++i) {
      Mode m;
      m.eigenvalue = basis.eigenvalue_matrix_d(i, i);
      m.magnitude = std::abs(m.eigenvalue);
      m.coefficient_magnitude = std::abs(coeff(i, 0));
      m.half_life_steps = m.magnitude >= 1.0 - kUnitRadiusSlack
                              ? std::optional<double>{}
                              : half_life(m.magnitude);
      result.modes.push_back(m);
      result.mode_coefficients.push_back(coeff(i, 0));
    }
    std::stable_sort(result.modes.begin(), result.modes.end(),
                     [](const Mode& x, const Mode& y) { return x.magnitude > y.magnitude; });
    result.modal_summary_available = true;
    result.basis = std::move(basis);
  }

  // direct iteration
  result.trajectory.reserve(scenario.horizon + 1);
  std::vector<double> x = x0;
  result.trajectory.push_back(x);
  for (std::size_t t = 0; t < scenario.horizon; ++t) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
      next[i] = s;
    }
    x = std::move(next);
    result.trajectory.push_back(x);
  }
  return result;
}

}  // namespace diagx
