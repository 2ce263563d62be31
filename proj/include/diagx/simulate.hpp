#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "diagx/diagnostics.hpp"
#include "diagx/iotable.hpp"

namespace diagx {

/// A temporary demand shock: named sectors with deviation magnitudes
/// (fractions of baseline output), propagated for `horizon` steps.
struct ShockScenario {
  std::vector<std::pair<std::string, double>> shocks;
  std::size_t horizon = 10;
};

/// Per-eigenvalue decay summary of a propagated shock.
struct Mode {
  Complex eigenvalue;
  double magnitude = 0.0;              // |eigenvalue|
  double coefficient_magnitude = 0.0;  // |c_i| where x_0 = P c
  /// Steps for the mode to halve: ln 2 / (-ln |lambda|); 0 for a dead
  /// (zero) mode, unset for |lambda| >= 1 - 1e-12 (no decay; the slack
  /// absorbs rounding on exactly-unit eigenvalues).
  std::optional<double> half_life_steps;
};

struct SimulationResult {
  std::vector<std::string> sectors;
  /// trajectory[t] is the deviation vector after t steps; index 0 is the
  /// shock itself, so horizon h yields h + 1 entries.
  std::vector<std::vector<double>> trajectory;
  std::vector<Mode> modes;  // sorted by descending |eigenvalue|
  double spectral_radius = 0.0;
  bool modal_summary_available = false;
  std::optional<Eigenbasis> basis;        // present when the modal path ran
  std::vector<Complex> mode_coefficients; // aligned with basis columns
  std::vector<std::string> warnings;
};

struct SimulateOptions {
  bool force = false;               // iterate even when not diagonalizable
  bool propagate_transpose = false; // use a^T as the propagation map
};

/// Iterate x_{t+1} = A x_t from the scenario's shock vector and decompose
/// the evolution into eigenmodes.  Requires a Diagonalizable verdict for
/// the modal summary; `force` falls back to direct iteration alone.
SimulationResult simulate_shock(const ShareMatrix& share, const ShockScenario& scenario,
                                const TolerancePolicy& policy = {},
                                const SimulateOptions& options = {});

/// ln 2 / (-ln m) for 0 < m < 1; 0 when m == 0; unset when m >= 1.
std::optional<double> half_life(double magnitude);

}  // namespace diagx
