#include "diagx/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "diagx/csv.hpp"
#include "diagx/diagnostics.hpp"
#include "diagx/errors.hpp"
#include "diagx/generate.hpp"
#include "diagx/iotable.hpp"
#include "diagx/report.hpp"
#include "diagx/simulate.hpp"

namespace diagx {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt10(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_complex(double re, double im) {
  if (im == 0.0) return fmt(re);
  return fmt(re) + (im < 0 ? " - " : " + ") + fmt(std::abs(im)) + "i";
}

std::string fmt_value(const Json& v) {
  return fmt_complex(v["re"].get<double>(), v["im"].get<double>());
}

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Diagonalizable: return 0;
    case Outcome::Defective: return 2;
    case Outcome::Indeterminate: return 3;
  }
  return 1;
}

Threshold parse_threshold(const std::string& text) {
  const bool rel = text.rfind("rel:", 0) == 0;
  const bool abs = text.rfind("abs:", 0) == 0;
  const std::string number = (rel || abs) ? text.substr(4) : text;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(number, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != number.size() || !std::isfinite(v) || v <= 0.0) {
    throw ParseError("invalid threshold '" + text +
                     "': expected a positive number, rel:COEFF, or abs:VALUE");
  }
  return rel ? Threshold::relative(v) : Threshold::absolute(v);
}

// One-line verdict summary shared by every renderer; values are read back
// from the JSON payload so human output can never drift from --json.
std::string headline(const Json& verdict) {
  const std::string outcome = verdict["outcome"].get<std::string>();
  const std::string reason = verdict["reason"].get<std::string>();
  const Json& ev = verdict["evidence"];
  if (reason == "NecessaryViolated") {
    return outcome + " (necessary condition violated: rank " +
           std::to_string(ev["rank"].get<std::size_t>()) + " ≠ " +
           std::to_string(ev["nonzero_count"].get<std::size_t>()) + " nonzero eigenvalues)";
  }
  if (reason == "SufficientSatisfied") {
    return outcome + " (sufficient condition satisfied: rank " +
           std::to_string(ev["rank"].get<std::size_t>()) + " = " +
           std::to_string(ev["nonzero_count"].get<std::size_t>()) +
           " distinct nonzero eigenvalues)";
  }
  if (reason == "MultiplicityResolved") {
    if (outcome == "Defective") {
      for (const Json& c : ev["clusters"]) {
        if (c["geometric_multiplicity"].is_null()) continue;
        const int am = c["algebraic_multiplicity"].get<int>();
        const int gm = c["geometric_multiplicity"].get<int>();
        if (gm < am) {
          return outcome + " (multiplicity deficit: eigenvalue " + fmt_value(c["value"]) +
                 " has algebraic multiplicity " + std::to_string(am) +
                 " but geometric multiplicity " + std::to_string(gm) + ")";
        }
      }
      return outcome + " (multiplicity deficit)";
    }
    return outcome + " (multiplicities resolved: GM = AM for every eigenvalue cluster)";
  }
  if (reason == "RepeatedNonzeroEigenvalue") {
    return outcome + " (repeated nonzero eigenvalue: the two-step test cannot conclude)";
  }
  return outcome + " (fragile spectrum: eigenvalue magnitudes too close to the zero threshold)";
}

void render_evidence(const Json& ev, std::ostream& out, const std::string& indent) {
  out << indent << "n " << ev["n"].get<std::size_t>() << ", rank "
      << ev["rank"].get<std::size_t>() << ", nullity " << ev["nullity"].get<std::size_t>()
      << ", zero multiplicity " << ev["zero_multiplicity"].get<int>() << "\n";
  out << indent << "nonzero eigenvalues " << ev["nonzero_count"].get<std::size_t>()
      << (ev["nonzero_distinct"].get<bool>() ? " (distinct)" : " (repeats present)") << "\n";
  out << indent << "clusters:\n";
  for (const Json& c : ev["clusters"]) {
    out << indent << "  λ = " << fmt_value(c["value"]) << "  AM "
        << c["algebraic_multiplicity"].get<int>();
    if (!c["geometric_multiplicity"].is_null()) {
      out << "  GM " << c["geometric_multiplicity"].get<int>();
    }
    if (c["is_zero"].get<bool>()) out << "  (zero cluster)";
    out << "\n";
  }
  const Json& th = ev["thresholds"];
  out << indent << "thresholds: zero " << fmt(th["zero_threshold"].get<double>())
      << ", cluster " << fmt(th["cluster_threshold"].get<double>()) << ", rank "
      << fmt(th["rank_threshold"].get<double>()) << " (scale "
      << fmt(th["scale"].get<double>()) << ")\n";
  for (const Json& w : ev["warnings"]) {
    out << indent << "warning: " << w.get<std::string>() << "\n";
  }
}

void render_table(const Json& t, bool prune_requested, std::ostream& out) {
  const std::size_t d0 = t["dimension_original"].get<std::size_t>();
  const std::size_t d1 = t["dimension"].get<std::size_t>();
  if (prune_requested) {
    out << "dimension " << d0 << " → " << d1 << "\n";
    out << "pruned sectors: ";
    if (t["pruned"].empty()) {
      out << "none";
    } else {
      bool first = true;
      for (const Json& name : t["pruned"]) {
        if (!first) out << ", ";
        out << name.get<std::string>();
        first = false;
      }
    }
    out << "\n";
  } else {
    out << "dimension " << d1 << "\n";
  }
  out << "rank " << t["rank"].get<std::size_t>() << ", nonzero eigenvalues "
      << t["nonzero_count"].get<std::size_t>() << ", distinct "
      << (t["nonzero_distinct"].get<bool>() ? "yes" : "no") << "\n";
  out << "verdict: " << headline(t["verdict"]) << "\n";
  render_evidence(t["verdict"]["evidence"], out, "  ");
  for (const Json& w : t["warnings"]) out << "warning: " << w.get<std::string>() << "\n";
}

void render_simulation(const Json& s, std::ostream& out) {
  out << "spectral radius " << fmt(s["spectral_radius"].get<double>()) << "\n";
  if (s["modal_summary_available"].get<bool>()) {
    out << "modes (descending |λ|):\n";
    for (const Json& m : s["modes"]) {
      out << "  λ = " << fmt_value(m["eigenvalue"]) << "  |λ| "
          << fmt(m["magnitude"].get<double>()) << "  coefficient "
          << fmt(m["coefficient_magnitude"].get<double>()) << "  half-life ";
      if (m["half_life_steps"].is_null()) {
        out << "∞";
      } else {
        out << fmt(m["half_life_steps"].get<double>());
      }
      out << "\n";
    }
    if (s.contains("basis_residual")) {
      out << "basis residual " << fmt(s["basis_residual"].get<double>()) << "\n";
    }
  } else {
    out << "modal summary unavailable (direct iteration only)\n";
  }
  out << "trajectory:\n";
  out << "  t";
  for (const Json& name : s["sectors"]) out << "\t" << name.get<std::string>();
  out << "\n";
  std::size_t step = 0;
  for (const Json& row : s["trajectory"]) {
    out << "  " << step++;
    for (const Json& v : row) out << "\t" << fmt10(v.get<double>());
    out << "\n";
  }
  for (const Json& w : s["warnings"]) out << "warning: " << w.get<std::string>() << "\n";
}

std::pair<std::string, double> parse_shock(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ScenarioError("shock must look like sector=magnitude, got '" + text + "'");
  }
  const std::string mag_text = text.substr(eq + 1);
  std::size_t used = 0;
  double magnitude = 0.0;
  try {
    magnitude = std::stod(mag_text, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != mag_text.size() || !std::isfinite(magnitude)) {
    throw ScenarioError("invalid shock magnitude '" + mag_text + "'");
  }
  return {text.substr(0, eq), magnitude};
}

struct ClassifyArgs {
  std::string file;
  std::string tol_zero, tol_cluster, tol_rank;
  bool two_step_only = false;
  bool json = false;
};

TolerancePolicy policy_from(const std::string& zero, const std::string& cluster,
                            const std::string& rank) {
  TolerancePolicy p;
  if (!zero.empty()) p.zero = parse_threshold(zero);
  if (!cluster.empty()) p.cluster = parse_threshold(cluster);
  if (!rank.empty()) p.rank = parse_threshold(rank);
  return p;
}

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  const TolerancePolicy policy = policy_from(a.tol_zero, a.tol_cluster, a.tol_rank);
  const std::string text = read_text_file(a.file);
  const Matrix m = parse_matrix_csv(text);
  const Verdict v = a.two_step_only ? classify_two_step(m, policy) : classify_full(m, policy);

  ReportEnvelope env;
  env.command = "classify";
  env.inputs.push_back({a.file, sha256_hex(text)});
  env.policy = to_json(policy);
  env.payload = to_json(v);
  env.warnings = v.evidence.warnings;
  if (a.json) {
    out << env.build().dump(2) << "\n";
  } else {
    out << headline(env.payload) << "\n";
    render_evidence(env.payload["evidence"], out, "  ");
  }
  return exit_for(v.outcome);
}

struct TableArgs {
  std::string file;
  bool prune = false;
  std::string normalization = "column";
  bool json = false;
};

int cmd_table(const TableArgs& a, std::ostream& out) {
  const std::string text = read_text_file(a.file);
  const IOTable table = parse_io_table(text);
  TableOptions opt;
  opt.prune = a.prune;
  opt.normalization =
      a.normalization == "row" ? Normalization::Row : Normalization::Column;
  const TolerancePolicy policy;
  const TableReport rep = table_report(table, policy, opt);

  ReportEnvelope env;
  env.command = "table";
  env.inputs.push_back({a.file, sha256_hex(text)});
  env.policy = to_json(policy);
  env.payload = to_json(rep);
  env.warnings = rep.warnings;
  if (a.json) {
    out << env.build().dump(2) << "\n";
  } else {
    render_table(env.payload, a.prune, out);
  }
  return exit_for(rep.verdict.outcome);
}

struct SimulateArgs {
  std::string file;
  std::vector<std::string> shocks;
  std::size_t horizon = 10;
  bool force = false;
  bool json = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const std::string text = read_text_file(a.file);
  const IOTable table = parse_io_table(text);
  const ShareMatrix share = expenditure_share(table);
  ShockScenario scenario;
  scenario.horizon = a.horizon;
  for (const std::string& s : a.shocks) scenario.shocks.push_back(parse_shock(s));

  const TolerancePolicy policy;
  const Verdict gate = classify_full(share.a, policy);
  if (gate.outcome != Outcome::Diagonalizable && !a.force) {
    const Json verdict = to_json(gate);
    err << "cannot simulate: eigendecomposition requires a diagonalizable share matrix"
        << " (pass --force for direct iteration only)\n";
    err << "verdict: " << headline(verdict) << "\n";
    render_evidence(verdict["evidence"], err, "  ");
    return exit_for(gate.outcome);
  }

  SimulateOptions opt;
  opt.force = a.force;
  const SimulationResult result = simulate_shock(share, scenario, policy, opt);

  ReportEnvelope env;
  env.command = "simulate";
  env.inputs.push_back({a.file, sha256_hex(text)});
  env.policy = to_json(policy);
  env.payload = to_json(result);
  env.warnings = result.warnings;
  if (a.json) {
    out << env.build().dump(2) << "\n";
  } else {
    render_simulation(env.payload, out);
  }
  return 0;
}

struct GenerateArgs {
  std::string kind;
  std::size_t n = 0;
  std::size_t rank = 0;
  std::size_t nonzero = 0;
  bool rank_set = false;
  bool nonzero_set = false;
  std::uint64_t seed = 1;
  std::string out_path = "fixture.csv";
  bool json = false;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  FixtureSpec spec;
  spec.n = a.n;
  spec.seed = a.seed;
  if (a.kind == "jordan") {
    spec.kind = FixtureKind::Jordan;
  } else if (a.kind == "diagonalizable") {
    spec.kind = FixtureKind::Diagonalizable;
  } else {
    spec.kind = FixtureKind::RankProfile;
    if (!a.rank_set || !a.nonzero_set) {
      throw InfeasibleProfileError("--kind=rank-profile requires --rank and --nonzero");
    }
    spec.rank = a.rank;
    spec.nonzero = a.nonzero;
  }

  const Fixture fx = generate_fixture(spec);
  const std::string sidecar = a.out_path + ".json";
  write_matrix_csv(a.out_path, fx.a);
  const Json meta = to_json(fx, spec);
  write_text_file(sidecar, meta.dump(2) + "\n");

  ReportEnvelope env;
  env.command = "generate";
  env.policy = Json(nullptr);
  env.payload = Json{{"matrix_path", a.out_path}, {"sidecar_path", sidecar}, {"fixture", meta}};
  if (fx.similarity_condition > 100.0) {
    env.warnings.push_back("similarity condition " + fmt(fx.similarity_condition) +
                           " exceeds the usual 100 bound; ground truth still exact");
  }
  if (a.json) {
    out << env.build().dump(2) << "\n";
  } else {
    out << "wrote " << a.out_path << " (" << spec.n << "x" << spec.n << " matrix) and "
        << sidecar << "\n";
    out << "kind " << a.kind << ", rank " << fx.true_rank << ", nonzero eigenvalues "
        << fx.true_nonzero << ", zero multiplicity " << fx.zero_multiplicity
        << ", expected verdict " << to_string(fx.expected) << "\n";
    out << "similarity condition " << fmt(fx.similarity_condition)
        << "; recommended absolute tolerances: zero " << fmt(fx.recommended_zero_tolerance)
        << ", cluster " << fmt(fx.recommended_cluster_tolerance) << "\n";
    for (const std::string& w : env.warnings) out << "warning: " << w << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"diagnose whether real matrices and IO share tables are diagonalizable"};
  app.name("diagx");
  app.require_subcommand(1);

  ClassifyArgs cls;
  CLI::App* classify = app.add_subcommand(
      "classify", "classify one bare CSV matrix (exit 0/2/3 = verdict, 1 = error)");
  classify->add_option("matrix", cls.file, "CSV file with one matrix row per line")->required();
  classify->add_option("--tol-zero", cls.tol_zero,
                       "zero threshold: absolute value, or rel:COEFF of n*eps*scale");
  classify->add_option("--tol-cluster", cls.tol_cluster,
                       "cluster threshold: absolute value, or rel:COEFF of n*eps*scale");
  classify->add_option("--tol-rank", cls.tol_rank,
                       "rank threshold: absolute value, or rel:COEFF of n*eps*sigma1");
  classify->add_flag("--two-step-only", cls.two_step_only,
                     "stop after the rank screen; do not resolve multiplicities");
  classify->add_flag("--json", cls.json, "emit a dx-report/1 JSON envelope");

  TableArgs tbl;
  CLI::App* table = app.add_subcommand("table", "analyze an inter-sector flow table");
  table->add_option("table", tbl.file, "IO-table CSV file")->required();
  table->add_flag("--prune", tbl.prune, "drop disconnected sectors before analysis");
  table->add_option("--normalization", tbl.normalization,
                    "divide flows by column (purchaser) or row (seller) gross outlay")
      ->check(CLI::IsMember({"column", "row"}));
  table->add_flag("--json", tbl.json, "emit a dx-report/1 JSON envelope");

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "propagate a demand shock through a share matrix");
  simulate->add_option("table", sim.file, "IO-table CSV file")->required();
  simulate->add_option("--shock", sim.shocks, "sector=magnitude (repeatable)")->required();
  simulate->add_option("--horizon", sim.horizon, "steps to iterate (default 10)");
  simulate->add_flag("--force", sim.force,
                     "iterate even when the share matrix is not certified diagonalizable");
  simulate->add_flag("--json", sim.json, "emit a dx-report/1 JSON envelope");

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "construct a fixture matrix with exactly known spectral structure");
  generate->add_option("--kind", gen.kind, "jordan | diagonalizable | rank-profile")
      ->required()
      ->check(CLI::IsMember({"jordan", "diagonalizable", "rank-profile"}));
  generate->add_option("--n", gen.n, "matrix dimension")->required();
  CLI::Option* rank_opt = generate->add_option("--rank", gen.rank, "numerical rank (rank-profile)");
  CLI::Option* nz_opt =
      generate->add_option("--nonzero", gen.nonzero, "nonzero eigenvalue count (rank-profile)");
  generate->add_option("--seed", gen.seed, "generator seed (default 1)");
  generate->add_option("--out", gen.out_path,
                       "matrix CSV path; ground truth goes to <out>.json (default fixture.csv)");
  generate->add_flag("--json", gen.json, "emit a dx-report/1 JSON envelope");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (classify->parsed()) return cmd_classify(cls, out);
    if (table->parsed()) return cmd_table(tbl, out);
    if (simulate->parsed()) return cmd_simulate(sim, out, err);
    if (generate->parsed()) {
      gen.rank_set = rank_opt->count() > 0;
      gen.nonzero_set = nz_opt->count() > 0;
      return cmd_generate(gen, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command selected\n";
  return 1;
}

}  // namespace diagx
