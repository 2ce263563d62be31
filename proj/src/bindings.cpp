#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>
#include <vector>

#include "diagx/diagnostics.hpp"
#include "diagx/errors.hpp"
#include "diagx/generate.hpp"
#include "diagx/iotable.hpp"
#include "diagx/matrix.hpp"
#include "diagx/simulate.hpp"
#include "diagx/svd.hpp"
#include "diagx/tolerance.hpp"

namespace py = pybind11;

namespace {

using diagx::CMatrix;
using diagx::Complex;
using diagx::Matrix;

Matrix matrix_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2) throw diagx::DimensionError("expected a 2-D array");
  if (arr.shape(0) < 1 || arr.shape(1) < 1) {
    throw diagx::DimensionError("matrix dimensions must be positive");
  }
  Matrix m(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
  auto r = arr.unchecked<2>();
  for (py::ssize_t i = 0; i < arr.shape(0); ++i) {
    for (py::ssize_t j = 0; j < arr.shape(1); ++j) {
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = r(i, j);
    }
  }
  return m;
}

py::array_t<double> array_from_matrix(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
  }
  return out;
}

py::array_t<Complex> array_from_cmatrix(const CMatrix& m) {
  py::array_t<Complex> out({m.rows(), m.cols()});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
  }
  return out;
}

diagx::FixtureKind kind_from_name(const std::string& name) {
  if (name == "jordan") return diagx::FixtureKind::Jordan;
  if (name == "diagonalizable") return diagx::FixtureKind::Diagonalizable;
  if (name == "rank-profile") return diagx::FixtureKind::RankProfile;
  throw diagx::InfeasibleProfileError(
      "unknown fixture kind '" + name + "' (expected jordan, diagonalizable, or rank-profile)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Diagonalizability diagnostics for real matrices and IO share tables";

  py::register_exception<diagx::Error>(m, "Error", PyExc_RuntimeError);

  py::enum_<diagx::Outcome>(m, "Outcome")
      .value("Diagonalizable", diagx::Outcome::Diagonalizable)
      .value("Defective", diagx::Outcome::Defective)
      .value("Indeterminate", diagx::Outcome::Indeterminate);

  py::enum_<diagx::Reason>(m, "Reason")
      .value("NecessaryViolated", diagx::Reason::NecessaryViolated)
      .value("SufficientSatisfied", diagx::Reason::SufficientSatisfied)
      .value("MultiplicityResolved", diagx::Reason::MultiplicityResolved)
      .value("RepeatedNonzeroEigenvalue", diagx::Reason::RepeatedNonzeroEigenvalue)
      .value("FragileSpectrum", diagx::Reason::FragileSpectrum);

  py::enum_<diagx::Normalization>(m, "Normalization")
      .value("Column", diagx::Normalization::Column)
      .value("Row", diagx::Normalization::Row);

  py::class_<diagx::Threshold>(m, "Threshold")
      .def_static("relative", &diagx::Threshold::relative, py::arg("coefficient"))
      .def_static("absolute", &diagx::Threshold::absolute, py::arg("value"))
      .def("resolve", &diagx::Threshold::resolve, py::arg("base"))
      .def_readonly("value", &diagx::Threshold::value);

  py::class_<diagx::TolerancePolicy>(m, "TolerancePolicy")
      .def(py::init<>())
      .def_readwrite("zero", &diagx::TolerancePolicy::zero)
      .def_readwrite("cluster", &diagx::TolerancePolicy::cluster)
      .def_readwrite("rank", &diagx::TolerancePolicy::rank);

  py::class_<diagx::ResolvedPolicy>(m, "ResolvedPolicy")
      .def_readonly("zero_threshold", &diagx::ResolvedPolicy::zero_threshold)
      .def_readonly("cluster_threshold", &diagx::ResolvedPolicy::cluster_threshold)
      .def_readonly("rank_threshold", &diagx::ResolvedPolicy::rank_threshold)
      .def_readonly("scale", &diagx::ResolvedPolicy::scale);

  py::class_<diagx::RankReport>(m, "RankReport")
      .def_readonly("rank", &diagx::RankReport::rank)
      .def_readonly("nullity", &diagx::RankReport::nullity)
      .def_readonly("tolerance_used", &diagx::RankReport::tolerance_used);

  py::class_<diagx::ClusterEvidence>(m, "ClusterEvidence")
      .def_readonly("value", &diagx::ClusterEvidence::value)
      .def_readonly("algebraic_multiplicity", &diagx::ClusterEvidence::algebraic_multiplicity)
      .def_readonly("geometric_multiplicity", &diagx::ClusterEvidence::geometric_multiplicity)
      .def_readonly("is_zero", &diagx::ClusterEvidence::is_zero);

  py::class_<diagx::Evidence>(m, "Evidence")
      .def_readonly("n", &diagx::Evidence::n)
      .def_readonly("rank", &diagx::Evidence::rank)
      .def_readonly("nullity", &diagx::Evidence::nullity)
      .def_readonly("nonzero_count", &diagx::Evidence::nonzero_count)
      .def_readonly("zero_multiplicity", &diagx::Evidence::zero_multiplicity)
      .def_readonly("nonzero_distinct", &diagx::Evidence::nonzero_distinct)
      .def_readonly("clusters", &diagx::Evidence::clusters)
      .def_readonly("resolved", &diagx::Evidence::resolved)
      .def_readonly("warnings", &diagx::Evidence::warnings);

  py::class_<diagx::Verdict>(m, "Verdict")
      .def_readonly("outcome", &diagx::Verdict::outcome)
      .def_readonly("reason", &diagx::Verdict::reason)
      .def_readonly("evidence", &diagx::Verdict::evidence)
      .def("__repr__", [](const diagx::Verdict& v) {
        return std::string("<Verdict ") + diagx::to_string(v.outcome) + "/" +
               diagx::to_string(v.reason) + ">";
      });

  py::class_<diagx::BoundReport>(m, "BoundReport")
      .def_readonly("n", &diagx::BoundReport::n)
      .def_readonly("zero_multiplicity", &diagx::BoundReport::zero_multiplicity)
      .def_readonly("rank", &diagx::BoundReport::rank)
      .def_readonly("bound", &diagx::BoundReport::bound)
      .def_readonly("holds", &diagx::BoundReport::holds)
      .def_readonly("exact", &diagx::BoundReport::exact)
      .def_readonly("warnings", &diagx::BoundReport::warnings);

  py::class_<diagx::Eigenbasis>(m, "Eigenbasis")
      .def_property_readonly("d", [](const diagx::Eigenbasis& b) {
        return array_from_cmatrix(b.eigenvalue_matrix_d);
      })
      .def_property_readonly("p", [](const diagx::Eigenbasis& b) {
        return array_from_cmatrix(b.eigenvector_matrix_p);
      })
      .def_readonly("residual", &diagx::Eigenbasis::residual)
      .def_readonly("eigenvector_det_magnitude", &diagx::Eigenbasis::eigenvector_det_magnitude);

  py::class_<diagx::WarningReport>(m, "WarningReport")
      .def_readonly("det_magnitude", &diagx::WarningReport::det_magnitude)
      .def_readonly("inconclusive", &diagx::WarningReport::inconclusive)
      .def_readonly("message", &diagx::WarningReport::message);

  py::class_<diagx::IOTable>(m, "IOTable")
      .def(py::init([](std::vector<std::string> sectors,
                       const py::array_t<double, py::array::c_style | py::array::forcecast>& flows,
                       std::vector<double> outlay) {
             diagx::IOTable t{std::move(sectors), matrix_from_array(flows), std::move(outlay)};
             return t;
           }),
           py::arg("sectors"), py::arg("flows"), py::arg("gross_outlay"))
      .def_readonly("sectors", &diagx::IOTable::sectors)
      .def_property_readonly(
          "flows", [](const diagx::IOTable& t) { return array_from_matrix(t.flows); })
      .def_readonly("gross_outlay", &diagx::IOTable::gross_outlay)
      .def("__len__", &diagx::IOTable::size);

  py::class_<diagx::ShareMatrix>(m, "ShareMatrix")
      .def_property_readonly("a",
                             [](const diagx::ShareMatrix& s) { return array_from_matrix(s.a); })
      .def_readonly("sectors", &diagx::ShareMatrix::sectors)
      .def_readonly("normalization", &diagx::ShareMatrix::normalization)
      .def_readonly("warnings", &diagx::ShareMatrix::warnings);

  py::class_<diagx::PruneResult>(m, "PruneResult")
      .def_readonly("table", &diagx::PruneResult::table)
      .def_readonly("removed", &diagx::PruneResult::removed);

  py::class_<diagx::TableReport>(m, "TableReport")
      .def_readonly("dimension_original", &diagx::TableReport::dimension_original)
      .def_readonly("dimension", &diagx::TableReport::dimension)
      .def_readonly("sectors", &diagx::TableReport::sectors)
      .def_readonly("pruned", &diagx::TableReport::pruned)
      .def_readonly("rank", &diagx::TableReport::rank)
      .def_readonly("nonzero_count", &diagx::TableReport::nonzero_count)
      .def_readonly("nonzero_distinct", &diagx::TableReport::nonzero_distinct)
      .def_readonly("verdict", &diagx::TableReport::verdict)
      .def_readonly("warnings", &diagx::TableReport::warnings);

  py::class_<diagx::Mode>(m, "Mode")
      .def_readonly("eigenvalue", &diagx::Mode::eigenvalue)
      .def_readonly("magnitude", &diagx::Mode::magnitude)
      .def_readonly("coefficient_magnitude", &diagx::Mode::coefficient_magnitude)
      .def_readonly("half_life_steps", &diagx::Mode::half_life_steps);

  py::class_<diagx::SimulationResult>(m, "SimulationResult")
      .def_readonly("sectors", &diagx::SimulationResult::sectors)
      .def_readonly("trajectory", &diagx::SimulationResult::trajectory)
      .def_readonly("modes", &diagx::SimulationResult::modes)
      .def_readonly("spectral_radius", &diagx::SimulationResult::spectral_radius)
      .def_readonly("modal_summary_available", &diagx::SimulationResult::modal_summary_available)
      .def_readonly("basis", &diagx::SimulationResult::basis)
      .def_readonly("mode_coefficients", &diagx::SimulationResult::mode_coefficients)
      .def_readonly("warnings", &diagx::SimulationResult::warnings);

  py::class_<diagx::Fixture>(m, "Fixture")
      .def_property_readonly("a", [](const diagx::Fixture& f) { return array_from_matrix(f.a); })
      .def_readonly("eigenvalue_list", &diagx::Fixture::eigenvalue_list)
      .def_readonly("expected", &diagx::Fixture::expected)
      .def_readonly("true_rank", &diagx::Fixture::true_rank)
      .def_readonly("true_nonzero", &diagx::Fixture::true_nonzero)
      .def_readonly("zero_multiplicity", &diagx::Fixture::zero_multiplicity)
      .def_readonly("similarity_condition", &diagx::Fixture::similarity_condition)
      .def_readonly("recommended_zero_tolerance", &diagx::Fixture::recommended_zero_tolerance)
      .def_readonly("recommended_cluster_tolerance",
                    &diagx::Fixture::recommended_cluster_tolerance);

  using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

  m.def(
      "eigenvalues",
      [](const Array& a) { return diagx::eigenvalues(matrix_from_array(a)); },
      py::arg("a"), "Eigenvalues of a square real matrix (complex, with multiplicity).");

  m.def(
      "numerical_rank",
      [](const Array& a, const diagx::TolerancePolicy& policy) {
        return diagx::numerical_rank(matrix_from_array(a), policy);
      },
      py::arg("a"), py::arg("policy") = diagx::TolerancePolicy{},
      "Singular-value rank under the policy's rank threshold.");

  m.def(
      "classify_two_step",
      [](const Array& a, const diagx::TolerancePolicy& policy) {
        return diagx::classify_two_step(matrix_from_array(a), policy);
      },
      py::arg("a"), py::arg("policy") = diagx::TolerancePolicy{},
      "Rank screen: necessary condition, then sufficient condition.");

  m.def(
      "classify_full",
      [](const Array& a, const diagx::TolerancePolicy& policy) {
        return diagx::classify_full(matrix_from_array(a), policy);
      },
      py::arg("a"), py::arg("policy") = diagx::TolerancePolicy{},
      "Two-step screen plus per-cluster multiplicity resolution.");

  m.def(
      "necessary_check",
      [](const Array& a, const diagx::TolerancePolicy& policy) {
        return diagx::necessary_check(matrix_from_array(a), policy);
      },
      py::arg("a"), py::arg("policy") = diagx::TolerancePolicy{});

  m.def(
      "sufficient_check",
      [](const Array& a, const diagx::TolerancePolicy& policy) {
        return diagx::sufficient_check(matrix_from_array(a), policy);
      },
      py::arg("a"), py::arg("policy") = diagx::TolerancePolicy{});

  m.def(
      "zero_rank_bound",
      [](const Array& a, const diagx::TolerancePolicy& policy) {
        return diagx::zero_rank_bound(matrix_from_array(a), policy);
      },
      py::arg("a"), py::arg("policy") = diagx::TolerancePolicy{},
      "Rank lower bound n - k from the zero eigenvalue's multiplicity k.");

  m.def(
      "eigendecompose",
      [](const Array& a, const diagx::TolerancePolicy& policy, bool force) {
        return diagx::eigendecompose(matrix_from_array(a), policy, force);
      },
      py::arg("a"), py::arg("policy") = diagx::TolerancePolicy{}, py::arg("force") = false,
      "a = P D P^{-1} with unit-norm eigenvector columns and residual.");

  m.def("det_check_warning", &diagx::det_check_warning, py::arg("basis"),
        "Flag |det P| values too small to certify invertibility.");

  m.def("parse_io_table", &diagx::parse_io_table, py::arg("text"));
  m.def("read_io_table", &diagx::read_io_table, py::arg("path"));

  m.def("expenditure_share", &diagx::expenditure_share, py::arg("table"),
        py::arg("normalization") = diagx::Normalization::Column);

  m.def("prune_disconnected", &diagx::prune_disconnected, py::arg("table"));

  m.def(
      "table_report",
      [](const diagx::IOTable& table, const diagx::TolerancePolicy& policy, bool prune,
         diagx::Normalization normalization) {
        return diagx::table_report(table, policy, {prune, normalization});
      },
      py::arg("table"), py::arg("policy") = diagx::TolerancePolicy{}, py::arg("prune") = false,
      py::arg("normalization") = diagx::Normalization::Column);

  m.def(
      "simulate_shock",
      [](const diagx::ShareMatrix& share, std::vector<std::pair<std::string, double>> shocks,
         std::size_t horizon, const diagx::TolerancePolicy& policy, bool force) {
        diagx::ShockScenario scenario{std::move(shocks), horizon};
        return diagx::simulate_shock(share, scenario, policy, {force, false});
      },
      py::arg("share"), py::arg("shocks"), py::arg("horizon") = std::size_t{10},
      py::arg("policy") = diagx::TolerancePolicy{}, py::arg("force") = false);

  m.def("half_life", &diagx::half_life, py::arg("magnitude"),
        "ln 2 / (-ln m); 0 for a dead mode, None when |m| >= 1.");

  m.def(
      "generate_fixture",
      [](const std::string& kind, std::size_t n, std::size_t rank, std::size_t nonzero,
         std::uint64_t seed) {
        diagx::FixtureSpec spec{kind_from_name(kind), n, rank, nonzero, seed};
        return diagx::generate_fixture(spec);
      },
      py::arg("kind"), py::arg("n"), py::arg("rank") = std::size_t{0},
      py::arg("nonzero") = std::size_t{0}, py::arg("seed") = std::uint64_t{1},
      "Construct a matrix with exactly known rank and Jordan structure.");
}
