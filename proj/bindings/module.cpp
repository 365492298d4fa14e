// Python bindings for the core solvers and diagnostics.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chlab/characteristics.hpp"
#include "chlab/diagnostics.hpp"
#include "chlab/field_solver.hpp"
#include "chlab/grid.hpp"
#include "chlab/harness.hpp"
#include "chlab/kernels.hpp"
#include "chlab/measures.hpp"
#include "chlab/modulation.hpp"
#include "chlab/multipeakon.hpp"

namespace py = pybind11;
using namespace chlab;

PYBIND11_MODULE(_chlab, m) {
  m.doc() = "Peakon laboratory: grid and particle solvers with diagnostics";

  py::register_exception<modulation_loss>(m, "ModulationLoss");
  py::register_exception<config_error>(m, "ConfigError");

  py::class_<GridField>(m, "GridField")
      .def(py::init<>())
      .def_readwrite("origin", &GridField::origin)
      .def_readwrite("dx", &GridField::dx)
      .def_readwrite("u", &GridField::u)
      .def("__len__", &GridField::size)
      .def("x", &GridField::x)
      .def("x_min", &GridField::x_min)
      .def("x_max", &GridField::x_max)
      .def("value_at", &GridField::value_at);
  m.def("make_grid", &make_grid);
  m.def("validate_field", &validate_field);
  m.def("max_abs", &max_abs);
  m.def("centered_derivative", &centered_derivative);
  m.def("trapezoid", &trapezoid);
  m.def("argmax_node", &argmax_node);
  m.def("write_field_csv", &write_field_csv, py::arg("f"), py::arg("path"),
        py::arg("header_lines") = std::vector<std::string>{});
  m.def("read_field_csv", &read_field_csv);

  m.def("peakon_profile", &peakon_profile);
  m.def("peakon_profile_derivative", &peakon_profile_derivative);
  m.def("psi", &psi);
  m.def("psi_prime", &psi_prime);
  m.def("psi_third", &psi_third);
  m.def("mollifier_bump", &mollifier_bump);
  m.def("green_convolve", &green_convolve);
  m.def("green_convolve_atoms", &green_convolve_atoms);
  m.def("helmholtz_solve", &helmholtz_solve);
  m.def("helmholtz_apply", &helmholtz_apply);
  m.def("laplacian_denominator", &laplacian_denominator);

  py::class_<MomentumDensity>(m, "MomentumDensity")
      .def_readonly("atoms", &MomentumDensity::atoms)
      .def_readonly("samples", &MomentumDensity::samples)
      .def("total", &MomentumDensity::total)
      .def_static("atomic", &MomentumDensity::atomic)
      .def_static("sampled", &MomentumDensity::sampled);
  py::class_<YplusReport>(m, "YplusReport")
      .def_readonly("is_nonnegative", &YplusReport::is_nonnegative)
      .def_readonly("worst_violation", &YplusReport::worst_violation);
  m.def("field_from_atoms", &field_from_atoms, py::arg("atoms"), py::arg("dx"),
        py::arg("padding") = 40.0);
  m.def("field_from_atoms_on", &field_from_atoms_on);
  m.def("mollified_field_from_atoms", &mollified_field_from_atoms);
  m.def("momentum_of_field", &momentum_of_field);
  m.def("check_Yplus", &check_Yplus);
  m.def("h1_norm", &h1_norm, py::arg("u"),
        py::arg("half_line_start") = std::optional<double>{});
  m.def("cone_defect", &cone_defect);

  py::class_<PeakonState>(m, "PeakonState")
      .def(py::init<>())
      .def_readwrite("p", &PeakonState::p)
      .def_readwrite("q", &PeakonState::q)
      .def_readwrite("time", &PeakonState::time)
      .def("__len__", &PeakonState::size)
      .def("atoms", &PeakonState::atoms)
      .def("value", &PeakonState::value);
  py::class_<PeakonRhs>(m, "PeakonRhs")
      .def_readonly("dp", &PeakonRhs::dp)
      .def_readonly("dq", &PeakonRhs::dq);
  py::class_<ExactInvariants>(m, "ExactInvariants")
      .def_readonly("M", &ExactInvariants::M)
      .def_readonly("E", &ExactInvariants::E);
  m.def("validate_state", &validate_state);
  m.def("hamiltonian", &hamiltonian);
  m.def("rhs", &rhs);
  m.def("evolve", &evolve);
  m.def("exact_invariants", &exact_invariants);
  m.def("asymptotic_speeds", &asymptotic_speeds);
  m.def("write_peakon_csv", &write_peakon_csv, py::arg("traj"), py::arg("path"),
        py::arg("header_lines") = std::vector<std::string>{});

  py::class_<SolverSettings>(m, "SolverSettings")
      .def(py::init<>())
      .def_readwrite("dx", &SolverSettings::dx)
      .def_readwrite("cfl", &SolverSettings::cfl)
      .def_readwrite("T", &SolverSettings::T)
      .def_readwrite("store_stride", &SolverSettings::store_stride)
      .def_readwrite("mollifier_n", &SolverSettings::mollifier_n);
  py::class_<FieldTrajectory>(m, "FieldTrajectory")
      .def(py::init<>())
      .def_readonly("times", &FieldTrajectory::times)
      .def_readonly("states", &FieldTrajectory::states)
      .def_readonly("aborted", &FieldTrajectory::aborted)
      .def_readonly("worst_y_violation", &FieldTrajectory::worst_y_violation)
      .def_readonly("warnings", &FieldTrajectory::warnings)
      .def("__len__", &FieldTrajectory::size)
      .def("at", &FieldTrajectory::at, py::return_value_policy::reference_internal)
      .def("value", &FieldTrajectory::value);
  m.def("ch_rhs", &ch_rhs);
  m.def("evolve_field", &evolve_field);
  m.def("mollify_initial", &mollify_initial);
  m.def("write_trajectory", &write_trajectory, py::arg("traj"), py::arg("dir"),
        py::arg("header_lines") = std::vector<std::string>{});
  m.def("read_trajectory", &read_trajectory);

  py::class_<InvariantRecord>(m, "InvariantRecord")
      .def_readonly("t", &InvariantRecord::t)
      .def_readonly("M", &InvariantRecord::M)
      .def_readonly("E", &InvariantRecord::E)
      .def_readonly("F", &InvariantRecord::F);
  py::class_<AuditSample>(m, "AuditSample")
      .def_readonly("t", &AuditSample::t)
      .def_readonly("I", &AuditSample::I)
      .def_readonly("J_right", &AuditSample::J_right)
      .def_readonly("J_left", &AuditSample::J_left)
      .def_readonly("violation", &AuditSample::violation);
  py::class_<AuditReport>(m, "AuditReport")
      .def_readonly("samples", &AuditReport::samples)
      .def_readonly("worst_increase", &AuditReport::worst_increase)
      .def_readonly("bound", &AuditReport::bound)
      .def_readonly("within_bound", &AuditReport::within_bound)
      .def_readonly("t0", &AuditReport::t0)
      .def_readonly("R", &AuditReport::R)
      .def_readonly("gamma", &AuditReport::gamma);
  py::class_<DecayFit>(m, "DecayFit")
      .def_readonly("tails", &DecayFit::tails)
      .def_readonly("rate", &DecayFit::rate)
      .def_readonly("fitted", &DecayFit::fitted)
      .def_readonly("satisfies_bound", &DecayFit::satisfies_bound);
  m.def("invariants", &invariants);
  m.def("localized_right", &localized_right);
  m.def("localized_left", &localized_left);
  m.def("monotonicity_audit", &monotonicity_audit);
  m.def("decay_profile", &decay_profile, py::arg("u"), py::arg("y"),
        py::arg("center"), py::arg("R_values"), py::arg("gamma"),
        py::arg("fit_tolerance") = 0.02);
  m.def("energy_flux_residual", &energy_flux_residual);
  m.def("momentum_flux_residual", &momentum_flux_residual);

  py::class_<ModulationTrack>(m, "ModulationTrack")
      .def_readonly("times", &ModulationTrack::times)
      .def_readonly("x", &ModulationTrack::x)
      .def_readonly("xdot", &ModulationTrack::xdot)
      .def_readonly("lambda_", &ModulationTrack::lambda)
      .def_readonly("residual", &ModulationTrack::residual)
      .def_readonly("truncated", &ModulationTrack::truncated);
  py::class_<N0Report>(m, "N0Report")
      .def_readonly("monotone", &N0Report::monotone)
      .def_readonly("min_slope", &N0Report::min_slope)
      .def_readonly("admissible", &N0Report::admissible);
  m.def("orthogonality_residual", &orthogonality_residual);
  m.def("locate", &locate);
  m.def("track", &track);
  m.def("verify_n0", &verify_n0);
  m.def("default_n0", &default_n0);

  py::class_<FlowCurve>(m, "FlowCurve")
      .def_readonly("times", &FlowCurve::times)
      .def_readonly("q", &FlowCurve::q)
      .def_readonly("exited", &FlowCurve::exited);
  py::class_<JumpTrack>(m, "JumpTrack")
      .def_readonly("times", &JumpTrack::times)
      .def_readonly("q_star", &JumpTrack::q_star)
      .def_readonly("a", &JumpTrack::a)
      .def_readonly("u_at", &JumpTrack::u_at)
      .def_readonly("ode_residual", &JumpTrack::ode_residual)
      .def_readonly("lost", &JumpTrack::lost);
  m.def("flow", &flow);
  m.def("flow_jacobian", &flow_jacobian);
  m.def("transport_check", &transport_check);
  m.def("jump_at", &jump_at);
  m.def("track_jump",
        py::overload_cast<const FieldTrajectory&, double>(&track_jump));
  m.def("track_jump_exact",
        py::overload_cast<const std::vector<PeakonState>&>(&track_jump));

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("pass_", &CheckResult::pass)
      .def_readonly("value", &CheckResult::value)
      .def_readonly("bound", &CheckResult::bound);
  py::class_<ScenarioReport>(m, "ScenarioReport")
      .def_readonly("files", &ScenarioReport::files)
      .def_readonly("checks", &ScenarioReport::checks)
      .def_readonly("chosen_n0", &ScenarioReport::chosen_n0)
      .def("all_passed", &ScenarioReport::all_passed);
  py::enum_<ScenarioKind>(m, "ScenarioKind")
      .value("SinglePeakon", ScenarioKind::SinglePeakon)
      .value("PerturbedPeakon", ScenarioKind::PerturbedPeakon)
      .value("MultipeakonExact", ScenarioKind::MultipeakonExact)
      .value("PeakonTrain", ScenarioKind::PeakonTrain)
      .value("MonotonicityAudit", ScenarioKind::MonotonicityAudit)
      .value("LiouvilleProbe", ScenarioKind::LiouvilleProbe)
      .value("EigenSpeedCheck", ScenarioKind::EigenSpeedCheck);
  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("kind", &ScenarioConfig::kind)
      .def_readwrite("c", &ScenarioConfig::c)
      .def_readwrite("theta", &ScenarioConfig::theta)
      .def_readwrite("perturbation", &ScenarioConfig::perturbation)
      .def_readwrite("p", &ScenarioConfig::p)
      .def_readwrite("q", &ScenarioConfig::q)
      .def_readwrite("N", &ScenarioConfig::N)
      .def_readwrite("spacing", &ScenarioConfig::spacing)
      .def_readwrite("dx", &ScenarioConfig::dx)
      .def_readwrite("T", &ScenarioConfig::T)
      .def_readwrite("dt", &ScenarioConfig::dt)
      .def_readwrite("cfl", &ScenarioConfig::cfl)
      .def_readwrite("R", &ScenarioConfig::R)
      .def_readwrite("gamma", &ScenarioConfig::gamma)
      .def_readwrite("n", &ScenarioConfig::n)
      .def_readwrite("n0", &ScenarioConfig::n0)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("stride", &ScenarioConfig::stride)
      .def_readwrite("out", &ScenarioConfig::out)
      .def("header_lines", &ScenarioConfig::header_lines);
  m.def("parse_config", &parse_config);
  m.def("load_config", &load_config);
  m.def("run_scenario", &run_scenario, py::arg("cfg"), py::arg("out_dir") = "",
        py::arg("quiet") = false);

  auto cal = m.def_submodule("calibration");
  cal.def("h1_band", &calibration::h1_band);
  cal.def("energy_drift_band", &calibration::energy_drift_band);
  cal.def("momentum_drift_band", &calibration::momentum_drift_band);
}
