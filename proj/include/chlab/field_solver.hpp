#pragma once

#include <string>
#include <vector>

#include "chlab/grid.hpp"

namespace chlab {

struct SolverSettings {
  double dx = 0.02;
  double cfl = 0.5;           // in (0, 1]
  double T = 10.0;
  int store_stride = 1;       // keep every stride-th step
  int mollifier_n = 0;        // 0 -> default ceil(1/(8 dx)) where mollification applies
};

/// Snapshots of a field run plus the times they were taken at.
struct FieldTrajectory {
  std::vector<double> times;
  std::vector<GridField> states;
  bool aborted = false;            // blow-up guard tripped
  double worst_y_violation = 0.0;  // most negative momentum sample seen
  std::vector<std::string> warnings;

  const GridField& at(std::size_t i) const { return states[i]; }
  std::size_t size() const { return times.size(); }

  /// u(t, x) with linear interpolation between stored snapshots.
  double value(double t, double x) const;
  /// Index of the last stored time <= t.
  std::size_t index_before(double t) const;
};

/// Spatial right-hand side of the nonlocal evolution:
/// -u u_x - d/dx [ G * (u^2 + u_x^2/2) ] with G the exp(-|x|)/2 kernel.
/// Central advection slope (the sum telescopes, conserving mass exactly);
/// the slope square in the source term pairs the backward and forward
/// differences so the crest kink does not inflate the energy density.
GridField ch_rhs(const GridField& u);

/// RK4 in time, dt = cfl * dx / max(1, max|u|) recomputed each step.
/// Aborts (trajectory flagged) if max|u| exceeds twice its initial value.
/// A momentum sample below -100 * tol_Y only records a warning.
FieldTrajectory evolve_field(const GridField& u0, const SolverSettings& st);

/// Discrete convolution with the mollifier kernel of index n; requires
/// dx < 1/n. Preserves the sample sum exactly.
GridField mollify_initial(const GridField& u0, int n);

/// One CSV per stored snapshot (state_000000.csv, ...) plus index.csv
/// listing row, time, file. All files carry the header lines.
void write_trajectory(const FieldTrajectory& traj, const std::string& dir,
                      const std::vector<std::string>& header_lines = {});
FieldTrajectory read_trajectory(const std::string& dir);

}  // namespace chlab
