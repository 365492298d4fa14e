#pragma once

#include <string>
#include <vector>

#include "chlab/field_solver.hpp"
#include "chlab/grid.hpp"
#include "chlab/multipeakon.hpp"

namespace chlab {

/// A characteristic curve q(t) with dq/dt = u(t, q), sampled at the stored
/// trajectory times.
struct FlowCurve {
  std::vector<double> times;
  std::vector<double> q;
  bool exited = false;  // left the grid; times/q end at the last valid step
};

/// RK4 on dq/dt = u(t, q) with linear interpolation in space and time,
/// substepping between stored snapshots.
FlowCurve flow(const FieldTrajectory& traj, double x0);

/// exp of the trapezoid quadrature of u_x along the curve; the slope is the
/// centered difference of the snapshot interpolated at q(t).
std::vector<double> flow_jacobian(const FieldTrajectory& traj,
                                  const FlowCurve& curve);

/// |y(0, x0) - y(t, q(t, x0)) * q_x(t, x0)^2| / max y(0, .); momentum
/// sampled from the snapshots by the discrete operator, interpolated
/// linearly along the curve.
double transport_check(const FieldTrajectory& traj, double x0, double t);

/// Backward slope one node left of x minus forward slope one node right of
/// x: the derivative drop across a crest. Needs 3 nodes on each side.
double jump_at(const GridField& u, double x);

struct JumpTrack {
  std::vector<double> times;
  std::vector<double> q_star;
  std::vector<double> a;
  std::vector<double> u_at;
  std::vector<double> ode_residual;
  bool lost = false;  // jump fell below the detection threshold
};

/// Follows the crest jump from an initial location: the tracked point rides
/// the characteristic, snapped to the local argmax node each step. The ODE
/// residual compares the centered difference of a(t) with the one-sided
/// flux (u^2 - u_x^2)/2 at the left limit. Initial jump must clear
/// 0.05 * max|u|.
JumpTrack track_jump(const FieldTrajectory& traj, double x0);

/// Closed-form version for exact multipeakon trajectories: the rightmost
/// jump sits at q_N with size 2 p_N, and the left limit of (u^2 - u_x^2)/2
/// is available analytically.
JumpTrack track_jump(const std::vector<PeakonState>& traj);

/// CSV with header t,q_star,a,u_at,ode_residual.
void write_jump_csv(const JumpTrack& t, const std::string& path,
                    const std::vector<std::string>& header_lines = {});

}  // namespace chlab
