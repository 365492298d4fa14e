#pragma once

#include <string>
#include <vector>

#include "chlab/field_solver.hpp"
#include "chlab/grid.hpp"
#include "chlab/measures.hpp"

namespace chlab {

struct InvariantRecord {
  double t = 0.0;
  double M = 0.0;  // integral of y
  double E = 0.0;  // integral of u^2 + u_x^2
  double F = 0.0;  // integral of u^3 + u u_x^2
};

/// Trapezoid quadrature of the three conserved integrals; M comes from the
/// momentum density directly (atomic: sum of masses).
InvariantRecord invariants(const GridField& u, const MomentumDensity& y);

/// Quadrature of (u^2 + u_x^2 + gamma y) * Psi(x - center - R): the part of
/// the energy-momentum mix living ahead of center + R.
double localized_right(const GridField& u, const MomentumDensity& y,
                       double center, double R, double gamma);

/// Mirror weight 1 - Psi(x - center + R): the part behind center - R.
double localized_left(const GridField& u, const MomentumDensity& y,
                      double center, double R, double gamma);

struct AuditSample {
  double t = 0.0;
  double I = 0.0;
  double J_right = 0.0;
  double J_left = 0.0;
  double violation = 0.0;  // max(0, I(t0) - I(t))
};

struct AuditReport {
  std::vector<AuditSample> samples;
  double worst_increase = 0.0;  // max over t <= t0 of I(t0) - I(t)
  double bound = 0.0;           // K0 * exp(-R/6)
  bool within_bound = false;
  double t0 = 0.0;
  double R = 0.0;
  double gamma = 0.0;
};

/// Evaluates I(t) = integral (u^2 + u_x^2 + gamma y) Psi(x - z(t)) along the
/// receding line z(t) = center(t0) + R + fraction*(center(t) - center(t0))
/// and checks the worst increase I(t0) - I(t), t <= t0, against K0 e^{-R/6}.
AuditReport monotonicity_audit(const FieldTrajectory& traj,
                               const std::vector<double>& center_track,
                               double R, double gamma,
                               double z_speed_fraction, std::size_t t0_index,
                               double K0);

struct DecayFit {
  std::vector<std::pair<double, double>> tails;  // (R, tail value)
  double rate = 0.0;                             // slope of log(tail) vs R
  bool fitted = false;
  bool satisfies_bound = false;                  // rate <= -1/6 + tolerance
};

/// Tail mass outside [center - R, center + R] as a function of R, with a
/// least-squares exponential fit. Tails below 1e-14 are dropped from the fit.
DecayFit decay_profile(const GridField& u, const MomentumDensity& y,
                       double center, const std::vector<double>& R_values,
                       double gamma, double fit_tolerance = 0.02);

/// |d/dt int (u^2 + u_x^2) g - int u u_x^2 g' - 2 int u h g'| at a stored
/// step, h = Green convolution of u^2 + u_x^2/2, time derivative by centered
/// differences of the neighbouring snapshots. Interior index required.
double energy_flux_residual(const FieldTrajectory& traj, const GridField& g,
                            std::size_t t_index);

/// Same for the momentum identity d/dt int y g = int y u g' + 1/2 int
/// (u^2 - u_x^2) g'.
double momentum_flux_residual(const FieldTrajectory& traj, const GridField& g,
                              std::size_t t_index);

/// CSV rows t,I,J_right,J_left,violation followed by "#"-prefixed summary
/// lines.
void write_audit_csv(const AuditReport& r, const std::string& path,
                     const std::vector<std::string>& header_lines = {});

}  // namespace chlab
