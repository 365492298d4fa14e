#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "chlab/grid.hpp"

namespace chlab {

/// Momentum density u - u_xx, either a sum of point masses or grid samples.
struct MomentumDensity {
  enum class Kind { Atomic, Sampled };
  Kind kind = Kind::Sampled;
  std::vector<std::pair<double, double>> atoms;  // (position, mass), Atomic
  GridField samples;                             // Sampled

  static MomentumDensity atomic(std::vector<std::pair<double, double>> a);
  static MomentumDensity sampled(GridField y);

  /// Total mass: sum of atom masses, or trapezoid quadrature of samples.
  double total() const;
};

struct YplusReport {
  bool is_nonnegative = false;
  double worst_violation = 0.0;  // most negative value seen, reported >= 0
};

/// Samples u(x) = sum (mass_i/2) exp(-|x - pos_i|) on a grid that covers all
/// atom positions with padding >= `padding` on each side. Throws on
/// nonpositive mass. Empty atom list gives a zero field around the origin.
GridField field_from_atoms(const std::vector<std::pair<double, double>>& atoms,
                           double dx, double padding = 40.0);

/// Same sum evaluated on an existing layout.
GridField field_from_atoms_on(const std::vector<std::pair<double, double>>& atoms,
                              const GridField& like);

/// Samples the mollified field rho_n * u for atomic u on an existing layout
/// (semi-analytic quadrature per node, no grid convolution).
GridField mollified_field_from_atoms(
    const std::vector<std::pair<double, double>>& atoms, int n,
    const GridField& like);

/// y = (I - D2) u with the helmholtz closure; inverse of helmholtz_solve.
MomentumDensity momentum_of_field(const GridField& u);

/// Atomic: nonnegative iff all masses > 0. Sampled: min >= -tol_Y with
/// tol_Y = 1e-8 * max(1, max y).
YplusReport check_Yplus(const MomentumDensity& y);

/// sqrt(sum (u^2 + u_x^2) dx), centered u_x with one-sided closure. If
/// half_line_start is given the sum runs over nodes with x >= that point.
double h1_norm(const GridField& u,
               std::optional<double> half_line_start = std::nullopt);

/// Largest value of |u_x| - u over interior nodes (centered u_x); the cone
/// bound for Y+ states says this stays below O(dx).
double cone_defect(const GridField& u);

}  // namespace chlab
