#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "chlab/field_solver.hpp"
#include "chlab/grid.hpp"

namespace chlab {

/// Raised when no sign change of the centering residual exists near the
/// guess: the state has drifted too far from the reference profile.
struct modulation_loss : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModulationTrack {
  std::vector<double> times;
  std::vector<double> x;         // centers
  std::vector<double> xdot;      // centered-difference speeds
  std::vector<double> lambda;    // max of u
  std::vector<double> residual;  // centering residual at the accepted root
  bool truncated = false;        // a later step lost the bracket
};

/// Quadrature of u * k(. - shift) where k is the mollified profile
/// derivative (mollifier index n0 convolved with the exp kernel slope).
/// The kernel is precomputed per (n0, dx) and cached.
double orthogonality_residual(const GridField& u, double shift, int n0);

/// Root of the centering residual in [guess - 1/2, guess + 1/2]: bisection
/// to an interval of 1e-10, one secant polish. Throws modulation_loss if the
/// residual does not change sign over the bracket.
double locate(const GridField& u, double guess, int n0);

/// locate at every stored step, seeding each root with the previous one
/// (first step: the argmax node). Speeds by centered differences in time.
ModulationTrack track(const FieldTrajectory& traj, int n0);

struct N0Report {
  bool monotone = false;
  double min_slope = 0.0;
  bool admissible = false;  // monotone and min_slope >= exp(-1/2)/4
};

/// Samples y -> int phi * k(. - y) over [-1/2, 1/2] at 200 points (closed
/// form in y) and checks strict monotonicity with the slope floor
/// exp(-1/2)/4 of the implicit-function argument.
N0Report verify_n0(int n0);

/// Smallest admissible index, linear search upward from 4.
int default_n0();

/// CSV with header t,x,xdot,lambda,residual.
void write_track_csv(const ModulationTrack& t, const std::string& path,
                     const std::vector<std::string>& header_lines = {});

}  // namespace chlab
