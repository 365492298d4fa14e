#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chlab/grid.hpp"

namespace chlab {

/// Momenta and positions of an N-peakon state; atom i of the momentum
/// density carries mass 2*p[i].
struct PeakonState {
  std::vector<double> p;
  std::vector<double> q;
  double time = 0.0;

  std::size_t size() const { return p.size(); }
  std::vector<std::pair<double, double>> atoms() const;
  /// u(x) = sum p_i exp(-|x - q_i|).
  double value(double x) const;
};

/// Throws std::invalid_argument unless all p > 0, q strictly increasing,
/// sizes match, 1 <= N <= 64.
void validate_state(const PeakonState& s);

/// H = 1/2 sum_ij p_i p_j exp(-|q_i - q_j|).
double hamiltonian(const PeakonState& s);

struct PeakonRhs {
  std::vector<double> dp;
  std::vector<double> dq;
};

/// Canonical equations of H. Positions closer than 1e-12 are rejected with
/// std::runtime_error (the sign factor is undefined at a collision).
PeakonRhs rhs(const PeakonState& s);

/// Fixed-step RK4 up to time T; states stored at every multiple of dt plus
/// the initial state. Requires dt > 0 and dt <= 0.1 / max p_i. Ordering is
/// re-checked after every step; a violation aborts with std::runtime_error.
std::vector<PeakonState> evolve(const PeakonState& s0, double T, double dt);

struct ExactInvariants {
  double M = 0.0;  // 2 sum p_i
  double E = 0.0;  // 2 sum_ij p_i p_j exp(-|q_i - q_j|)
};

ExactInvariants exact_invariants(const PeakonState& s);

/// Sorted eigenvalues of A_ij = p_j exp(-|q_i - q_j|/2); these are the
/// long-time speeds of the individual peaks. Jacobi rotations on the
/// symmetrized matrix D A D^{-1}, D = diag(sqrt p).
std::vector<double> asymptotic_speeds(const PeakonState& s);

/// CSV with header t,p1..pN,q1..qN, one row per state, 17 significant
/// digits; `header_lines` prefixed with "# ".
void write_peakon_csv(const std::vector<PeakonState>& traj,
                      const std::string& path,
                      const std::vector<std::string>& header_lines = {});

}  // namespace chlab
