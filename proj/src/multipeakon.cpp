#include "chlab/multipeakon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace chlab {

std::vector<std::pair<double, double>> PeakonState::atoms() const {
  std::vector<std::pair<double, double>> a;
  a.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) a.emplace_back(q[i], 2.0 * p[i]);
  return a;
}

double PeakonState::value(double x) const {
  double v = 0.0;
  for (std::size_t i = 0; i < size(); ++i) v += p[i] * std::exp(-std::fabs(x - q[i]));
  return v;
}

void validate_state(const PeakonState& s) {
  if (s.p.size() != s.q.size())
    throw std::invalid_argument("PeakonState: p and q sizes differ");
  if (s.p.empty() || s.p.size() > 64)
    throw std::invalid_argument("PeakonState: N must be in [1, 64]");
  for (double pi : s.p)
    if (!(pi > 0.0) || !std::isfinite(pi))
      throw std::invalid_argument("PeakonState: momenta must be positive and finite");
  for (std::size_t i = 0; i + 1 < s.q.size(); ++i)
    if (!(s.q[i] < s.q[i + 1]))
      throw std::invalid_argument("PeakonState: positions must be strictly increasing");
  for (double qi : s.q)
    if (!std::isfinite(qi))
      throw std::invalid_argument("PeakonState: non-finite position");
}

double hamiltonian(const PeakonState& s) {
  double h = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      h += s.p[i] * s.p[j] * std::exp(-std::fabs(s.q[i] - s.q[j]));
  return 0.5 * h;
}

PeakonRhs rhs(const PeakonState& s) {
  std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(s.q[i] - s.q[j]) < 1e-12)
        throw std::runtime_error("rhs: peakon collision (coincident positions)");
  PeakonRhs r;
  r.dp.assign(n, 0.0);
  r.dq.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double d = s.q[i] - s.q[j];
      double e = std::exp(-std::fabs(d));
      r.dq[i] += s.p[j] * e;
      if (i != j) r.dp[i] += s.p[i] * s.p[j] * (d > 0.0 ? 1.0 : -1.0) * e;
    }
  }
  return r;
}

namespace {

PeakonState step_rk4(const PeakonState& s, double dt) {
  auto advance = [&](const PeakonState& base, const PeakonRhs& k, double f) {
    PeakonState t = base;
    for (std::size_t i = 0; i < t.size(); ++i) {
      t.p[i] = s.p[i] + f * k.dp[i];
      t.q[i] = s.q[i] + f * k.dq[i];
    }
    return t;
  };
  PeakonRhs k1 = rhs(s);
  PeakonRhs k2 = rhs(advance(s, k1, 0.5 * dt));
  PeakonRhs k3 = rhs(advance(s, k2, 0.5 * dt));
  PeakonRhs k4 = rhs(advance(s, k3, dt));
  PeakonState out = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.p[i] = s.p[i] + dt / 6.0 * (k1.dp[i] + 2.0 * k2.dp[i] + 2.0 * k3.dp[i] + k4.dp[i]);
    out.q[i] = s.q[i] + dt / 6.0 * (k1.dq[i] + 2.0 * k2.dq[i] + 2.0 * k3.dq[i] + k4.dq[i]);
  }
  out.time = s.time + dt;
  return out;
}

}  // namespace

std::vector<PeakonState> evolve(const PeakonState& s0, double T, double dt) {
  validate_state(s0);
  double pmax = *std::max_element(s0.p.begin(), s0.p.end());
  if (!(dt > 0.0) || dt > 0.1 / pmax)
    throw std::invalid_argument("evolve: need 0 < dt <= 0.1/max p");
  auto nsteps = static_cast<std::size_t>(std::llround(T / dt));
  std::vector<PeakonState> traj;
  traj.reserve(nsteps + 1);
  traj.push_back(s0);
  for (std::size_t k = 0; k < nsteps; ++k) {
    PeakonState next = step_rk4(traj.back(), dt);
    for (std::size_t i = 0; i + 1 < next.size(); ++i)
      if (!(next.q[i] < next.q[i + 1]))
        throw std::runtime_error("evolve: ordering lost at t = " +
                                 std::to_string(next.time));
    traj.push_back(std::move(next));
  }
  return traj;
}

ExactInvariants exact_invariants(const PeakonState& s) {
  ExactInvariants inv;
  for (std::size_t i = 0; i < s.size(); ++i) {
    inv.M += 2.0 * s.p[i];
    for (std::size_t j = 0; j < s.size(); ++j)
      inv.E += 2.0 * s.p[i] * s.p[j] * std::exp(-std::fabs(s.q[i] - s.q[j]));
  }
  return inv;
}

std::vector<double> asymptotic_speeds(const PeakonState& s) {
  validate_state(s);
  std::size_t n = s.size();
  // p_j e^{-|qi-qj|/2} is similar to the symmetric sqrt(p_i p_j) e^{-|qi-qj|/2}
  // via conjugation by diag(sqrt p); same spectrum, real and simple.
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i * n + j] = std::sqrt(s.p[i] * s.p[j]) *
                     std::exp(-0.5 * std::fabs(s.q[i] - s.q[j]));
  // Cyclic Jacobi sweeps.
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
    if (off < 1e-24) break;
    if (sweep == 99) throw std::runtime_error("asymptotic_speeds: Jacobi did not converge");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double aij = a[i * n + j];
        if (std::fabs(aij) < 1e-30) continue;
        double theta = 0.5 * std::atan2(2.0 * aij, a[j * n + j] - a[i * n + i]);
        double c = std::cos(theta), t = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          double aki = a[k * n + i], akj = a[k * n + j];
          a[k * n + i] = c * aki - t * akj;
          a[k * n + j] = t * aki + c * akj;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double aik = a[i * n + k], ajk = a[j * n + k];
          a[i * n + k] = c * aik - t * ajk;
          a[j * n + k] = t * aik + c * ajk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i * n + i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

void write_peakon_csv(const std::vector<PeakonState>& traj,
                      const std::string& path,
                      const std::vector<std::string>& header_lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_peakon_csv: cannot open " + path);
  for (const auto& h : header_lines) out << "# " << h << "\n";
  std::size_t n = traj.empty() ? 0 : traj.front().size();
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) out << ",p" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",q" << i;
  out << "\n";
  char buf[64];
  for (const auto& s : traj) {
    std::snprintf(buf, sizeof buf, "%.17g", s.time);
    out << buf;
    for (double v : s.p) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out << buf;
    }
    for (double v : s.q) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace chlab
