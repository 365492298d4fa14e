// End-to-end acceptance checks. Each numbered block prints exactly one
// PASS/FAIL line; the exit code is the number of failures. Expensive field
// runs are shared between the blocks that need them.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "chlab/characteristics.hpp"
#include "chlab/diagnostics.hpp"
#include "chlab/field_solver.hpp"
#include "chlab/harness.hpp"
#include "chlab/kernels.hpp"
#include "chlab/measures.hpp"
#include "chlab/modulation.hpp"
#include "chlab/multipeakon.hpp"

using namespace chlab;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  if (!pass) ++g_failures;
  std::printf("%2d %-28s %s  %s\n", id, name, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

PeakonState state(std::vector<double> p, std::vector<double> q) {
  PeakonState s;
  s.p = std::move(p);
  s.q = std::move(q);
  return s;
}

FieldTrajectory field_run(const std::vector<std::pair<double, double>>& atoms,
                          double dx, double T, int stride) {
  double umax = 0.0, qmin = atoms.front().first, qmax = qmin;
  for (const auto& [pos, mass] : atoms) {
    umax += 0.5 * mass;
    qmin = std::min(qmin, pos);
    qmax = std::max(qmax, pos);
  }
  double travel = umax * T;
  double len = 4.0 * ((qmax - qmin) + travel + 40.0);
  double lo = qmin - 0.5 * (len - travel);
  GridField layout =
      make_grid(lo, dx, static_cast<std::size_t>(std::ceil(len / dx)) + 1);
  int n = static_cast<int>(std::ceil(1.0 / (8.0 * dx)));
  GridField u0 = mollified_field_from_atoms(atoms, n, layout);
  SolverSettings st;
  st.dx = dx;
  st.T = T;
  st.store_stride = stride;
  st.mollifier_n = n;
  return evolve_field(u0, st);
}

double worst_cone(const FieldTrajectory& traj) {
  double w = 0.0;
  for (const auto& u : traj.states) w = std::max(w, cone_defect(u));
  return w;
}

}  // namespace

int main() {
  const int n0 = default_n0();

  // 1: long multipeakon run conserves H, M and the closed-form energy
  {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> gap(3.0, 8.0);
    std::vector<double> q{-10.0};
    q.push_back(q.back() + gap(rng));
    q.push_back(q.back() + gap(rng));
    PeakonState s0 = state({1.0, 1.5, 2.0}, q);
    auto traj = evolve(s0, 100.0, 1e-3);
    double h0 = hamiltonian(s0);
    ExactInvariants v0 = exact_invariants(s0);
    double worst = 0.0;
    for (const auto& s : traj) {
      worst = std::max(worst, std::fabs(hamiltonian(s) - h0) / h0);
      ExactInvariants v = exact_invariants(s);
      worst = std::max(worst, std::fabs(v.M - v0.M) / v0.M);
      worst = std::max(worst, std::fabs(v.E - v0.E) / v0.E);
    }
    report(1, "multipeakon_conservation", worst <= 1e-8,
           "drift " + fmt(worst) + " <= 1e-8");
  }

  // 2: equations of motion equal the gradient of the energy function
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pd(0.2, 2.0), gd(0.4, 3.0);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      int n = 1 + static_cast<int>(rng() % 5);
      PeakonState s;
      double pos = -6.0;
      for (int i = 0; i < n; ++i) {
        s.p.push_back(pd(rng));
        pos += gd(rng);
        s.q.push_back(pos);
      }
      PeakonRhs rr = rhs(s);
      double h = 1e-5;
      for (int i = 0; i < n; ++i) {
        PeakonState sp = s, sm = s;
        sp.p[i] += h;
        sm.p[i] -= h;
        worst = std::max(worst,
                         std::fabs(rr.dq[i] -
                                   (hamiltonian(sp) - hamiltonian(sm)) / (2 * h)));
        sp = s;
        sm = s;
        sp.q[i] += h;
        sm.q[i] -= h;
        worst = std::max(worst,
                         std::fabs(rr.dp[i] +
                                   (hamiltonian(sp) - hamiltonian(sm)) / (2 * h)));
      }
    }
    report(2, "hamiltonian_consistency", worst <= 1e-7,
           "max gradient error " + fmt(worst) + " <= 1e-7");
  }

  // 3: long-time speeds against the interaction-matrix eigenvalues
  {
    auto late_speed_error = [](const PeakonState& s0, double T, double dt) {
      auto traj = evolve(s0, T, dt);
      auto ev = asymptotic_speeds(s0);
      std::size_t i80 = static_cast<std::size_t>(std::llround(0.8 * T / dt));
      double worst = 0.0;
      for (std::size_t i = 0; i < s0.size(); ++i) {
        double sp = (traj.back().q[i] - traj[i80].q[i]) /
                    (traj.back().time - traj[i80].time);
        worst = std::max(worst, std::fabs(sp - ev[i]));
      }
      return worst;
    };
    double e2 = late_speed_error(state({2.0, 1.0}, {0.0, 5.0}), 60.0, 2e-3);
    double e3 =
        late_speed_error(state({3.0, 2.0, 1.0}, {-10.0, 0.0, 10.0}), 60.0, 2e-3);
    report(3, "eigenvalue_speed_law", e2 <= 1e-3 && e3 <= 5e-3,
           "N=2 " + fmt(e2) + " <= 1e-3, N=3 " + fmt(e3) + " <= 5e-3");
  }

  // shared traveling-wave runs (blocks 4, 6, 8)
  FieldTrajectory wave = field_run({{0.0, 2.0}}, 0.02, 10.0, 5);
  FieldTrajectory wave_fine = field_run({{0.0, 2.0}}, 0.01, 10.0, 50);

  // 4: the smoothed peakon stays close to the translated profile, at a rate.
  // The ratio clause is known-red: the error lives almost entirely in a
  // few-cell layer around the crest where the slope misses by O(1), and the
  // H1 norm turns any O(dx)-wide localized defect into O(sqrt(dx)) error, so
  // halving dx can shrink it by at most sqrt(2) < 1.5 for a non-dissipative
  // scheme. Measured factors stay at 1.17-1.23 across mollifier widths,
  // sub-cell center fits, and CFL choices; dissipative variants reach no
  // higher and wreck blocks 5/8/12/13.
  {
    auto h1_err = [&](const FieldTrajectory& traj) {
      const GridField& uT = traj.states.back();
      double center = locate(uT, uT.x(argmax_node(uT)), n0);
      GridField d = make_grid(uT.origin, uT.dx, uT.size());
      for (std::size_t i = 0; i < uT.size(); ++i)
        d.u[i] = uT.u[i] - peakon_profile(1.0, uT.x(i) - center);
      return h1_norm(d);
    };
    double err = h1_err(wave);
    double err_fine = h1_err(wave_fine);
    double band = calibration::h1_band(1.0, 0.02, 10.0);
    bool pass = err <= band && err / err_fine >= 1.5;
    report(4, "traveling_wave_h1", pass,
           "err " + fmt(err) + " <= " + fmt(band) + ", ratio " +
               fmt(err / err_fine) + " >= 1.5");
  }

  // 5: field crests follow the exact particle trajectories
  {
    PeakonState s0 = state({1.0, 0.6}, {0.0, 12.0});
    auto ode = evolve(s0, 20.0, 1e-3);
    FieldTrajectory traj = field_run(s0.atoms(), 0.02, 20.0, 20);
    double bound = 10.0 * (0.02 + 8.0 * 0.02);  // 1/n = 8 dx smoothing width
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      double t = traj.times[k];
      auto i = static_cast<std::size_t>(std::llround(t / 1e-3));
      i = std::min(i, ode.size() - 1);
      const GridField& u = traj.at(k);
      for (std::size_t pk = 0; pk < 2; ++pk) {
        double qe = ode[i].q[pk];
        // crest = local argmax within 2 units of the exact position
        auto a = static_cast<std::size_t>((qe - 2.0 - u.origin) / u.dx);
        auto b = static_cast<std::size_t>((qe + 2.0 - u.origin) / u.dx);
        std::size_t best = a;
        for (std::size_t j = a; j <= b; ++j)
          if (u.u[j] > u.u[best]) best = j;
        worst = std::max(worst, std::fabs(u.x(best) - qe));
      }
    }
    report(5, "cross_solver_agreement", worst <= bound,
           "max crest offset " + fmt(worst) + " <= " + fmt(bound));
  }

  // 6: weighted energy/momentum budgets close at every interior step
  {
    const GridField& u0 = wave.at(0);
    InvariantRecord i0 = invariants(u0, momentum_of_field(u0));
    double dt = wave.times[1] - wave.times[0];
    double tol = 20.0 * (dt * dt + 0.02) * i0.E;
    GridField g = make_grid(u0.origin, u0.dx, u0.size());
    GridField one = make_grid(u0.origin, u0.dx, u0.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.u[i] = psi(g.x(i) - 5.0);
      one.u[i] = 1.0;
    }
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < wave.size(); ++k) {
      worst = std::max(worst, energy_flux_residual(wave, g, k));
      worst = std::max(worst, momentum_flux_residual(wave, g, k));
      worst = std::max(worst, energy_flux_residual(wave, one, k));
      worst = std::max(worst, momentum_flux_residual(wave, one, k));
    }
    report(6, "flux_identities", worst <= tol,
           "worst residual " + fmt(worst) + " <= " + fmt(tol));
  }

  // 7: transition weight properties at near round-off
  {
    double wb = -1.0, wr = 0.0;
    for (int i = 0; i < 10000; ++i) {
      double x = -60.0 + 120.0 * i / 9999.0;
      wb = std::max(wb, std::fabs(psi_third(x)) - 0.5 * psi_prime(x));
      wr = std::max(wr, std::fabs(psi(-x) - (1.0 - psi(x))));
    }
    report(7, "weight_properties", wb <= 1e-14 && wr <= 1e-14,
           "third-derivative margin " + fmt(wb) + ", reflection " + fmt(wr));
  }

  // shared perturbed run (blocks 8, 9, 12, 13)
  std::vector<std::pair<double, double>> pert_atoms = {
      {-2.0, 2.0 * 0.05 / std::sqrt(2.0)}, {0.0, 2.0}};
  FieldTrajectory pert = field_run(pert_atoms, 0.02, 40.0, 20);

  // 8: cone property on every stored state of every grid run
  {
    double w = std::max({worst_cone(wave), worst_cone(wave_fine),
                         worst_cone(pert)});
    report(8, "cone_property", w <= 10.0 * 0.02,
           "max(|u_x| - u) " + fmt(w) + " <= 0.2");
  }

  ModulationTrack ptrack = track(pert, n0);
  bool ptrack_ok = ptrack.times.size() == pert.size();

  // 9: localized functionals decay up to a single fitted exp(-R/6) defect
  {
    bool pass = ptrack_ok;
    std::string detail;
    if (ptrack_ok) {
      InvariantRecord i0 = invariants(pert.at(0), momentum_of_field(pert.at(0)));
      std::size_t t0 = pert.size() - 1;
      double worst_margin = -1.0;
      for (double gamma : {0.0, 0.5}) {
        AuditReport base =
            monotonicity_audit(pert, ptrack.x, 5.0, gamma, 0.25, t0, 1.0);
        double K0 =
            2.0 * (base.worst_increase + 1e-8 * i0.E) * std::exp(5.0 / 6.0);
        for (double R : {5.0, 10.0, 15.0}) {
          AuditReport rep =
              monotonicity_audit(pert, ptrack.x, R, gamma, 0.25, t0, K0);
          if (!rep.within_bound) pass = false;
          worst_margin = std::max(worst_margin, rep.worst_increase - rep.bound);
          double run_max = rep.samples.front().J_left, drop = 0.0;
          for (const auto& s : rep.samples) {
            drop = std::max(drop, run_max - s.J_left);
            run_max = std::max(run_max, s.J_left);
          }
          if (drop > rep.bound) pass = false;
        }
      }
      detail = "worst increase margin " + fmt(worst_margin);
    } else {
      detail = "modulation track truncated";
    }
    report(9, "monotonicity_audit", pass, detail);
  }

  // 10: modulation on exact data
  {
    double c = 1.0, dx = 0.01;
    FieldTrajectory exact;
    GridField layout = make_grid(-50.0, dx, 10001);
    for (int k = 0; k <= 20; ++k) {
      double t = 0.25 * k;
      exact.times.push_back(t);
      exact.states.push_back(field_from_atoms_on({{c * t, 2.0 * c}}, layout));
    }
    ModulationTrack tr = track(exact, n0);
    bool pass = tr.times.size() == exact.size();
    double worst_x = 0.0, worst_v = 0.0;
    for (std::size_t i = 0; pass && i < tr.times.size(); ++i) {
      worst_x = std::max(worst_x, std::fabs(tr.x[i] - c * tr.times[i]));
      worst_v = std::max(worst_v, std::fabs(tr.xdot[i] - c));
    }
    pass = pass && worst_x <= 1e-8 && worst_v <= c / 8.0;
    GridField a = field_from_atoms({{1.0, 1.6}}, dx);
    GridField b = field_from_atoms({{4.5, 1.6}}, dx);
    GridField big = field_from_atoms({{1.0, 4.8}}, dx);
    double equi = std::fabs((locate(b, 4.7, n0) - locate(a, 1.2, n0)) - 3.5);
    double scale = std::fabs(locate(big, 1.2, n0) - locate(a, 1.2, n0));
    pass = pass && equi <= 1e-9 && scale <= 1e-9;
    N0Report nr = verify_n0(n0);
    pass = pass && nr.monotone && nr.min_slope >= 0.25 * std::exp(-0.5);
    report(10, "modulation", pass,
           "x err " + fmt(worst_x) + ", speed err " + fmt(worst_v) +
               ", equivariance " + fmt(equi) + ", scale " + fmt(scale) +
               ", min slope " + fmt(nr.min_slope));
  }

  // 11: jump dynamics on closed-form trajectories
  {
    auto single = evolve(state({1.0}, {0.0}), 5.0, 1e-2);
    JumpTrack js = track_jump(single);
    double worst_a = 0.0, worst_r = 0.0;
    for (std::size_t k = 0; k < js.a.size(); ++k) {
      worst_a = std::max(worst_a, std::fabs(js.a[k] - 2.0));
      worst_r = std::max(worst_r, js.ode_residual[k]);
    }
    bool pass = worst_a <= 1e-10 && worst_r <= 1e-8;
    auto pair_res = [](double dt) {
      auto traj = evolve(state({1.5, 0.5}, {-4.0, 0.0}), 6.0, dt);
      JumpTrack jt = track_jump(traj);
      double worst = 0.0;
      for (std::size_t k = 0; k < jt.a.size(); ++k)
        worst = std::max(worst, std::fabs(jt.a[k] - 2.0 * traj[k].p.back()));
      double res = 0.0;
      for (std::size_t k = 1; k + 1 < jt.ode_residual.size(); ++k)
        res = std::max(res, jt.ode_residual[k]);
      return std::make_pair(worst, res);
    };
    auto [w_c, r_c] = pair_res(2e-2);
    auto [w_f, r_f] = pair_res(1e-2);
    double ratio = r_c / r_f;
    pass = pass && w_c <= 1e-10 && w_f <= 1e-10 && ratio >= 1.8;
    // a(t) never decreases on cone-preserving runs
    double mono = 0.0;
    for (auto& run : {single, evolve(state({1.0, 1.5, 2.0}, {-8.0, 0.0, 6.0}),
                                     20.0, 1e-3)}) {
      JumpTrack jt = track_jump(run);
      for (std::size_t k = 1; k < jt.a.size(); ++k)
        mono = std::max(mono, (jt.a[k - 1] - jt.a[k]) / jt.a[k]);
    }
    pass = pass && mono <= 1e-6;
    report(11, "jump_dynamics", pass,
           "single residual " + fmt(worst_r) + ", refinement ratio " +
               fmt(ratio) + " >= 1.8, monotonicity defect " + fmt(mono));
  }

  // 12: the perturbed wave settles toward a nearby profile.
  // The half-line clause is known-red: the distance has a discretization
  // floor of ~0.17 (the same crest layer as block 4) and the window
  // ]theta t, oo[ widens with t, slowly accumulating steady numerical wake
  // (~2e-4 of squared norm per unit time), so the distance at T edges above
  // the distance at T/2 once the physical perturbation has decayed beneath
  // the floor. Finer grids lower the floor but not the trend; a narrower
  // mollifier would fix the layer but breaks the cone bound of block 8.
  {
    bool pass = ptrack_ok;
    std::string detail = "modulation track truncated";
    if (ptrack_ok) {
      auto nearest = [&](double t) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < ptrack.times.size(); ++i)
          if (std::fabs(ptrack.times[i] - t) <
              std::fabs(ptrack.times[best] - t))
            best = i;
        return best;
      };
      // trailing mean over two time units: the raw peak height carries
      // ~1e-3 of sub-node phase wobble that would swamp the settling trend
      auto lam = [&](double t) {
        double sum = 0.0;
        int cnt = 0;
        for (std::size_t i = 0; i < ptrack.times.size(); ++i)
          if (ptrack.times[i] > t - 2.0 && ptrack.times[i] <= t + 1e-9) {
            sum += ptrack.lambda[i];
            ++cnt;
          }
        return sum / cnt;
      };
      double T = ptrack.times.back();
      std::size_t iT = ptrack.times.size() - 1;
      std::size_t ih = nearest(0.5 * T);
      double late = std::fabs(lam(T) - lam(0.5 * T));
      double early = std::fabs(lam(0.5 * T) - lam(0.25 * T));
      double cstar = lam(T);
      double theta = 0.25;
      auto dist = [&](std::size_t i) {
        const GridField& u = pert.states[i];
        GridField d = make_grid(u.origin, u.dx, u.size());
        for (std::size_t j = 0; j < u.size(); ++j)
          d.u[j] = u.u[j] - peakon_profile(cstar, u.x(j) - ptrack.x[i]);
        return h1_norm(d, theta * ptrack.times[i]);
      };
      double dT = dist(iT), dh = dist(ih);
      pass = late < early && dT < dh;
      detail = "lambda gaps " + fmt(late) + " < " + fmt(early) +
               ", half-line distance " + fmt(dT) + " < " + fmt(dh);
    }
    report(12, "asymptotic_stability_trend", pass, detail);
  }

  // 13: the crest jump saturates toward twice the crest height
  {
    JumpTrack jt = track_jump(pert, 0.0);
    bool pass = !jt.lost && jt.times.size() == pert.size();
    std::string detail = "jump track truncated";
    if (pass) {
      double s0 = 2.0 * jt.u_at.front() - jt.a.front();
      double sT = 2.0 * jt.u_at.back() - jt.a.back();
      double smin = s0;
      for (std::size_t k = 0; k < jt.times.size(); ++k)
        smin = std::min(smin, 2.0 * jt.u_at[k] - jt.a[k]);
      pass = smin >= -10.0 * 0.02 * 0.02 && sT < 0.5 * s0;
      detail = "gap start " + fmt(s0) + ", end " + fmt(sT) + ", min " + fmt(smin);
    }
    report(13, "saturation_probe", pass, detail);
  }

  // 14: identical configs produce identical bytes
  {
    auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    ScenarioConfig cfg = parse_config(
        "kind = single_peakon\nc = 1\ndx = 0.05\nT = 2\nn0 = " +
        std::to_string(n0) + "\nseed = 11\n");
    fs::path d1 = "acc_det_1", d2 = "acc_det_2";
    run_scenario(cfg, d1.string(), true);
    run_scenario(cfg, d2.string(), true);
    bool pass = true;
    std::vector<fs::path> rel;
    for (const auto& e : fs::recursive_directory_iterator(d1))
      if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), d1));
    if (rel.empty()) pass = false;
    for (const auto& r : rel)
      if (!fs::exists(d2 / r) || slurp(d1 / r) != slurp(d2 / r)) pass = false;
    fs::remove_all(d1);
    fs::remove_all(d2);
    report(14, "determinism", pass,
           std::to_string(rel.size()) + " files compared");
  }

  std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              g_failures, g_failures == 1 ? "" : "s");
  return g_failures == 0 ? 0 : 1;
}
