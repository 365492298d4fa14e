#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "chlab/characteristics.hpp"
#include "chlab/diagnostics.hpp"
#include "chlab/field_solver.hpp"
#include "chlab/harness.hpp"
#include "chlab/kernels.hpp"
#include "chlab/measures.hpp"
#include "chlab/modulation.hpp"
#include "chlab/multipeakon.hpp"

namespace fs = std::filesystem;
using namespace chlab;

namespace {

int cmd_run(const std::vector<std::string>& configs, const std::string& out,
            int jobs, bool quiet) {
  std::atomic<int> failures{0};
  std::atomic<std::size_t> next{0};
  std::mutex io;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      try {
        ScenarioConfig cfg = load_config(configs[i]);
        std::string dir = out;
        if (configs.size() > 1 && !out.empty())
          dir = (fs::path(out) / fs::path(configs[i]).stem()).string();
        ScenarioReport rep = run_scenario(cfg, dir, quiet || jobs > 1);
        std::lock_guard<std::mutex> lk(io);
        for (const auto& c : rep.checks) {
          if (!c.pass) ++failures;
          if (quiet && !c.pass)
            std::cout << configs[i] << ": CHECK " << c.name << " FAIL\n";
        }
        if (!quiet && jobs > 1)
          for (const auto& c : rep.checks)
            std::cout << configs[i] << ": CHECK " << c.name << " "
                      << (c.pass ? "PASS" : "FAIL") << "\n";
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(io);
        std::cerr << configs[i] << ": error: " << e.what() << "\n";
        ++failures;
      }
    }
  };
  int k = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < k; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return failures == 0 ? 0 : 1;
}

int cmd_audit(const std::string& dir, const std::string& out, bool quiet) {
  FieldTrajectory traj = read_trajectory(dir);
  if (traj.size() < 3) {
    std::cerr << "audit: trajectory too short\n";
    return 1;
  }
  fs::path outdir = out.empty() ? fs::path(dir) : fs::path(out);
  fs::create_directories(outdir);
  int n0 = default_n0();
  ModulationTrack tr = track(traj, n0);
  bool ok = true;
  auto report = [&](const std::string& name, bool pass, double v, double b) {
    ok = ok && pass;
    if (!quiet) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "CHECK %s %s %.17g %.17g\n", name.c_str(),
                    pass ? "PASS" : "FAIL", v, b);
      std::cout << buf;
    }
  };
  InvariantRecord i0 = invariants(traj.at(0), momentum_of_field(traj.at(0)));
  double edrift = 0.0, mdrift = 0.0, cone = 0.0;
  for (const auto& u : traj.states) {
    InvariantRecord r = invariants(u, momentum_of_field(u));
    edrift = std::max(edrift, std::fabs(r.E - i0.E) / i0.E);
    mdrift = std::max(mdrift, std::fabs(r.M - i0.M) / i0.M);
    cone = std::max(cone, cone_defect(u));
  }
  double dx = traj.at(0).dx;
  double dt = traj.times[1] - traj.times[0];
  report("energy_drift", edrift <= calibration::energy_drift_band(dx, traj.times.back()),
         edrift, calibration::energy_drift_band(dx, traj.times.back()));
  report("momentum_drift",
         mdrift <= calibration::momentum_drift_band(dx, traj.times.back()),
         mdrift, calibration::momentum_drift_band(dx, traj.times.back()));
  report("cone", cone <= 10.0 * dx, cone, 10.0 * dx);
  // flux identities against a transition weight through the data
  double x0 = traj.at(0).x(argmax_node(traj.at(0)));
  GridField g = make_grid(traj.at(0).origin, dx, traj.at(0).size());
  for (std::size_t i = 0; i < g.size(); ++i) g.u[i] = psi(g.x(i) - x0);
  double tol = 20.0 * (dt * dt + dx) * i0.E;
  double worst_e = 0.0, worst_m = 0.0;
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    worst_e = std::max(worst_e, energy_flux_residual(traj, g, i));
    worst_m = std::max(worst_m, momentum_flux_residual(traj, g, i));
  }
  report("energy_flux", worst_e <= tol, worst_e, tol);
  report("momentum_flux", worst_m <= tol, worst_m, tol);
  if (!tr.times.empty()) {
    std::size_t t0 = tr.times.size() - 1;
    AuditReport base = monotonicity_audit(traj, tr.x, 5.0, 0.0, 0.25, t0, 1.0);
    double K0 = (base.worst_increase + 1e-8 * i0.E) * std::exp(5.0 / 6.0);
    for (double R : {5.0, 10.0, 15.0}) {
      AuditReport rep = monotonicity_audit(traj, tr.x, R, 0.0, 0.25, t0, K0);
      char tag[48];
      std::snprintf(tag, sizeof tag, "audit_R%g.csv", R);
      write_audit_csv(rep, (outdir / tag).string());
      report(std::string("monotonicity_R") + std::to_string(static_cast<int>(R)),
             rep.within_bound, rep.worst_increase, rep.bound);
    }
  }
  return ok ? 0 : 1;
}

int cmd_verify_n0(bool quiet) {
  int chosen = -1;
  for (int n = 1; n <= 16; ++n) {
    N0Report r = verify_n0(n);
    if (!quiet) {
      char buf[120];
      std::snprintf(buf, sizeof buf, "n0 = %-3d monotone = %-3s min_slope = %.6f %s\n",
                    n, r.monotone ? "yes" : "no", r.min_slope,
                    r.admissible ? "admissible" : "");
      std::cout << buf;
    }
    if (chosen < 0 && n >= 4 && r.admissible) chosen = n;
  }
  if (chosen < 0) {
    std::cerr << "no admissible index found\n";
    return 1;
  }
  std::cout << "default n0 = " << chosen << "\n";
  return 0;
}

int cmd_selftest(bool quiet) {
  int fails = 0;
  auto check = [&](const char* name, bool ok) {
    if (!ok) ++fails;
    if (!quiet || !ok)
      std::cout << "CHECK " << name << (ok ? " PASS" : " FAIL") << "\n";
  };
  check("psi_midpoint", std::fabs(psi(0.0) - 0.5) < 1e-15);
  check("psi_reflection", std::fabs(psi(3.0) + psi(-3.0) - 1.0) < 1e-15);
  // Green convolution vs the tridiagonal inverse on a smooth field
  GridField f = make_grid(-30.0, 0.05, 1201);
  for (std::size_t i = 0; i < f.size(); ++i)
    f.u[i] = std::exp(-f.x(i) * f.x(i));
  GridField a = green_convolve(f), b = helmholtz_solve(f);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += (a.u[i] - b.u[i]) * (a.u[i] - b.u[i]);
    den += b.u[i] * b.u[i];
  }
  check("green_vs_tridiagonal", std::sqrt(num / den) < 5 * 0.05 * 0.05 + 1e-10);
  PeakonState s;
  s.p = {1.0};
  s.q = {0.0};
  auto traj = evolve(s, 5.0, 1e-2);
  check("single_peakon_motion", std::fabs(traj.back().q[0] - 5.0) < 1e-10);
  check("n0_search", default_n0() >= 4);
  std::cout << (fails == 0 ? "selftest OK\n" : "selftest FAILED\n");
  return fails == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"peakon laboratory"};
  app.require_subcommand(1);
  std::string out;
  int jobs = 1;
  bool quiet = false;
  app.add_option("--out", out, "output directory");
  app.add_option("--jobs", jobs, "number of concurrent scenarios")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", quiet, "suppress per-check output");

  std::vector<std::string> configs;
  auto* run = app.add_subcommand("run", "run scenarios from config files");
  run->add_option("config", configs, "config file(s)")->required();

  std::string traj_dir;
  auto* audit = app.add_subcommand("audit", "audit a stored field trajectory");
  audit->add_option("dir", traj_dir, "trajectory directory")->required();

  app.add_subcommand("verify-n0", "scan mollifier indices for admissibility");
  app.add_subcommand("selftest", "quick internal consistency checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(configs, out, jobs, quiet);
    if (audit->parsed()) return cmd_audit(traj_dir, out, quiet);
    if (app.get_subcommand("verify-n0")->parsed()) return cmd_verify_n0(quiet);
    if (app.get_subcommand("selftest")->parsed()) return cmd_selftest(quiet);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
