#include "chlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "chlab/characteristics.hpp"
#include "chlab/diagnostics.hpp"
#include "chlab/field_solver.hpp"
#include "chlab/kernels.hpp"
#include "chlab/measures.hpp"
#include "chlab/modulation.hpp"
#include "chlab/multipeakon.hpp"

namespace fs = std::filesystem;

namespace chlab {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (trim(v.substr(used)).size()) throw std::invalid_argument(v);
    if (!std::isfinite(x)) throw config_error(line, "non-finite value '" + v + "'");
    return x;
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    throw config_error(line, "cannot parse number '" + v + "'");
  }
}

std::vector<double> parse_list(const std::string& v, int line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), line));
  if (out.empty()) throw config_error(line, "empty list");
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string kind_name(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::SinglePeakon: return "single_peakon";
    case ScenarioKind::PerturbedPeakon: return "perturbed_peakon";
    case ScenarioKind::MultipeakonExact: return "multipeakon_exact";
    case ScenarioKind::PeakonTrain: return "peakon_train";
    case ScenarioKind::MonotonicityAudit: return "monotonicity_audit";
    case ScenarioKind::LiouvilleProbe: return "liouville_probe";
    case ScenarioKind::EigenSpeedCheck: return "eigen_speed_check";
  }
  return "?";
}

}  // namespace

std::vector<std::string> ScenarioConfig::header_lines() const {
  std::vector<std::string> h;
  h.push_back("kind = " + kind_name(kind));
  h.push_back("c = " + fmt(c));
  h.push_back("theta = " + fmt(theta));
  h.push_back("perturbation = " + fmt(perturbation));
  if (!p.empty()) {
    std::string ps = "p = ", qs = "q = ";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) ps += ",", qs += ",";
      ps += fmt(p[i]);
      qs += fmt(q[i]);
    }
    h.push_back(ps);
    h.push_back(qs);
  }
  if (N) h.push_back("N = " + std::to_string(N));
  h.push_back("spacing = " + fmt(spacing));
  h.push_back("dx = " + fmt(dx));
  h.push_back("T = " + fmt(T));
  h.push_back("dt = " + fmt(dt));
  h.push_back("cfl = " + fmt(cfl));
  std::string rs = "R = ";
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (i) rs += ",";
    rs += fmt(R[i]);
  }
  h.push_back(rs);
  h.push_back("gamma = " + fmt(gamma));
  h.push_back("n = " + std::to_string(n));
  h.push_back("n0 = " + std::to_string(n0));
  h.push_back("seed = " + std::to_string(seed));
  h.push_back("stride = " + std::to_string(stride));
  return h;
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  bool have_kind = false;
  int theta_line = 0, c_line = 0, p_line = 0, q_line = 0;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (val.empty()) throw config_error(lineno, "missing value for '" + key + "'");
    if (key == "kind") {
      have_kind = true;
      if (val == "single_peakon") cfg.kind = ScenarioKind::SinglePeakon;
      else if (val == "perturbed_peakon") cfg.kind = ScenarioKind::PerturbedPeakon;
      else if (val == "multipeakon_exact") cfg.kind = ScenarioKind::MultipeakonExact;
      else if (val == "peakon_train") cfg.kind = ScenarioKind::PeakonTrain;
      else if (val == "monotonicity_audit") cfg.kind = ScenarioKind::MonotonicityAudit;
      else if (val == "liouville_probe") cfg.kind = ScenarioKind::LiouvilleProbe;
      else if (val == "eigen_speed_check") cfg.kind = ScenarioKind::EigenSpeedCheck;
      else throw config_error(lineno, "unknown scenario kind '" + val + "'");
    } else if (key == "c") {
      cfg.c = parse_number(val, lineno);
      c_line = lineno;
    } else if (key == "theta") {
      cfg.theta = parse_number(val, lineno);
      theta_line = lineno;
    } else if (key == "perturbation") {
      cfg.perturbation = parse_number(val, lineno);
    } else if (key == "p") {
      cfg.p = parse_list(val, lineno);
      p_line = lineno;
    } else if (key == "q") {
      cfg.q = parse_list(val, lineno);
      q_line = lineno;
    } else if (key == "N") {
      cfg.N = static_cast<int>(parse_number(val, lineno));
    } else if (key == "spacing") {
      cfg.spacing = parse_number(val, lineno);
    } else if (key == "dx") {
      cfg.dx = parse_number(val, lineno);
    } else if (key == "T") {
      cfg.T = parse_number(val, lineno);
    } else if (key == "dt") {
      cfg.dt = parse_number(val, lineno);
    } else if (key == "cfl") {
      cfg.cfl = parse_number(val, lineno);
    } else if (key == "R") {
      cfg.R = parse_list(val, lineno);
    } else if (key == "gamma") {
      cfg.gamma = parse_number(val, lineno);
    } else if (key == "n") {
      cfg.n = static_cast<int>(parse_number(val, lineno));
    } else if (key == "n0") {
      cfg.n0 = static_cast<int>(parse_number(val, lineno));
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned long>(parse_number(val, lineno));
    } else if (key == "stride") {
      cfg.stride = static_cast<int>(parse_number(val, lineno));
    } else if (key == "out") {
      cfg.out = val;
    } else {
      throw config_error(lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_kind) throw config_error(lineno, "missing required key 'kind'");
  if (!(cfg.dx > 0.0)) throw config_error(lineno, "dx must be positive");
  if (!(cfg.T > 0.0)) throw config_error(lineno, "T must be positive");
  if (!(cfg.c > 0.0)) throw config_error(c_line ? c_line : lineno, "c must be positive");
  if (theta_line && cfg.theta >= cfg.c)
    throw config_error(theta_line,
                       "theta must be smaller than the wave speed c "
                       "(asymptotic-stability precondition)");
  bool needs_pq = cfg.kind == ScenarioKind::MultipeakonExact ||
                  cfg.kind == ScenarioKind::EigenSpeedCheck;
  if (needs_pq) {
    if (cfg.p.empty())
      throw config_error(lineno, "missing required key 'p' for this kind");
    if (cfg.q.empty())
      throw config_error(lineno, "missing required key 'q' for this kind");
    if (cfg.p.size() != cfg.q.size())
      throw config_error(q_line ? q_line : lineno, "p and q lengths differ");
    for (double v : cfg.p)
      if (!(v > 0.0))
        throw config_error(p_line, "momenta must be positive");
    // pairs may be given in any order; store them left to right
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < cfg.q.size(); ++i)
      pairs.emplace_back(cfg.q[i], cfg.p[i]);
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
      if (!(pairs[i].first < pairs[i + 1].first))
        throw config_error(q_line, "positions must be distinct");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      cfg.q[i] = pairs[i].first;
      cfg.p[i] = pairs[i].second;
    }
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace calibration {
// Frozen from refinement runs of the unit peakon (T = 10, dx = 0.04 / 0.02 /
// 0.01 gave H1 errors 0.20 / 0.17 / 0.14): the crest kink limits the H1
// convergence to roughly dx^(1/4), and the bands below hold a 2x margin.
double h1_band(double c, double dx, double T) {
  return c * std::pow(dx, 0.25) * std::sqrt(std::max(T, 1.0) / 10.0);
}
// Energy drift of the skew-symmetric scheme measured at 9e-6 (dx = 0.02) and
// 6e-5 (dx = 0.01, wider relative smoothing) over T = 10; mass is conserved
// to roundoff because the advection sum telescopes.
double energy_drift_band(double dx, double T) {
  return 20.0 * dx * dx * std::max(T, 1.0) / 10.0;
}
double momentum_drift_band(double dx, double T) {
  return 1e-8 * std::max(T, 1.0) / 10.0;
}
}  // namespace calibration

bool ScenarioReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

int effective_n(const ScenarioConfig& cfg) {
  // default: smoothing width 8 cells, so the kink is resolved and the
  // startup transient stays inside the cone tolerance
  return cfg.n > 0 ? cfg.n : static_cast<int>(std::ceil(1.0 / (8.0 * cfg.dx)));
}

struct FieldRun {
  FieldTrajectory traj;
  int n = 0;
  std::vector<std::pair<double, double>> atoms;
};

// Grid sized by the travel budget so boundaries stay quiet.
GridField layout_for(const std::vector<std::pair<double, double>>& atoms,
                     double dx, double umax, double T) {
  double qmin = atoms.front().first, qmax = atoms.front().first;
  for (const auto& [pos, mass] : atoms) {
    (void)mass;
    qmin = std::min(qmin, pos);
    qmax = std::max(qmax, pos);
  }
  double travel = umax * T;
  double len = 4.0 * ((qmax - qmin) + travel + 40.0);
  double lo = qmin - 0.5 * (len - travel);
  auto nn = static_cast<std::size_t>(std::ceil(len / dx)) + 1;
  return make_grid(lo, dx, nn);
}

FieldRun run_field(const ScenarioConfig& cfg,
                   const std::vector<std::pair<double, double>>& atoms) {
  FieldRun r;
  r.atoms = atoms;
  r.n = effective_n(cfg);
  double umax = 0.0;
  for (const auto& [pos, mass] : atoms) {
    (void)pos;
    umax += 0.5 * mass;
  }
  GridField layout = layout_for(atoms, cfg.dx, umax, cfg.T);
  GridField u0 = mollified_field_from_atoms(atoms, r.n, layout);
  SolverSettings st;
  st.dx = cfg.dx;
  st.cfl = cfg.cfl;
  st.T = cfg.T;
  st.mollifier_n = r.n;
  if (cfg.stride > 0) {
    st.store_stride = cfg.stride;
  } else {
    double dt0 = cfg.cfl * cfg.dx / std::max(1.0, umax);
    auto steps = static_cast<long>(cfg.T / dt0);
    st.store_stride = std::max(1L, steps / 200);
  }
  r.traj = evolve_field(u0, st);
  return r;
}

std::vector<std::pair<double, double>> perturbed_atoms(const ScenarioConfig& cfg) {
  double delta = cfg.perturbation > 0.0 ? cfg.perturbation : 0.05 * cfg.c;
  // An extra positive-momentum atom of H1 norm exactly delta, placed a few
  // units behind the crest at a seeded offset.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> off(1.5, 3.0);
  double xi = -off(rng);
  double eps = delta / std::sqrt(2.0);
  return {{xi, 2.0 * eps}, {0.0, 2.0 * cfg.c}};
}

double h1_distance_to_profile(const GridField& u, double amp, double center,
                              std::optional<double> half_line) {
  GridField d = make_grid(u.origin, u.dx, u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    d.u[i] = u.u[i] - peakon_profile(amp, u.x(i) - center);
  return h1_norm(d, half_line);
}

struct Ctx {
  const ScenarioConfig& cfg;
  fs::path dir;
  std::vector<std::string> header;
  ScenarioReport rep;
  bool quiet = false;

  void check(const std::string& name, bool pass, double value, double bound) {
    rep.checks.push_back({name, pass, value, bound});
    if (!quiet)
      std::cout << "CHECK " << name << " " << (pass ? "PASS" : "FAIL") << " "
                << fmt(value) << " " << fmt(bound) << "\n";
  }
  void note_file(const fs::path& p) { rep.files.push_back(p.string()); }
};

void scenario_single(Ctx& ctx) {
  const ScenarioConfig& cfg = ctx.cfg;
  FieldRun run = run_field(cfg, {{0.0, 2.0 * cfg.c}});
  write_trajectory(run.traj, (ctx.dir / "trajectory").string(), ctx.header);
  ctx.note_file(ctx.dir / "trajectory" / "index.csv");
  ModulationTrack tr = track(run.traj, ctx.rep.chosen_n0);
  write_track_csv(tr, (ctx.dir / "track.csv").string(), ctx.header);
  ctx.note_file(ctx.dir / "track.csv");

  const GridField& uT = run.traj.states.back();
  double h1err = h1_distance_to_profile(uT, cfg.c, tr.x.back(), std::nullopt);
  ctx.check("h1_error", h1err <= calibration::h1_band(cfg.c, cfg.dx, cfg.T),
            h1err, calibration::h1_band(cfg.c, cfg.dx, cfg.T));

  double worst_speed = 0.0;
  for (double v : tr.xdot) worst_speed = std::max(worst_speed, std::fabs(v - cfg.c));
  ctx.check("modulation_speed", worst_speed <= cfg.c / 8.0, worst_speed, cfg.c / 8.0);

  double worst_cone = 0.0;
  for (const auto& u : run.traj.states)
    worst_cone = std::max(worst_cone, cone_defect(u));
  ctx.check("cone", worst_cone <= 10.0 * cfg.dx, worst_cone, 10.0 * cfg.dx);

  InvariantRecord i0 =
      invariants(run.traj.states.front(), momentum_of_field(run.traj.states.front()));
  double edrift = 0.0, mdrift = 0.0;
  for (const auto& u : run.traj.states) {
    InvariantRecord r = invariants(u, momentum_of_field(u));
    edrift = std::max(edrift, std::fabs(r.E - i0.E) / i0.E);
    mdrift = std::max(mdrift, std::fabs(r.M - i0.M) / i0.M);
  }
  ctx.check("energy_drift", edrift <= calibration::energy_drift_band(cfg.dx, cfg.T),
            edrift, calibration::energy_drift_band(cfg.dx, cfg.T));
  ctx.check("momentum_drift",
            mdrift <= calibration::momentum_drift_band(cfg.dx, cfg.T), mdrift,
            calibration::momentum_drift_band(cfg.dx, cfg.T));
}

void scenario_perturbed(Ctx& ctx) {
  const ScenarioConfig& cfg = ctx.cfg;
  double theta = cfg.theta > 0.0 ? cfg.theta : cfg.c / 4.0;
  FieldRun run = run_field(cfg, perturbed_atoms(cfg));
  write_trajectory(run.traj, (ctx.dir / "trajectory").string(), ctx.header);
  ctx.note_file(ctx.dir / "trajectory" / "index.csv");
  ModulationTrack tr = track(run.traj, ctx.rep.chosen_n0);
  write_track_csv(tr, (ctx.dir / "track.csv").string(), ctx.header);
  ctx.note_file(ctx.dir / "track.csv");
  if (tr.times.empty()) {
    ctx.check("modulation_alive", false, 0.0, 1.0);
    return;
  }
  // the raw peak height wobbles at ~1e-3 with the sub-node phase of the
  // crest, so lambda comparisons use a trailing mean over two time units
  auto lambda_at = [&](double t) {
    std::size_t best = 0;
    double sum = 0.0;
    int cnt = 0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      if (std::fabs(tr.times[i] - t) < std::fabs(tr.times[best] - t)) best = i;
      if (tr.times[i] > t - 2.0 && tr.times[i] <= t + 1e-9) {
        sum += tr.lambda[i];
        ++cnt;
      }
    }
    return std::make_pair(cnt > 0 ? sum / cnt : tr.lambda[best], best);
  };
  double T = tr.times.back();
  auto [lT, iT] = lambda_at(T);
  auto [lh, ih] = lambda_at(0.5 * T);
  auto [lq, iq] = lambda_at(0.25 * T);
  double late = std::fabs(lT - lh), early = std::fabs(lh - lq);
  ctx.check("lambda_stabilizes", late < early, late, early);

  // half-line H1 distance to the fitted profile, along the moving frame
  auto dist_at = [&](std::size_t i) {
    double t = tr.times[i];
    std::size_t k = run.traj.index_before(t);
    return h1_distance_to_profile(run.traj.states[k], lT, tr.x[i], theta * t);
  };
  double dT = dist_at(iT), dh = dist_at(ih);
  ctx.check("halfline_h1_decreasing", dT < dh, dT, dh);

  double worst_cone = 0.0;
  for (const auto& u : run.traj.states)
    worst_cone = std::max(worst_cone, cone_defect(u));
  ctx.check("cone", worst_cone <= 10.0 * cfg.dx, worst_cone, 10.0 * cfg.dx);
}

void scenario_ode(Ctx& ctx, const PeakonState& s0) {
  const ScenarioConfig& cfg = ctx.cfg;
  std::vector<PeakonState> traj = evolve(s0, cfg.T, cfg.dt);
  // thin the stored rows for the CSV to ~2000 lines
  std::vector<PeakonState> rows;
  std::size_t stride = std::max<std::size_t>(1, traj.size() / 2000);
  for (std::size_t i = 0; i < traj.size(); i += stride) rows.push_back(traj[i]);
  if (rows.back().time != traj.back().time) rows.push_back(traj.back());
  write_peakon_csv(rows, (ctx.dir / "peakons.csv").string(), ctx.header);
  ctx.note_file(ctx.dir / "peakons.csv");

  double h0 = hamiltonian(traj.front());
  ExactInvariants v0 = exact_invariants(traj.front());
  double hdrift = 0.0, mdrift = 0.0, edrift = 0.0;
  for (const auto& s : traj) {
    hdrift = std::max(hdrift, std::fabs(hamiltonian(s) - h0) / std::fabs(h0));
    ExactInvariants v = exact_invariants(s);
    mdrift = std::max(mdrift, std::fabs(v.M - v0.M) / v0.M);
    edrift = std::max(edrift, std::fabs(v.E - v0.E) / v0.E);
  }
  ctx.check("h_drift", hdrift <= 1e-8, hdrift, 1e-8);
  ctx.check("m_drift", mdrift <= 1e-8, mdrift, 1e-8);
  ctx.check("e_drift", edrift <= 1e-8, edrift, 1e-8);

  if (ctx.cfg.kind == ScenarioKind::EigenSpeedCheck) {
    std::vector<double> ev = asymptotic_speeds(s0);
    const PeakonState& late = traj.back();
    std::size_t i80 = static_cast<std::size_t>(
        std::llround(0.8 * cfg.T / cfg.dt));
    i80 = std::min(i80, traj.size() - 1);
    double tol = s0.size() <= 2 ? 1e-3 : 5e-3;
    for (std::size_t i = 0; i < s0.size(); ++i) {
      double speed = (late.q[i] - traj[i80].q[i]) / (late.time - traj[i80].time);
      ctx.check("speed_" + std::to_string(i + 1),
                std::fabs(speed - ev[i]) <= tol, std::fabs(speed - ev[i]), tol);
    }
  }
}

void scenario_monotonicity(Ctx& ctx) {
  const ScenarioConfig& cfg = ctx.cfg;
  double theta = cfg.theta > 0.0 ? cfg.theta : cfg.c / 4.0;
  FieldRun run = run_field(cfg, perturbed_atoms(cfg));
  ModulationTrack tr = track(run.traj, ctx.rep.chosen_n0);
  if (tr.times.size() != run.traj.size()) {
    ctx.check("modulation_alive", false,
              static_cast<double>(tr.times.size()),
              static_cast<double>(run.traj.size()));
    return;
  }
  std::size_t t0 = run.traj.size() - 1;
  double fraction = theta / cfg.c;
  std::vector<double> gammas = {0.0, cfg.gamma > 0.0 ? cfg.gamma : cfg.c / 2.0};
  std::vector<double> Rs = cfg.R;
  std::sort(Rs.begin(), Rs.end());
  InvariantRecord i0 =
      invariants(run.traj.states.front(), momentum_of_field(run.traj.states.front()));
  for (double g : gammas) {
    // fit the defect constant at the smallest R, verify at the others
    AuditReport base =
        monotonicity_audit(run.traj, tr.x, Rs.front(), g, fraction, t0, 1.0);
    // 2x headroom: the calibration point R = Rs.front() would otherwise sit
    // exactly on its own fitted bound
    double K0 =
        2.0 * (base.worst_increase + 1e-8 * i0.E) * std::exp(Rs.front() / 6.0);
    for (double R : Rs) {
      AuditReport rep =
          monotonicity_audit(run.traj, tr.x, R, g, fraction, t0, K0);
      char tag[64];
      std::snprintf(tag, sizeof tag, "audit_R%g_g%g", R, g);
      write_audit_csv(rep, (ctx.dir / (std::string(tag) + ".csv")).string(),
                      ctx.header);
      ctx.note_file(ctx.dir / (std::string(tag) + ".csv"));
      ctx.check(std::string(tag) + "_I", rep.within_bound, rep.worst_increase,
                rep.bound);
      // worst drop of the left functional, which should only grow
      double run_max = rep.samples.front().J_left, worst_drop = 0.0;
      for (const auto& s : rep.samples) {
        worst_drop = std::max(worst_drop, run_max - s.J_left);
        run_max = std::max(run_max, s.J_left);
      }
      ctx.check(std::string(tag) + "_Jl", worst_drop <= rep.bound, worst_drop,
                rep.bound);
    }
  }
}

void scenario_liouville(Ctx& ctx) {
  const ScenarioConfig& cfg = ctx.cfg;
  FieldRun run = run_field(cfg, perturbed_atoms(cfg));
  JumpTrack jt = track_jump(run.traj, 0.0);
  write_jump_csv(jt, (ctx.dir / "jump.csv").string(), ctx.header);
  ctx.note_file(ctx.dir / "jump.csv");
  if (jt.times.size() < 2) {
    ctx.check("jump_alive", false, static_cast<double>(jt.times.size()), 2.0);
    return;
  }
  double s0 = 2.0 * jt.u_at.front() - jt.a.front();
  double sT = 2.0 * jt.u_at.back() - jt.a.back();
  double smin = s0;
  for (std::size_t i = 0; i < jt.times.size(); ++i)
    smin = std::min(smin, 2.0 * jt.u_at[i] - jt.a[i]);
  // allow a grid-level dip: the startup wake carries a little negative
  // sampled momentum through the measurement window
  ctx.check("saturation_nonnegative", smin >= -10.0 * cfg.dx * cfg.dx, smin,
            0.0);
  ctx.check("saturation_halves", sT < 0.5 * s0, sT, 0.5 * s0);
}

}  // namespace

ScenarioReport run_scenario(const ScenarioConfig& cfg, const std::string& out_dir,
                            bool quiet) {
  Ctx ctx{cfg, fs::path(out_dir.empty() ? (cfg.out.empty() ? "." : cfg.out)
                                        : out_dir),
          {}, {}, quiet};
  fs::create_directories(ctx.dir);
  ctx.rep.chosen_n0 = cfg.n0 > 0 ? cfg.n0 : default_n0();
  ctx.header = cfg.header_lines();
  ctx.header.push_back("chosen_n0 = " + std::to_string(ctx.rep.chosen_n0));

  switch (cfg.kind) {
    case ScenarioKind::SinglePeakon:
      scenario_single(ctx);
      break;
    case ScenarioKind::PerturbedPeakon:
      scenario_perturbed(ctx);
      break;
    case ScenarioKind::MultipeakonExact: {
      PeakonState s0;
      s0.p = cfg.p;
      s0.q = cfg.q;
      scenario_ode(ctx, s0);
      break;
    }
    case ScenarioKind::PeakonTrain: {
      PeakonState s0;
      int n = cfg.N > 0 ? cfg.N : 3;
      for (int i = 0; i < n; ++i) {
        s0.p.push_back(cfg.c * (1.0 + 0.5 * i));
        s0.q.push_back((i - 0.5 * (n - 1)) * cfg.spacing);
      }
      scenario_ode(ctx, s0);
      break;
    }
    case ScenarioKind::MonotonicityAudit:
      scenario_monotonicity(ctx);
      break;
    case ScenarioKind::LiouvilleProbe:
      scenario_liouville(ctx);
      break;
    case ScenarioKind::EigenSpeedCheck: {
      PeakonState s0;
      s0.p = cfg.p;
      s0.q = cfg.q;
      scenario_ode(ctx, s0);
      break;
    }
  }

  std::ofstream summary(ctx.dir / "summary.txt");
  for (const auto& h : ctx.header) summary << "# " << h << "\n";
  for (const auto& c : ctx.rep.checks)
    summary << "CHECK " << c.name << " " << (c.pass ? "PASS" : "FAIL") << " "
            << fmt(c.value) << " " << fmt(c.bound) << "\n";
  ctx.rep.files.push_back((ctx.dir / "summary.txt").string());
  return ctx.rep;
}

}  // namespace chlab
