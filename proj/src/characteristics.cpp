#include "chlab/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "chlab/measures.hpp"

namespace chlab {
namespace {

// Field sample along a curve, zero outside the grid margin handled by caller.
double sample(const FieldTrajectory& traj, double t, double x) {
  return traj.value(t, x);
}

bool inside(const FieldTrajectory& traj, double x, double margin) {
  const GridField& g = traj.at(0);
  return x > g.x_min() + margin && x < g.x_max() - margin;
}

// RK4 advance of dq/dt = u(t, q) over [t0, t1] in substeps.
bool advance_point(const FieldTrajectory& traj, double t0, double t1,
                   double& q) {
  double margin = 4.0 * traj.at(0).dx;
  int nsub = std::max(1, static_cast<int>(std::ceil((t1 - t0) / 0.02)));
  double h = (t1 - t0) / nsub;
  for (int k = 0; k < nsub; ++k) {
    double t = t0 + k * h;
    if (!inside(traj, q, margin)) return false;
    double k1 = sample(traj, t, q);
    double k2 = sample(traj, t + 0.5 * h, q + 0.5 * h * k1);
    double k3 = sample(traj, t + 0.5 * h, q + 0.5 * h * k2);
    double k4 = sample(traj, t + h, q + h * k3);
    q += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!inside(traj, q, margin)) return false;
  }
  return true;
}

double slope_at(const FieldTrajectory& traj, double t, double x) {
  double h = traj.at(0).dx;
  return (sample(traj, t, x + h) - sample(traj, t, x - h)) / (2.0 * h);
}

std::size_t snap_to_crest(const GridField& u, double x) {
  auto j = static_cast<std::size_t>(
      std::llround((x - u.origin) / u.dx));
  j = std::min(j, u.size() - 1);
  while (j + 1 < u.size() && u.u[j + 1] > u.u[j]) ++j;
  while (j > 0 && u.u[j - 1] > u.u[j]) --j;
  return j;
}

// Smooth cutoff: 1 for |z| <= r0, 0 for |z| >= r1, cos^2 ramp between.
double crest_window(double z) {
  const double r0 = 0.75, r1 = 1.75;
  double az = std::fabs(z);
  if (az <= r0) return 1.0;
  if (az >= r1) return 0.0;
  double c = std::cos(0.5 * M_PI * (az - r0) / (r1 - r0));
  return c * c;
}

// Momentum-weighted measurements around a crest at q. Point stencils and
// least-squares profile fits are both polluted by the grid-scale wake the
// conservative solver leaves behind the crest; integrating the momentum
// density against smooth windows averages that noise away. The window mass
// estimates the crest atom a; the Green-kernel-weighted mass of everything
// outside the window splits into the one-sided limits at the crest:
// u(q) = a/2 + left + right and u_x(q-) = a/2 - left + right, which gives
// the edge flux (u^2 - u_x^2)/2 = left (a + 2 right).
struct CrestMeasure {
  double a = 0.0;      // momentum mass in the crest window
  double left = 0.0;   // e^{z} weighted rest mass behind the crest (halved)
  double right = 0.0;  // e^{-z} weighted rest mass ahead of the crest (halved)
};

CrestMeasure measure_crest(const GridField& u, double q) {
  MomentumDensity y = momentum_of_field(u);
  CrestMeasure m;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double z = u.x(i) - q;
    double w = crest_window(z);
    double v = y.samples.u[i] * u.dx;
    m.a += v * w;
    if (z < 0.0)
      m.left += 0.5 * v * (1.0 - w) * std::exp(z);
    else
      m.right += 0.5 * v * (1.0 - w) * std::exp(-z);
  }
  return m;
}

}  // namespace

FlowCurve flow(const FieldTrajectory& traj, double x0) {
  if (traj.size() == 0) throw std::domain_error("flow: empty trajectory");
  FlowCurve c;
  double q = x0;
  double margin = 4.0 * traj.at(0).dx;
  if (!inside(traj, q, margin))
    throw std::domain_error("flow: start point outside grid");
  c.times.push_back(traj.times[0]);
  c.q.push_back(q);
  // RK4 over pairs of snapshot intervals, so every stage evaluation lands on
  // a stored time. Interpolating in time between snapshots is first-order
  // inaccurate at a moving kink, which would make the crest characteristic
  // lag behind the wave; sampling only stored states avoids that entirely.
  std::size_t k = 0;
  while (k + 1 < traj.size()) {
    bool ok;
    if (k + 2 < traj.size()) {
      double t0 = traj.times[k], t1 = traj.times[k + 1], t2 = traj.times[k + 2];
      double h = t2 - t0;
      ok = inside(traj, q, margin);
      if (ok) {
        double k1 = sample(traj, t0, q);
        double k2 = sample(traj, t1, q + 0.5 * h * k1);
        double k3 = sample(traj, t1, q + 0.5 * h * k2);
        double k4 = sample(traj, t2, q + h * k3);
        q += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ok = inside(traj, q, margin);
      }
      if (ok) {
        c.times.push_back(t2);
        c.q.push_back(q);
      }
      k += 2;
    } else {
      ok = advance_point(traj, traj.times[k], traj.times[k + 1], q);
      if (ok) {
        c.times.push_back(traj.times[k + 1]);
        c.q.push_back(q);
      }
      k += 1;
    }
    if (!ok) {
      c.exited = true;
      break;
    }
  }
  return c;
}

std::vector<double> flow_jacobian(const FieldTrajectory& traj,
                                  const FlowCurve& curve) {
  std::size_t m = curve.times.size();
  std::vector<double> jac(m, 1.0);
  double acc = 0.0;
  for (std::size_t k = 1; k < m; ++k) {
    double s0 = slope_at(traj, curve.times[k - 1], curve.q[k - 1]);
    double s1 = slope_at(traj, curve.times[k], curve.q[k]);
    acc += 0.5 * (s0 + s1) * (curve.times[k] - curve.times[k - 1]);
    jac[k] = std::exp(acc);
  }
  return jac;
}

double transport_check(const FieldTrajectory& traj, double x0, double t) {
  FlowCurve curve = flow(traj, x0);
  if (curve.times.empty() || t > curve.times.back() + 1e-12)
    throw std::domain_error("transport_check: time beyond computed curve");
  std::vector<double> jac = flow_jacobian(traj, curve);
  // interpolate q and the jacobian at t
  auto it = std::upper_bound(curve.times.begin(), curve.times.end(), t);
  std::size_t i = (it == curve.times.begin())
                      ? 0
                      : static_cast<std::size_t>(it - curve.times.begin()) - 1;
  double qt, jt;
  if (i + 1 >= curve.times.size()) {
    qt = curve.q[i];
    jt = jac[i];
  } else {
    double w = (t - curve.times[i]) / (curve.times[i + 1] - curve.times[i]);
    qt = (1.0 - w) * curve.q[i] + w * curve.q[i + 1];
    jt = (1.0 - w) * jac[i] + w * jac[i + 1];
  }
  MomentumDensity y0 = momentum_of_field(traj.at(0));
  double y0max = 0.0;
  for (double v : y0.samples.u) y0max = std::max(y0max, std::fabs(v));
  if (y0max == 0.0) return 0.0;
  // momentum at time t, interpolated between the bracketing snapshots
  std::size_t k = traj.index_before(t);
  MomentumDensity ya = momentum_of_field(traj.at(k));
  double yt;
  if (k + 1 >= traj.size() || t <= traj.times[k]) {
    yt = ya.samples.value_at(qt);
  } else {
    MomentumDensity yb = momentum_of_field(traj.at(k + 1));
    double w = (t - traj.times[k]) / (traj.times[k + 1] - traj.times[k]);
    yt = (1.0 - w) * ya.samples.value_at(qt) + w * yb.samples.value_at(qt);
  }
  return std::fabs(y0.samples.value_at(x0) - yt * jt * jt) / y0max;
}

double jump_at(const GridField& u, double x) {
  auto j = static_cast<long>(std::llround((x - u.origin) / u.dx));
  if (j < 3 || j + 3 >= static_cast<long>(u.size()))
    throw std::domain_error("jump_at: too close to the boundary");
  auto ju = static_cast<std::size_t>(j);
  return backward_slope(u, ju - 1) - forward_slope(u, ju + 1);
}

JumpTrack track_jump(const FieldTrajectory& traj, double x0) {
  if (traj.size() == 0) throw std::domain_error("track_jump: empty trajectory");
  JumpTrack tr;
  const GridField& u0 = traj.at(0);
  std::size_t j = snap_to_crest(u0, x0);
  // the raw one-sided stencil is noisy but fine as a presence test
  if (max_abs(u0) == 0.0 || jump_at(u0, u0.x(j)) < 0.05 * max_abs(u0))
    throw std::runtime_error("track_jump: initial jump below threshold");
  double q = u0.x(j);
  std::vector<double> lefts, rights;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const GridField& u = traj.at(k);
    if (k > 0) {
      if (!advance_point(traj, traj.times[k - 1], traj.times[k], q)) {
        tr.lost = true;
        break;
      }
    }
    j = snap_to_crest(u, q);
    q = u.x(j);
    if (jump_at(u, q) < 0.05 * max_abs(u)) {
      tr.lost = true;
      break;
    }
    CrestMeasure cm = measure_crest(u, q);
    tr.times.push_back(traj.times[k]);
    tr.q_star.push_back(q);
    tr.a.push_back(cm.a);
    tr.u_at.push_back(0.5 * cm.a + cm.left + cm.right);
    lefts.push_back(cm.left);
    rights.push_back(cm.right);
  }
  std::size_t m = tr.times.size();
  tr.ode_residual.assign(m, 0.0);
  auto flux = [&](std::size_t k) {
    return lefts[k] * (tr.a[k] + 2.0 * rights[k]);
  };
  for (std::size_t k = 0; k < m; ++k) {
    double dadt;
    if (m < 2) break;
    if (k == 0)
      dadt = (tr.a[1] - tr.a[0]) / (tr.times[1] - tr.times[0]);
    else if (k + 1 == m)
      dadt = (tr.a[m - 1] - tr.a[m - 2]) / (tr.times[m - 1] - tr.times[m - 2]);
    else
      dadt = (tr.a[k + 1] - tr.a[k - 1]) / (tr.times[k + 1] - tr.times[k - 1]);
    tr.ode_residual[k] = std::fabs(dadt - flux(k));
  }
  return tr;
}

JumpTrack track_jump(const std::vector<PeakonState>& traj) {
  JumpTrack tr;
  for (const auto& s : traj) {
    std::size_t n = s.size();
    tr.times.push_back(s.time);
    tr.q_star.push_back(s.q[n - 1]);
    tr.a.push_back(2.0 * s.p[n - 1]);
    tr.u_at.push_back(s.value(s.q[n - 1]));
  }
  std::size_t m = tr.times.size();
  tr.ode_residual.assign(m, 0.0);
  auto flux = [&](const PeakonState& s) {
    std::size_t n = s.size();
    double inner = 0.0;  // contribution of the peaks strictly to the left
    for (std::size_t j = 0; j + 1 < n; ++j)
      inner += s.p[j] * std::exp(-(s.q[n - 1] - s.q[j]));
    double u = s.p[n - 1] + inner;
    double ux = s.p[n - 1] - inner;  // left limit of the slope at the crest
    return 0.5 * (u * u - ux * ux);
  };
  for (std::size_t k = 0; k < m; ++k) {
    if (m < 2) break;
    double dadt;
    if (k == 0)
      dadt = (tr.a[1] - tr.a[0]) / (tr.times[1] - tr.times[0]);
    else if (k + 1 == m)
      dadt = (tr.a[m - 1] - tr.a[m - 2]) / (tr.times[m - 1] - tr.times[m - 2]);
    else
      dadt = (tr.a[k + 1] - tr.a[k - 1]) / (tr.times[k + 1] - tr.times[k - 1]);
    tr.ode_residual[k] = std::fabs(dadt - flux(traj[k]));
  }
  return tr;
}

void write_jump_csv(const JumpTrack& t, const std::string& path,
                    const std::vector<std::string>& header_lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_jump_csv: cannot open " + path);
  for (const auto& h : header_lines) out << "# " << h << "\n";
  out << "t,q_star,a,u_at,ode_residual\n";
  char buf[160];
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  t.times[i], t.q_star[i], t.a[i], t.u_at[i],
                  t.ode_residual[i]);
    out << buf;
  }
  if (t.lost) out << "# lost = yes\n";
}

}  // namespace chlab
