#include "chlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "chlab/kernels.hpp"

namespace chlab {
namespace {

double weighted_energy(const GridField& u, const std::vector<double>& ux,
                       const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    s += (u.u[i] * u.u[i] + ux[i] * ux[i]) * w[i];
  return s * u.dx;
}

double weighted_momentum(const MomentumDensity& y, const GridField& like,
                         auto&& weight) {
  if (y.kind == MomentumDensity::Kind::Atomic) {
    double s = 0.0;
    for (const auto& [pos, mass] : y.atoms) s += mass * weight(pos);
    return s;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < y.samples.size(); ++i)
    s += y.samples.u[i] * weight(like.x(i));
  return s * y.samples.dx;
}

}  // namespace

InvariantRecord invariants(const GridField& u, const MomentumDensity& y) {
  InvariantRecord r;
  r.M = y.total();
  std::vector<double> ux = centered_derivative(u);
  double e = 0.0, f = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double ui = u.u[i], di = ux[i];
    e += ui * ui + di * di;
    f += ui * ui * ui + ui * di * di;
  }
  r.E = e * u.dx;
  r.F = f * u.dx;
  return r;
}

double localized_right(const GridField& u, const MomentumDensity& y,
                       double center, double R, double gamma) {
  std::vector<double> ux = centered_derivative(u);
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = psi(u.x(i) - center - R);
  double s = weighted_energy(u, ux, w);
  if (gamma != 0.0)
    s += gamma * weighted_momentum(y, u, [&](double x) { return psi(x - center - R); });
  return s;
}

double localized_left(const GridField& u, const MomentumDensity& y,
                      double center, double R, double gamma) {
  std::vector<double> ux = centered_derivative(u);
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = 1.0 - psi(u.x(i) - center + R);
  double s = weighted_energy(u, ux, w);
  if (gamma != 0.0)
    s += gamma * weighted_momentum(
                     y, u, [&](double x) { return 1.0 - psi(x - center + R); });
  return s;
}

AuditReport monotonicity_audit(const FieldTrajectory& traj,
                               const std::vector<double>& center_track,
                               double R, double gamma,
                               double z_speed_fraction, std::size_t t0_index,
                               double K0) {
  if (t0_index >= traj.size())
    throw std::invalid_argument("monotonicity_audit: t0 index outside trajectory");
  if (center_track.size() != traj.size())
    throw std::invalid_argument("monotonicity_audit: center track length mismatch");
  if (!(z_speed_fraction > 0.0) || !(z_speed_fraction < 1.0))
    throw std::invalid_argument("monotonicity_audit: speed fraction must be in (0,1)");
  AuditReport rep;
  rep.t0 = traj.times[t0_index];
  rep.R = R;
  rep.gamma = gamma;
  rep.bound = K0 * std::exp(-R / 6.0);
  double c0 = center_track[t0_index];
  std::vector<double> I(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const GridField& u = traj.at(k);
    MomentumDensity y = momentum_of_field(u);
    double z = c0 + R + z_speed_fraction * (center_track[k] - c0);
    std::vector<double> ux = centered_derivative(u);
    std::vector<double> w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = psi(u.x(i) - z);
    double v = weighted_energy(u, ux, w);
    if (gamma != 0.0)
      v += gamma * weighted_momentum(y, u, [&](double x) { return psi(x - z); });
    I[k] = v;
    AuditSample s;
    s.t = traj.times[k];
    s.I = v;
    s.J_right = localized_right(u, y, center_track[k], R, gamma);
    s.J_left = localized_left(u, y, center_track[k], R, gamma);
    rep.samples.push_back(s);
  }
  for (std::size_t k = 0; k <= t0_index; ++k) {
    double inc = I[t0_index] - I[k];
    rep.samples[k].violation = std::max(0.0, inc);
    rep.worst_increase = std::max(rep.worst_increase, inc);
  }
  rep.within_bound = rep.worst_increase <= rep.bound;
  return rep;
}

DecayFit decay_profile(const GridField& u, const MomentumDensity& y,
                       double center, const std::vector<double>& R_values,
                       double gamma, double fit_tolerance) {
  DecayFit fit;
  for (double R : R_values) {
    double tail = localized_right(u, y, center, R, gamma) +
                  localized_left(u, y, center, R, gamma);
    fit.tails.emplace_back(R, tail);
  }
  // log-linear least squares over usable tails
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (const auto& [R, tail] : fit.tails) {
    if (tail < 1e-14) continue;
    double ly = std::log(tail);
    sx += R;
    sy += ly;
    sxx += R * R;
    sxy += R * ly;
    ++m;
  }
  if (m >= 2) {
    double denom = static_cast<double>(m) * sxx - sx * sx;
    if (std::fabs(denom) > 1e-30) {
      fit.rate = (static_cast<double>(m) * sxy - sx * sy) / denom;
      fit.fitted = true;
      fit.satisfies_bound = fit.rate <= -1.0 / 6.0 + fit_tolerance;
    }
  }
  return fit;
}

namespace {

struct FluxParts {
  double weighted;  // the functional under the time derivative
  double rhs;       // the flux side at this snapshot
};

FluxParts energy_parts(const GridField& u, const GridField& g) {
  if (!same_layout(u, g))
    throw std::invalid_argument("flux residual: weight layout mismatch");
  std::vector<double> ux = centered_derivative(u);
  std::vector<double> gx = centered_derivative(g);
  GridField w = make_grid(u.origin, u.dx, u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    w.u[i] = u.u[i] * u.u[i] + 0.5 * ux[i] * ux[i];
  GridField h = green_convolve(w);
  FluxParts fp{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    fp.weighted += (u.u[i] * u.u[i] + ux[i] * ux[i]) * g.u[i];
    fp.rhs += (u.u[i] * ux[i] * ux[i] + 2.0 * u.u[i] * h.u[i]) * gx[i];
  }
  fp.weighted *= u.dx;
  fp.rhs *= u.dx;
  return fp;
}

FluxParts momentum_parts(const GridField& u, const GridField& g) {
  if (!same_layout(u, g))
    throw std::invalid_argument("flux residual: weight layout mismatch");
  std::vector<double> ux = centered_derivative(u);
  std::vector<double> gx = centered_derivative(g);
  MomentumDensity y = momentum_of_field(u);
  FluxParts fp{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    fp.weighted += y.samples.u[i] * g.u[i];
    fp.rhs += (y.samples.u[i] * u.u[i] +
               0.5 * (u.u[i] * u.u[i] - ux[i] * ux[i])) *
              gx[i];
  }
  fp.weighted *= u.dx;
  fp.rhs *= u.dx;
  return fp;
}

template <class Parts>
double flux_residual(const FieldTrajectory& traj, const GridField& g,
                     std::size_t i, Parts&& parts) {
  if (i == 0 || i + 1 >= traj.size())
    throw std::invalid_argument("flux residual: need an interior stored step");
  double tm = traj.times[i - 1], tp = traj.times[i + 1];
  double fm = parts(traj.at(i - 1), g).weighted;
  double fp = parts(traj.at(i + 1), g).weighted;
  double dfdt = (fp - fm) / (tp - tm);
  return std::fabs(dfdt - parts(traj.at(i), g).rhs);
}

}  // namespace

double energy_flux_residual(const FieldTrajectory& traj, const GridField& g,
                            std::size_t t_index) {
  return flux_residual(traj, g, t_index,
                       [](const GridField& u, const GridField& w) {
                         return energy_parts(u, w);
                       });
}

double momentum_flux_residual(const FieldTrajectory& traj, const GridField& g,
                              std::size_t t_index) {
  return flux_residual(traj, g, t_index,
                       [](const GridField& u, const GridField& w) {
                         return momentum_parts(u, w);
                       });
}

void write_audit_csv(const AuditReport& r, const std::string& path,
                     const std::vector<std::string>& header_lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_audit_csv: cannot open " + path);
  for (const auto& h : header_lines) out << "# " << h << "\n";
  out << "t,I,J_right,J_left,violation\n";
  char buf[160];
  for (const auto& s : r.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.I,
                  s.J_right, s.J_left, s.violation);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "# worst_increase = %.17g\n", r.worst_increase);
  out << buf;
  std::snprintf(buf, sizeof buf, "# bound = %.17g\n", r.bound);
  out << buf;
  out << "# within_bound = " << (r.within_bound ? "yes" : "no") << "\n";
  std::snprintf(buf, sizeof buf, "# t0 = %.17g R = %.17g gamma = %.17g\n", r.t0,
                r.R, r.gamma);
  out << buf;
}

}  // namespace chlab
