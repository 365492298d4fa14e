#include "chlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chlab/kernels.hpp"

namespace chlab {

MomentumDensity MomentumDensity::atomic(std::vector<std::pair<double, double>> a) {
  for (const auto& [pos, mass] : a) {
    if (!std::isfinite(pos)) throw std::domain_error("atomic momentum: non-finite position");
    if (!(mass > 0.0)) throw std::domain_error("atomic momentum: nonpositive mass");
  }
  MomentumDensity y;
  y.kind = Kind::Atomic;
  y.atoms = std::move(a);
  return y;
}

MomentumDensity MomentumDensity::sampled(GridField f) {
  MomentumDensity y;
  y.kind = Kind::Sampled;
  y.samples = std::move(f);
  return y;
}

double MomentumDensity::total() const {
  if (kind == Kind::Atomic) {
    double m = 0.0;
    for (const auto& [pos, mass] : atoms) m += mass;
    return m;
  }
  return trapezoid(samples);
}

namespace {

GridField grid_covering(const std::vector<std::pair<double, double>>& atoms,
                        double dx, double padding) {
  double lo = 0.0, hi = 0.0;
  if (!atoms.empty()) {
    lo = hi = atoms.front().first;
    for (const auto& [pos, mass] : atoms) {
      (void)mass;
      lo = std::min(lo, pos);
      hi = std::max(hi, pos);
    }
  }
  lo -= padding;
  hi += padding;
  auto n = static_cast<std::size_t>(std::ceil((hi - lo) / dx)) + 1;
  return make_grid(lo, dx, std::max<std::size_t>(n, 16));
}

}  // namespace

GridField field_from_atoms(const std::vector<std::pair<double, double>>& atoms,
                           double dx, double padding) {
  for (const auto& [pos, mass] : atoms) {
    (void)pos;
    if (!(mass > 0.0)) throw std::domain_error("field_from_atoms: nonpositive mass");
  }
  GridField g = grid_covering(atoms, dx, padding);
  return field_from_atoms_on(atoms, g);
}

GridField field_from_atoms_on(const std::vector<std::pair<double, double>>& atoms,
                              const GridField& like) {
  return green_convolve_atoms(atoms, like);
}

GridField mollified_field_from_atoms(
    const std::vector<std::pair<double, double>>& atoms, int n,
    const GridField& like) {
  GridField out = make_grid(like.origin, like.dx, like.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.u[i] = mollified_atoms_value(atoms, n, out.x(i));
  return out;
}

MomentumDensity momentum_of_field(const GridField& u) {
  return MomentumDensity::sampled(helmholtz_apply(u));
}

YplusReport check_Yplus(const MomentumDensity& y) {
  YplusReport r;
  if (y.kind == MomentumDensity::Kind::Atomic) {
    r.is_nonnegative = true;
    for (const auto& [pos, mass] : y.atoms) {
      (void)pos;
      if (!(mass > 0.0)) {
        r.is_nonnegative = false;
        r.worst_violation = std::max(r.worst_violation, -mass);
      }
    }
    return r;
  }
  double ymax = 0.0, ymin = 0.0;
  for (double v : y.samples.u) {
    ymax = std::max(ymax, v);
    ymin = std::min(ymin, v);
  }
  double tol = 1e-8 * std::max(1.0, ymax);
  r.is_nonnegative = ymin >= -tol;
  r.worst_violation = std::max(0.0, -ymin);
  return r;
}

double h1_norm(const GridField& u, std::optional<double> half_line_start) {
  std::size_t start = 0;
  if (half_line_start) {
    if (!u.contains(*half_line_start))
      throw std::domain_error("h1_norm: half-line start outside grid");
    start = static_cast<std::size_t>(
        std::ceil((*half_line_start - u.origin) / u.dx - 1e-12));
  }
  std::vector<double> ux = centered_derivative(u);
  double s = 0.0;
  for (std::size_t i = start; i < u.size(); ++i)
    s += u.u[i] * u.u[i] + ux[i] * ux[i];
  return std::sqrt(s * u.dx);
}

double cone_defect(const GridField& u) {
  std::vector<double> ux = centered_derivative(u);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < u.size(); ++i)
    worst = std::max(worst, std::fabs(ux[i]) - u.u[i]);
  return worst;
}

}  // namespace chlab
