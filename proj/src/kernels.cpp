#include "chlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chlab {
namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLx[kGL] = {
    -0.98940093499164993, -0.94457502307323258, -0.86563120238783175,
    -0.75540440835500303, -0.61787624440264375, -0.45801677765722739,
    -0.28160355077925891, -0.09501250983763744, 0.09501250983763744,
    0.28160355077925891,  0.45801677765722739,  0.61787624440264375,
    0.75540440835500303,  0.86563120238783175,  0.94457502307323258,
    0.98940093499164993};
constexpr double kGLw[kGL] = {
    0.027152459411754095, 0.062253523938647893, 0.095158511682492785,
    0.12462897125553387,  0.14959598881657673,  0.16915651939500254,
    0.18260341504492359,  0.18945061045506850,  0.18945061045506850,
    0.18260341504492359,  0.16915651939500254,  0.14959598881657673,
    0.12462897125553387,  0.095158511682492785, 0.062253523938647893,
    0.027152459411754095};

template <class F>
double gauss_panel(F&& f, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < kGL; ++i) s += kGLw[i] * f(mid + half * kGLx[i]);
  return s * half;
}

// Composite rule: one panel is not enough for the bump, whose derivatives
// grow quickly toward the support ends.
template <class F>
double gauss_composite(F&& f, double a, double b, int panels) {
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    double lo = a + (b - a) * k / panels;
    double hi = a + (b - a) * (k + 1) / panels;
    total += gauss_panel(f, lo, hi);
  }
  return total;
}

template <class F>
double adaptive_simpson(F&& f, double a, double b, double fa, double fm, double fb,
                        double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

}  // namespace

double PeakonProfile::operator()(double x) const {
  return peakon_profile(amplitude, x - center);
}

double peakon_profile(double c, double offset) {
  if (!std::isfinite(c) || !std::isfinite(offset))
    throw std::invalid_argument("peakon_profile: non-finite input");
  return c * std::exp(-std::fabs(offset));
}

double peakon_profile_derivative(double offset) {
  if (offset == 0.0) return 0.0;
  return (offset > 0.0 ? -1.0 : 1.0) * std::exp(-std::fabs(offset));
}

double psi(double x) {
  // 2/pi * atan(exp(x/6)); use the reflection identity for large x to avoid
  // losing the approach to 1 in the exp overflow range.
  if (x > 0.0) return 1.0 - psi(-x);
  return M_2_PI * std::atan(std::exp(x / 6.0));
}

double psi_prime(double x) {
  return 1.0 / (6.0 * M_PI * std::cosh(x / 6.0));
}

double psi_third(double x) {
  double t = std::tanh(x / 6.0);
  return (2.0 * t * t - 1.0) / (216.0 * M_PI * std::cosh(x / 6.0));
}

double weight_psi(double x, int order) {
  switch (order) {
    case 0: return psi(x);
    case 1: return psi_prime(x);
    case 3: return psi_third(x);
    default: throw std::invalid_argument("weight_psi: order must be 0, 1 or 3");
  }
}

double mollifier_bump(double x) {
  if (std::fabs(x) >= 1.0) return 0.0;
  return std::exp(1.0 / (x * x - 1.0));
}

double mollifier_bump_integral() {
  static const double value = [] {
    auto f = [](double x) { return mollifier_bump(x); };
    double fa = f(-1.0), fm = f(0.0), fb = f(1.0);
    return adaptive_simpson(f, -1.0, 1.0, fa, fm, fb, 1e-14, 40);
  }();
  return value;
}

MollifierKernel mollifier_kernel(int n, double dx) {
  if (n < 1) throw std::invalid_argument("mollifier_kernel: n must be >= 1");
  if (!(dx > 0.0) || dx >= 1.0 / n)
    throw std::invalid_argument(
        "mollifier_kernel: grid spacing does not resolve the support (need dx < 1/n)");
  MollifierKernel k;
  k.index_n = n;
  k.dx = dx;
  k.half_width = static_cast<int>(std::ceil(1.0 / (n * dx))) - 1;
  double sum = 0.0;
  k.weights.resize(2 * k.half_width + 1);
  for (int j = -k.half_width; j <= k.half_width; ++j) {
    double w = mollifier_bump(n * j * dx);
    k.weights[j + k.half_width] = w;
    sum += w;
  }
  for (double& w : k.weights) w /= sum;
  return k;
}

double mollified_atoms_value(const std::vector<std::pair<double, double>>& atoms,
                             int n, double z) {
  if (n < 1) throw std::invalid_argument("mollified_atoms_value: n must be >= 1");
  double norm = mollifier_bump_integral();
  auto rho_n = [&](double s) { return n * mollifier_bump(n * s) / norm; };
  auto f = [&](double s) {
    double v = 0.0;
    for (const auto& [pos, mass] : atoms)
      v += 0.5 * mass * std::exp(-std::fabs(z - s - pos));
    return rho_n(s) * v;
  };
  double a = -1.0 / n, b = 1.0 / n;
  // Split the panel at kinks of the translated field.
  std::vector<double> cuts{a};
  for (const auto& [pos, mass] : atoms) {
    (void)mass;
    double s = z - pos;
    if (s > a && s < b) cuts.push_back(s);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    int panels = std::max(1, static_cast<int>(std::ceil(
                                 (cuts[i + 1] - cuts[i]) * n * 8.0)));
    total += gauss_composite(f, cuts[i], cuts[i + 1], panels);
  }
  return total;
}

GridField green_convolve(const GridField& f) {
  std::size_t n = f.size();
  if (n == 0) throw std::domain_error("green_convolve: empty grid");
  double r = std::exp(-f.dx);
  // Lattice Green function of the sinh-scaled operator: tanh(dx/2) r^|i-j|.
  // With this weight the convolution is the exact inverse of helmholtz_apply
  // on the infinite lattice, and constants are a fixed point.
  std::vector<double> left(n), right(n);
  left[0] = f.u[0];
  for (std::size_t i = 1; i < n; ++i) left[i] = r * left[i - 1] + f.u[i];
  right[n - 1] = 0.0;
  for (std::size_t i = n - 1; i-- > 0;)
    right[i] = r * (right[i + 1] + f.u[i + 1]);
  double K = std::tanh(0.5 * f.dx);
  GridField out = make_grid(f.origin, f.dx, n);
  for (std::size_t i = 0; i < n; ++i) out.u[i] = K * (left[i] + right[i]);
  return out;
}

GridField green_convolve_atoms(const std::vector<std::pair<double, double>>& atoms,
                               const GridField& like) {
  if (like.size() == 0) throw std::domain_error("green_convolve_atoms: empty grid");
  GridField out = make_grid(like.origin, like.dx, like.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double x = out.x(i), v = 0.0;
    for (const auto& [pos, mass] : atoms) v += 0.5 * mass * std::exp(-std::fabs(x - pos));
    out.u[i] = v;
  }
  return out;
}

double laplacian_denominator(double dx) {
  double s = std::sinh(0.5 * dx);
  return 4.0 * s * s;
}

GridField helmholtz_solve(const GridField& f) {
  std::size_t n = f.size();
  if (n < 3) throw std::invalid_argument("helmholtz_solve: grid size must be >= 3");
  double h2 = laplacian_denominator(f.dx);
  double diag = 1.0 + 2.0 / h2;
  double off = -1.0 / h2;
  // Thomas sweep.
  std::vector<double> cp(n), dp(n);
  cp[0] = off / diag;
  dp[0] = f.u[0] / diag;
  for (std::size_t i = 1; i < n; ++i) {
    double m = diag - off * cp[i - 1];
    cp[i] = off / m;
    dp[i] = (f.u[i] - off * dp[i - 1]) / m;
  }
  GridField out = make_grid(f.origin, f.dx, n);
  out.u[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) out.u[i] = dp[i] - cp[i] * out.u[i + 1];
  return out;
}

GridField helmholtz_apply(const GridField& u) {
  std::size_t n = u.size();
  if (n < 3) throw std::invalid_argument("helmholtz_apply: grid size must be >= 3");
  double h2 = laplacian_denominator(u.dx);
  GridField out = make_grid(u.origin, u.dx, n);
  for (std::size_t i = 0; i < n; ++i) {
    double um = (i > 0) ? u.u[i - 1] : 0.0;
    double up = (i + 1 < n) ? u.u[i + 1] : 0.0;
    out.u[i] = u.u[i] - (um - 2.0 * u.u[i] + up) / h2;
  }
  return out;
}

}  // namespace chlab
