#include "chlab/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>

#include "chlab/kernels.hpp"

namespace chlab {
namespace {

// 16-point Gauss-Legendre rule, matching the kernels module quadrature.
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

double bump_n(int n, double s) {
  return n * mollifier_bump(n * s) / mollifier_bump_integral();
}

// The bump's derivatives grow toward the support ends, so one panel is not
// enough; subdivide until the rule saturates.
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

int panels_for(int n, double width) {
  return std::max(1, static_cast<int>(std::ceil(width * n * 8.0)));
}

// Integral of bump_n(s) e^{s} over the support; by symmetry also the e^{-s}
// version. Used for the closed tail form of the smoothed profile slope.
double bump_exp_moment(int n) {
  double lim = 1.0 / n;
  auto f = [&](double s) { return bump_n(n, s) * std::exp(s); };
  return gauss_composite(f, -lim, lim, panels_for(n, 2.0 * lim));
}

// (bump_n * phi')(z) with phi(x) = exp(-|x|). Outside the support the kink
// is gone and the value is a pure exponential tail; inside, the odd kernel
// is tabulated once on [0, 1/n] and read back by cubic interpolation. The
// table keeps the per-node cost of the residual sums flat.
struct SlopeKernel {
  double lim = 0.0;
  double em = 0.0;  // exp moment, sets the tails
  double h = 0.0;
  std::vector<double> val;  // kernel on [0, lim]

  double operator()(double z) const {
    double sign = z < 0.0 ? -1.0 : 1.0;
    double a = std::fabs(z);
    if (a >= lim) return -sign * em * std::exp(-a);
    double s = a / h;
    auto j = static_cast<long>(s);
    long last = static_cast<long>(val.size()) - 1;
    j = std::clamp(j - 1, 0L, last - 3);
    double t = s - static_cast<double>(j);  // in [1, 2] for interior points
    // cubic Lagrange on nodes j..j+3
    double w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    double w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    double w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    double w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    return -sign * (w0 * val[j] + w1 * val[j + 1] + w2 * val[j + 2] +
                    w3 * val[j + 3]);
  }
};

const SlopeKernel& slope_kernel(int n) {
  static std::map<int, SlopeKernel> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  SlopeKernel k;
  k.lim = 1.0 / n;
  k.em = bump_exp_moment(n);
  std::size_t m = 512;
  k.h = k.lim / static_cast<double>(m);
  k.val.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    double z = static_cast<double>(i) * k.h;
    auto f = [&](double s) {
      return bump_n(n, s) * peakon_profile_derivative(z - s);
    };
    // store with flipped sign so that operator() can mirror through -sign
    k.val[i] = -(gauss_composite(f, -k.lim, z, panels_for(n, z + k.lim)) +
                 gauss_composite(f, z, k.lim, panels_for(n, k.lim - z)));
  }
  return cache.emplace(n, std::move(k)).first->second;
}

// z exp(-|z|): overlap of the profile with its own translated slope.
double profile_overlap(double z) { return z * std::exp(-std::fabs(z)); }

}  // namespace

double orthogonality_residual(const GridField& u, double shift, int n0) {
  if (n0 < 1) throw std::invalid_argument("orthogonality_residual: n0 must be >= 1");
  if (!u.contains(shift))
    throw std::domain_error("orthogonality_residual: shift outside grid");
  const SlopeKernel& k = slope_kernel(n0);
  // The kernel decays like exp(-|z|); beyond 45 the contribution is below
  // round-off for any field of interest.
  double lo = shift - 45.0, hi = shift + 45.0;
  std::size_t i0 = 0, i1 = u.size();
  if (lo > u.x_min()) i0 = static_cast<std::size_t>((lo - u.origin) / u.dx);
  if (hi < u.x_max()) i1 = static_cast<std::size_t>((hi - u.origin) / u.dx) + 2;
  i1 = std::min(i1, u.size());
  double s = 0.0;
  for (std::size_t i = i0; i < i1; ++i) s += u.u[i] * k(u.x(i) - shift);
  return s * u.dx;
}

double locate(const GridField& u, double guess, int n0) {
  double a = guess - 0.5, b = guess + 0.5;
  a = std::max(a, u.x_min());
  b = std::min(b, u.x_max());
  if (!(a < b)) throw modulation_loss("locate: bracket outside grid");
  double fa = orthogonality_residual(u, a, n0);
  double fb = orthogonality_residual(u, b, n0);
  if (fa == 0.0 && fb == 0.0)
    throw modulation_loss("locate: residual vanishes on the whole bracket");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw modulation_loss("locate: no sign change near guess");
  while (b - a > 1e-10) {
    double m = 0.5 * (a + b);
    double fm = orthogonality_residual(u, m, n0);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  // one secant polish on the final bracket
  double denom = fb - fa;
  if (denom != 0.0) {
    double r = a - fa * (b - a) / denom;
    if (r >= a && r <= b) return r;
  }
  return 0.5 * (a + b);
}

ModulationTrack track(const FieldTrajectory& traj, int n0) {
  ModulationTrack tr;
  double guess = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const GridField& u = traj.at(k);
    if (k == 0) guess = u.x(argmax_node(u));
    double root;
    try {
      root = locate(u, guess, n0);
    } catch (const modulation_loss&) {
      tr.truncated = true;
      break;
    }
    tr.times.push_back(traj.times[k]);
    tr.x.push_back(root);
    tr.lambda.push_back(u.u[argmax_node(u)]);
    tr.residual.push_back(orthogonality_residual(u, root, n0));
    guess = root;
  }
  std::size_t m = tr.times.size();
  tr.xdot.assign(m, 0.0);
  if (m >= 2) {
    tr.xdot[0] = (tr.x[1] - tr.x[0]) / (tr.times[1] - tr.times[0]);
    tr.xdot[m - 1] =
        (tr.x[m - 1] - tr.x[m - 2]) / (tr.times[m - 1] - tr.times[m - 2]);
    for (std::size_t i = 1; i + 1 < m; ++i)
      tr.xdot[i] = (tr.x[i + 1] - tr.x[i - 1]) / (tr.times[i + 1] - tr.times[i - 1]);
  }
  return tr;
}

N0Report verify_n0(int n0) {
  if (n0 < 1) throw std::invalid_argument("verify_n0: n0 must be >= 1");
  // Closed form: the pairing of the profile with the smoothed translated
  // slope reduces to the bump average of z exp(-|z|).
  double lim = 1.0 / n0;
  auto pairing = [&](double y) {
    auto f = [&](double s) { return bump_n(n0, s) * profile_overlap(y + s); };
    double kink = -y;  // the overlap has a kink where y + s = 0
    if (kink > -lim && kink < lim)
      return gauss_composite(f, -lim, kink, panels_for(n0, kink + lim)) +
             gauss_composite(f, kink, lim, panels_for(n0, lim - kink));
    return gauss_composite(f, -lim, lim, panels_for(n0, 2.0 * lim));
  };
  const int samples = 200;
  N0Report rep;
  rep.monotone = true;
  rep.min_slope = std::numeric_limits<double>::infinity();
  double prev = pairing(-0.5);
  for (int k = 1; k < samples; ++k) {
    double y = -0.5 + static_cast<double>(k) / (samples - 1);
    double cur = pairing(y);
    double slope = (cur - prev) * (samples - 1);
    if (!(slope > 0.0)) rep.monotone = false;
    rep.min_slope = std::min(rep.min_slope, slope);
    prev = cur;
  }
  rep.admissible = rep.monotone && rep.min_slope >= 0.25 * std::exp(-0.5);
  return rep;
}

int default_n0() {
  for (int n = 4; n <= 64; ++n)
    if (verify_n0(n).admissible) return n;
  throw std::runtime_error("default_n0: no admissible index up to 64");
}

void write_track_csv(const ModulationTrack& t, const std::string& path,
                     const std::vector<std::string>& header_lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_track_csv: cannot open " + path);
  for (const auto& h : header_lines) out << "# " << h << "\n";
  out << "t,x,xdot,lambda,residual\n";
  char buf[160];
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  t.times[i], t.x[i], t.xdot[i], t.lambda[i], t.residual[i]);
    out << buf;
  }
  if (t.truncated) out << "# truncated = yes\n";
}

}  // namespace chlab
