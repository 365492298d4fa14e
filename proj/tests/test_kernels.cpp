#include <cmath>

#include "chlab/kernels.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chlab;

TEST_CASE("peakon profile closed forms") {
  CHECK(peakon_profile(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(peakon_profile(2.0, std::log(2.0)) == doctest::Approx(1.0));
  for (double x : {0.3, 1.7, 4.0})
    CHECK(peakon_profile(3.0, -x) == doctest::Approx(peakon_profile(3.0, x)));
  CHECK(peakon_profile_derivative(0.0) == 0.0);
  CHECK(peakon_profile_derivative(1.0) == doctest::Approx(-std::exp(-1.0)));
  CHECK(peakon_profile_derivative(-1.0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("transition weight and its derivatives") {
  CHECK(psi(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  // first derivative value at 0, against the closed form 1/(6 pi)
  CHECK(psi_prime(0.0) == doctest::Approx(1.0 / (6.0 * M_PI)).epsilon(1e-14));
  // cross-check the analytic derivatives with central differences
  for (double x : {-7.0, -1.3, 0.0, 0.9, 4.2}) {
    double h = 1e-5;
    double fd1 = (psi(x + h) - psi(x - h)) / (2.0 * h);
    CHECK(psi_prime(x) == doctest::Approx(fd1).epsilon(1e-8));
    double fd3 = (psi_prime(x + h) - 2.0 * psi_prime(x) + psi_prime(x - h)) / (h * h);
    // second difference of psi' approximates psi'''
    CHECK(psi_third(x) == doctest::Approx(fd3).epsilon(1e-4));
  }
  CHECK_THROWS(weight_psi(0.0, 2));

  // third-derivative bound and reflection identity on the wide sample grid
  double worst_bound = -1.0, worst_reflect = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double x = -60.0 + 120.0 * i / 9999.0;
    worst_bound = std::max(worst_bound,
                           std::fabs(psi_third(x)) - 0.5 * psi_prime(x));
    worst_reflect = std::max(worst_reflect, std::fabs(psi(-x) - (1.0 - psi(x))));
    CHECK(psi(x) > 0.0);
    CHECK(psi(x) < 1.0);
  }
  CHECK(worst_bound <= 1e-14);
  CHECK(worst_reflect <= 1e-14);
}

TEST_CASE("left tail of the weight decays like exp(x/6)") {
  double C = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double x = -60.0 + 60.0 * i / 9999.0;  // x <= 0
    C = std::max(C, (psi(x) + psi_prime(x)) / std::exp(x / 6.0));
  }
  CHECK(C < 2.0);
}

TEST_CASE("bump normalization against quadrature") {
  double ref = oracle::integrate([](double x) { return x * x >= 1.0 ? 0.0
                                      : std::exp(1.0 / (x * x - 1.0)); },
                                 -1.0, 1.0, 1e-14);
  CHECK(ref == doctest::Approx(0.4440).epsilon(1e-3));
  CHECK(mollifier_bump_integral() == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("mollifier kernel weights") {
  MollifierKernel k = mollifier_kernel(4, 0.02);
  double sum = 0.0;
  for (double w : k.weights) {
    CHECK(w >= 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  // even symmetry
  for (int j = 0; j <= k.half_width; ++j)
    CHECK(k.weights[k.half_width - j] ==
          doctest::Approx(k.weights[k.half_width + j]));
  // support confined to (-1/n, 1/n)
  CHECK(k.half_width * k.dx < 1.0 / 4.0);
  CHECK_THROWS(mollifier_kernel(4, 0.3));
  CHECK_THROWS(mollifier_kernel(0, 0.01));
}

TEST_CASE("smoothed atomic field matches direct quadrature") {
  std::vector<std::pair<double, double>> atoms = {{0.0, 2.0}};
  int n = 3;
  for (double z : {-0.4, 0.0, 0.1, 1.2}) {
    double norm = mollifier_bump_integral();
    auto f = [&](double s) {
      double rho = s * s * n * n >= 1.0 ? 0.0 : std::exp(1.0 / (n * n * s * s - 1.0));
      return n * rho / norm * std::exp(-std::fabs(z - s));
    };
    double ref = oracle::integrate(f, -1.0 / n, 1.0 / n, 1e-13);
    CHECK(mollified_atoms_value(atoms, n, z) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("green convolution against the analytic kernel") {
  GridField f = make_grid(-40.0, 0.01, 8001);
  SUBCASE("zero input") {
    GridField g = green_convolve(f);
    for (double v : g.u) CHECK(v == 0.0);
  }
  SUBCASE("unit mass atom approximation") {
    // 2*delta spread over one node of the trapezoid rule
    std::size_t mid = f.size() / 2;
    f.u[mid] = 2.0 / f.dx;
    GridField g = green_convolve(f);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::fabs(g.x(i)) > 30.0) continue;  // tail below the check floor
      worst = std::max(worst, std::fabs(g.u[i] - std::exp(-std::fabs(g.x(i)))));
    }
    CHECK(worst <= 5.0 * f.dx * f.dx + 1e-6);
  }
  SUBCASE("constant input fixed point") {
    for (double& v : f.u) v = 1.0;
    GridField g = green_convolve(f);
    std::size_t mid = f.size() / 2;
    CHECK(g.u[mid] == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("green convolution agrees with the tridiagonal solve") {
  GridField f = make_grid(-30.0, 0.05, 1201);
  auto r = oracle::rng(7);
  std::uniform_real_distribution<double> amp(0.2, 1.0);
  for (int rep = 0; rep < 3; ++rep) {
    double a1 = amp(r), a2 = amp(r), s = amp(r) * 3.0 + 1.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      double x = f.x(i);
      f.u[i] = a1 * std::exp(-x * x) + a2 * std::exp(-(x - s) * (x - s) / 2.0);
    }
    GridField a = green_convolve(f);
    GridField b = helmholtz_solve(f);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      num += (a.u[i] - b.u[i]) * (a.u[i] - b.u[i]);
      den += b.u[i] * b.u[i];
    }
    CHECK(std::sqrt(num / den) <= 5.0 * f.dx * f.dx + 1e-10);
  }
}

TEST_CASE("forward and inverse discrete operators round-trip") {
  GridField f = make_grid(-20.0, 0.02, 2001);
  for (std::size_t i = 0; i < f.size(); ++i)
    f.u[i] = std::exp(-f.x(i) * f.x(i) / 4.0);
  GridField u = helmholtz_solve(f);
  GridField back = helmholtz_apply(u);
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(back.u[i] == doctest::Approx(f.u[i]).epsilon(1e-10));
}

TEST_CASE("scaled second difference annihilates sampled exponentials") {
  // the sinh-scaled denominator makes exp(+-x) discrete eigenfunctions, so a
  // sampled peakon tail carries exactly zero discrete momentum
  GridField u = make_grid(-20.0, 0.02, 2001);
  for (std::size_t i = 0; i < u.size(); ++i)
    u.u[i] = std::exp(-std::fabs(u.x(i)));
  GridField y = helmholtz_apply(u);
  std::size_t mid = u.size() / 2;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (i >= mid - 1 && i <= mid + 1) continue;  // crest nodes hold the mass
    // the 1/dx^2 in the operator amplifies round-off above 1e-12
    CHECK(std::fabs(y.u[i]) <= 1e-11);
  }
  CHECK(y.u[mid] > 0.0);
}
