#pragma once

#include <utility>
#include <vector>

#include "chlab/grid.hpp"

namespace chlab {

/// Traveling-wave profile c*exp(-|x - center|).
struct PeakonProfile {
  double amplitude = 1.0;
  double center = 0.0;
  double operator()(double x) const;
};

/// c * exp(-|offset|).
double peakon_profile(double c, double offset);

/// Derivative of exp(-|x|): -sgn(x) exp(-|x|), with the value 0 at x = 0.
double peakon_profile_derivative(double offset);

/// Smooth transition weight (2/pi) * atan(exp(x/6)) and its derivatives.
/// order 0 -> value, 1 -> first derivative, 3 -> third derivative.
/// All three are closed forms; unsupported orders throw.
double weight_psi(double x, int order);

double psi(double x);
double psi_prime(double x);
double psi_third(double x);

/// Compactly supported bump exp(1/(x^2-1)) on (-1,1), 0 outside.
double mollifier_bump(double x);

/// Continuum normalization constant of the bump, \int_{-1}^{1} e^{1/(x^2-1)} dx.
double mollifier_bump_integral();

/// Discrete mollifier: samples of n*rho(n x) at node offsets k*dx inside
/// (-1/n, 1/n), renormalized so the weights sum exactly to 1.
struct MollifierKernel {
  int index_n = 1;
  double dx = 0.0;
  int half_width = 0;                 // weights at offsets k*dx, k in [-hw, hw]
  std::vector<double> weights;        // size 2*half_width + 1, sums to 1
  double offset(int k) const { return static_cast<double>(k) * dx; }
};

/// Throws std::invalid_argument unless n >= 1 and dx < 1/n (support resolved
/// by at least 3 nodes).
MollifierKernel mollifier_kernel(int n, double dx);

/// (rho_n * f)(z) for f(x) = sum of (mass/2) exp(-|x - pos|) atoms, evaluated
/// by Gauss-Legendre panels split at the kinks inside the mollifier support.
double mollified_atoms_value(const std::vector<std::pair<double, double>>& atoms,
                             int n, double z);

/// Discrete convolution of f with the exact Green kernel 0.5*exp(-|x-x'|) of
/// (1 - d^2/dx^2), trapezoid quadrature, evaluated by an O(N) exponential
/// recursion. Empty grid -> std::domain_error.
GridField green_convolve(const GridField& f);

/// Exact convolution of an atomic measure with the Green kernel, sampled on
/// the layout of `like`: 0.5 * sum_i mass_i exp(-|x - pos_i|).
GridField green_convolve_atoms(const std::vector<std::pair<double, double>>& atoms,
                               const GridField& like);

/// Scaled denominator of the centered second difference, 4 sinh^2(dx/2).
/// With this scaling the discrete operator annihilates exp(+-x) exactly, so
/// sampled peakon tails have vanishing discrete momentum density.
double laplacian_denominator(double dx);

/// Solves (I - D2) u = f with homogeneous Dirichlet closure, where D2 is the
/// centered second difference with the scaled denominator above. Thomas
/// algorithm; the system is strictly diagonally dominant. Grid size >= 3.
GridField helmholtz_solve(const GridField& f);

/// Forward operator (I - D2) u, same closure as helmholtz_solve.
GridField helmholtz_apply(const GridField& u);

}  // namespace chlab
