#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace chlab {

/// Uniformly sampled field on [origin, origin + (n-1)*dx].
struct GridField {
  double origin = 0.0;
  double dx = 1.0;
  std::vector<double> u;

  std::size_t size() const { return u.size(); }
  double x(std::size_t i) const { return origin + static_cast<double>(i) * dx; }
  double x_min() const { return origin; }
  double x_max() const { return x(size() - 1); }
  bool contains(double xq) const { return xq >= x_min() && xq <= x_max(); }

  /// Linear interpolation; xq must lie inside the grid.
  double value_at(double xq) const;
};

/// Zero-filled field with the given layout.
GridField make_grid(double origin, double dx, std::size_t n);

/// Enforces the GridField invariants: >= 16 nodes, finite samples, and
/// boundary samples <= 1e-10 * max|u| (fields are expected to decay).
/// Throws std::invalid_argument on violation.
void validate_field(const GridField& f);

/// Checks layout compatibility of two fields (same origin, dx, size).
bool same_layout(const GridField& a, const GridField& b);

double max_abs(const GridField& f);

/// Centered first derivative, 2-node one-sided at the ends.
std::vector<double> centered_derivative(const GridField& f);

/// One-sided 2-node slopes: (u_i - u_{i-1})/dx and (u_{i+1} - u_i)/dx.
double backward_slope(const GridField& f, std::size_t i);
double forward_slope(const GridField& f, std::size_t i);

/// Trapezoid quadrature of the samples.
double trapezoid(const GridField& f);

/// Node index of the global maximum.
std::size_t argmax_node(const GridField& f);

/// CSV with header `x,u`, 17 significant digits, one node per row.
/// `header_lines` are emitted first, each prefixed with "# ".
void write_field_csv(const GridField& f, const std::string& path,
                     const std::vector<std::string>& header_lines = {});
GridField read_field_csv(const std::string& path);

}  // namespace chlab
