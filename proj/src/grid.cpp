#include "chlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chlab {

double GridField::value_at(double xq) const {
  if (u.empty()) throw std::domain_error("value_at: empty grid");
  if (!contains(xq)) throw std::domain_error("value_at: point outside grid");
  double s = (xq - origin) / dx;
  auto i = static_cast<std::size_t>(s);
  if (i + 1 >= size()) return u.back();
  double w = s - static_cast<double>(i);
  return (1.0 - w) * u[i] + w * u[i + 1];
}

GridField make_grid(double origin, double dx, std::size_t n) {
  if (dx <= 0.0) throw std::invalid_argument("make_grid: dx must be positive");
  GridField f;
  f.origin = origin;
  f.dx = dx;
  f.u.assign(n, 0.0);
  return f;
}

void validate_field(const GridField& f) {
  if (f.size() < 16) throw std::invalid_argument("GridField: fewer than 16 nodes");
  if (f.dx <= 0.0) throw std::invalid_argument("GridField: nonpositive spacing");
  double m = 0.0;
  for (double v : f.u) {
    if (!std::isfinite(v)) throw std::invalid_argument("GridField: non-finite sample");
    m = std::max(m, std::fabs(v));
  }
  double edge = std::max(std::fabs(f.u.front()), std::fabs(f.u.back()));
  if (edge > 1e-10 * m)
    throw std::invalid_argument("GridField: boundary samples do not decay");
}

bool same_layout(const GridField& a, const GridField& b) {
  return a.size() == b.size() && a.dx == b.dx && a.origin == b.origin;
}

double max_abs(const GridField& f) {
  double m = 0.0;
  for (double v : f.u) m = std::max(m, std::fabs(v));
  return m;
}

std::vector<double> centered_derivative(const GridField& f) {
  std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (f.u[1] - f.u[0]) / f.dx;
  d[n - 1] = (f.u[n - 1] - f.u[n - 2]) / f.dx;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f.u[i + 1] - f.u[i - 1]) / (2.0 * f.dx);
  return d;
}

double backward_slope(const GridField& f, std::size_t i) {
  if (i == 0 || i >= f.size()) throw std::domain_error("backward_slope: index out of range");
  return (f.u[i] - f.u[i - 1]) / f.dx;
}

double forward_slope(const GridField& f, std::size_t i) {
  if (i + 1 >= f.size()) throw std::domain_error("forward_slope: index out of range");
  return (f.u[i + 1] - f.u[i]) / f.dx;
}

double trapezoid(const GridField& f) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.u.front() + f.u.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f.u[i];
  return s * f.dx;
}

std::size_t argmax_node(const GridField& f) {
  if (f.u.empty()) throw std::domain_error("argmax_node: empty grid");
  return static_cast<std::size_t>(
      std::max_element(f.u.begin(), f.u.end()) - f.u.begin());
}

void write_field_csv(const GridField& f, const std::string& path,
                     const std::vector<std::string>& header_lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_field_csv: cannot open " + path);
  for (const auto& h : header_lines) out << "# " << h << "\n";
  out << "x,u\n";
  char buf[96];
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.x(i), f.u[i]);
    out << buf;
  }
}

GridField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_field_csv: cannot open " + path);
  std::string line;
  std::vector<double> xs, us;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    xs.push_back(std::stod(line.substr(0, comma)));
    us.push_back(std::stod(line.substr(comma + 1)));
  }
  if (xs.size() < 2) throw std::runtime_error("read_field_csv: too few rows in " + path);
  GridField f;
  f.origin = xs.front();
  f.dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  f.u = std::move(us);
  return f;
}

}  // namespace chlab
