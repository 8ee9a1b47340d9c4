#pragma once
/// Uniform one-dimensional grids over an interval or a flat torus.
///
/// A Grid carries cell centers of a uniform subdivision; all fields are fully
/// determined by the domain and the cell count.  Quadrature of cell-sampled
/// functions is the midpoint rule h * sum(values).

#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ufd/errors.hpp"

namespace ufd {

/// Periodic domain [0, length) with wrap-around metric.
struct Torus {
  double length = 1.0;
};

/// Closed interval [a, b]; solvers impose zero-flux ends.
struct Interval {
  double a = 0.0;
  double b = 1.0;
};

using Domain = std::variant<Torus, Interval>;

inline bool is_periodic(const Domain& dom) {
  return std::holds_alternative<Torus>(dom);
}

inline double domain_length(const Domain& dom) {
  if (const auto* t = std::get_if<Torus>(&dom)) return t->length;
  const auto& iv = std::get<Interval>(dom);
  return iv.b - iv.a;
}

/// Left end of the coordinate range (0 for a torus, a for an interval).
inline double domain_left(const Domain& dom) {
  if (std::holds_alternative<Torus>(dom)) return 0.0;
  return std::get<Interval>(dom).a;
}

inline double domain_right(const Domain& dom) {
  return domain_left(dom) + domain_length(dom);
}

/// Uniform grid of n cells; centers[i] = left + (i + 1/2) h.
struct Grid {
  Domain domain;
  std::size_t n = 0;
  double h = 0.0;
  std::vector<double> centers;

  bool periodic() const { return is_periodic(domain); }
  double left() const { return domain_left(domain); }
  double right() const { return domain_right(domain); }
  double length() const { return domain_length(domain); }
};

inline Grid make_grid(const Domain& dom, std::size_t n) {
  require_config(n >= 2, "grid needs at least 2 cells, got " + std::to_string(n));
  if (const auto* t = std::get_if<Torus>(&dom)) {
    require_config(t->length > 0.0, "torus length must be positive");
  } else {
    const auto& iv = std::get<Interval>(dom);
    require_config(iv.b > iv.a, "interval needs b > a");
  }
  Grid g;
  g.domain = dom;
  g.n = n;
  const double left = domain_left(dom);
  g.h = domain_length(dom) / static_cast<double>(n);
  g.centers.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.centers[i] = left + (static_cast<double>(i) + 0.5) * g.h;
  }
  return g;
}

/// Midpoint-rule integral of a cell-sampled function.
inline double integrate(const Grid& g, const std::vector<double>& cell_values) {
  require_config(cell_values.size() == g.n, "integrate: value count does not match grid");
  double acc = 0.0;
  for (double v : cell_values) acc += v;
  return g.h * acc;
}

/// Map a coordinate into the fundamental range [left, right); identity on an interval.
inline double wrap_point(const Grid& g, double x) {
  if (!g.periodic()) return x;
  const double L = g.length();
  double y = std::fmod(x, L);
  if (y < 0.0) y += L;
  return y;
}

/// Metric distance between two points (wrap-aware on the torus).
inline double point_distance(const Grid& g, double x, double y) {
  double d = std::abs(x - y);
  if (!g.periodic()) return d;
  const double L = g.length();
  d = std::fmod(d, L);
  return std::min(d, L - d);
}

/// True when two grids describe the same discretization.
inline bool same_grid(const Grid& a, const Grid& b) {
  if (a.n != b.n) return false;
  if (a.periodic() != b.periodic()) return false;
  return a.left() == b.left() && a.length() == b.length();
}

}  // namespace ufd
