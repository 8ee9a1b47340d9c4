#pragma once
/// Exact one-dimensional optimal transport between cell-sampled densities.
///
/// A cellwise-constant density has a piecewise-linear inverse CDF whose
/// breakpoints are the cumulative cell masses (repeated breakpoints encode
/// empty cells).  Squared quadratic-cost distances are therefore exact
/// piecewise-quadratic integrals over the merged breakpoints of the two maps.
/// On the torus the coupling family is indexed by a mass offset of the second
/// map along the universal cover; the offset cost is convex and is minimized
/// by a golden-section search.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ufd/errors.hpp"
#include "ufd/grid.hpp"
#include "ufd/measures.hpp"

namespace ufd {

/// Monotone rearrangement sampled at equispaced masses s_nodes (size N+1,
/// from 0 to the total mass).  On a torus, X is the lift from the cut at the
/// coordinate origin, so X.back() = X.front() + L.
struct QuantileMap {
  std::vector<double> s_nodes;
  std::vector<double> X;
  double mass = 0.0;
};

/// Outcome of a distance computation between two densities on one grid.
/// map_T samples the optimal map at cell centers of the source; the potential
/// satisfies phi' = x - T(x) up to discretization (on the torus a linear
/// drift is removed so that phi is single-valued).
struct TransportResult {
  double w2 = 0.0;
  std::vector<double> map_T;
  std::vector<double> potential_phi;
  double shift = 0.0;  ///< torus: position of the transport cut in the target
};

namespace detail {

/// Piecewise-linear inverse CDF; repeated s-breakpoints encode jumps.
struct InverseCdf {
  std::vector<double> s;      ///< n+1 cumulative masses, s.front() = 0
  std::vector<double> x;      ///< n+1 cell edges from the coordinate origin
  double mass = 0.0;          ///< total mass (= s.back())
  double space_length = 0.0;  ///< spatial period for the torus lift
  bool periodic = false;
};

inline InverseCdf inverse_cdf(const Grid& g, const Density& d) {
  require_config(d.f.size() == g.n, "transport: density size does not match grid");
  InverseCdf ic;
  ic.s.resize(g.n + 1);
  ic.x.resize(g.n + 1);
  ic.s[0] = 0.0;
  double run = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    run += d.f[i];
    ic.s[i + 1] = g.h * run;
    ic.x[i] = g.left() + static_cast<double>(i) * g.h;
  }
  ic.x[g.n] = g.left() + g.length();
  ic.mass = ic.s.back();
  require_config(ic.mass > 0.0, "transport: density must carry positive mass");
  ic.space_length = g.length();
  ic.periodic = g.periodic();
  return ic;
}

/// Evaluate the map at parameter t on the cover (right limit at jumps).
inline double icdf_eval_cover(const InverseCdf& ic, double t) {
  double offset = 0.0;
  if (ic.periodic) {
    const double k = std::floor(t / ic.mass);
    t -= k * ic.mass;
    offset = k * ic.space_length;
  } else {
    t = std::clamp(t, 0.0, ic.mass);
  }
  std::size_t j = static_cast<std::size_t>(
      std::upper_bound(ic.s.begin(), ic.s.end(), t) - ic.s.begin());
  if (j == 0) j = 1;
  if (j >= ic.s.size()) j = ic.s.size() - 1;
  const std::size_t k2 = j - 1;
  const double ds = ic.s[j] - ic.s[k2];
  if (ds <= 0.0) return ic.x[k2] + offset;
  const double w = (t - ic.s[k2]) / ds;
  return ic.x[k2] + w * (ic.x[j] - ic.x[k2]) + offset;
}

/// Linear segment of the cover containing a given parameter.
struct Segment {
  double s0 = 0.0;
  double x0 = 0.0;
  double slope = 0.0;
  double eval(double t) const { return x0 + slope * (t - s0); }
};

inline Segment locate_segment(const InverseCdf& ic, double t) {
  double offset = 0.0;
  double base = t;
  if (ic.periodic) {
    const double k = std::floor(t / ic.mass);
    base = t - k * ic.mass;
    offset = k * ic.space_length;
    // re-express the segment in cover coordinates
    std::size_t j = static_cast<std::size_t>(
        std::upper_bound(ic.s.begin(), ic.s.end(), base) - ic.s.begin());
    if (j == 0) j = 1;
    if (j >= ic.s.size()) j = ic.s.size() - 1;
    const std::size_t k2 = j - 1;
    const double ds = ic.s[j] - ic.s[k2];
    const double slope = ds > 0.0 ? (ic.x[j] - ic.x[k2]) / ds : 0.0;
    return Segment{ic.s[k2] + k * ic.mass, ic.x[k2] + offset, slope};
  }
  base = std::clamp(base, 0.0, ic.mass);
  std::size_t j = static_cast<std::size_t>(
      std::upper_bound(ic.s.begin(), ic.s.end(), base) - ic.s.begin());
  if (j == 0) j = 1;
  if (j >= ic.s.size()) j = ic.s.size() - 1;
  const std::size_t k2 = j - 1;
  const double ds = ic.s[j] - ic.s[k2];
  const double slope = ds > 0.0 ? (ic.x[j] - ic.x[k2]) / ds : 0.0;
  return Segment{ic.s[k2], ic.x[k2], slope};
}

/// Exact integral of (X_F(s) - X_G(s + delta))^2 over s in [0, mass].
/// Both maps must share the same total mass.
inline double cost_exact(const InverseCdf& F, const InverseCdf& G, double delta) {
  const double M = F.mass;
  std::vector<double> b;
  b.reserve(F.s.size() + G.s.size() + 2);
  b.insert(b.end(), F.s.begin(), F.s.end());
  for (double sg : G.s) {
    double t = sg - delta;
    if (F.periodic) {
      t -= M * std::floor(t / M);
      if (t > 0.0 && t < M) b.push_back(t);
    } else if (t > 0.0 && t < M) {
      b.push_back(t);
    }
  }
  std::sort(b.begin(), b.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double a = b[i];
    const double c = b[i + 1];
    const double w = c - a;
    if (!(w > 0.0)) continue;
    const double mid = 0.5 * (a + c);
    const Segment sf = locate_segment(F, mid);
    const Segment sg = locate_segment(G, mid + delta);
    const double d0 = sf.eval(a) - sg.eval(a + delta);
    const double d1 = sf.eval(c) - sg.eval(c + delta);
    acc += w * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0;
  }
  return acc;
}

/// Golden-section minimization of the convex offset cost; expands the bracket
/// if the minimizer lands on its edge.
inline void minimize_shift(const InverseCdf& F, const InverseCdf& G, double& delta_out,
                           double& cost_out) {
  const double M = F.mass;
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  const double tol = 1e-10 * std::max(1.0, M);
  double lo = -M;
  double hi = M;
  for (int expand = 0; expand < 6; ++expand) {
    double a = lo, b = hi;
    double c1 = b - invphi * (b - a);
    double c2 = a + invphi * (b - a);
    double f1 = cost_exact(F, G, c1);
    double f2 = cost_exact(F, G, c2);
    while (b - a > tol) {
      if (f1 <= f2) {
        b = c2;
        c2 = c1;
        f2 = f1;
        c1 = b - invphi * (b - a);
        f1 = cost_exact(F, G, c1);
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + invphi * (b - a);
        f2 = cost_exact(F, G, c2);
      }
    }
    const double dstar = 0.5 * (a + b);
    if (dstar - lo < 2.0 * tol) {
      lo -= M;
      continue;
    }
    if (hi - dstar < 2.0 * tol) {
      hi += M;
      continue;
    }
    delta_out = dstar;
    cost_out = cost_exact(F, G, dstar);
    return;
  }
  delta_out = 0.5 * (lo + hi);
  cost_out = cost_exact(F, G, delta_out);
}

inline void check_pair(const Grid& g, const Density& from, const Density& to) {
  require_config(from.f.size() == g.n && to.f.size() == g.n,
                 "transport: density sizes do not match grid");
  require_config(std::abs(from.mass - to.mass) <= 1e-10 * std::max(1.0, from.mass),
                 "transport: total masses must agree");
}

}  // namespace detail

/// Equispaced quantile samples of a strictly positive density.
inline QuantileMap quantiles(const Grid& g, const Density& d, std::size_t n_quantiles) {
  require_config(n_quantiles >= 1, "quantiles: need at least one panel");
  require_config(d.f.size() == g.n, "quantiles: density size does not match grid");
  for (double v : d.f) {
    require_config(v > 0.0, "quantiles: density must be strictly positive");
  }
  const detail::InverseCdf ic = detail::inverse_cdf(g, d);
  QuantileMap qm;
  qm.mass = ic.mass;
  qm.s_nodes.resize(n_quantiles + 1);
  qm.X.resize(n_quantiles + 1);
  for (std::size_t j = 0; j <= n_quantiles; ++j) {
    const double s = ic.mass * static_cast<double>(j) / static_cast<double>(n_quantiles);
    qm.s_nodes[j] = s;
    qm.X[j] = detail::icdf_eval_cover(ic, s);
  }
  return qm;
}

/// Quadratic-cost distance between equal-mass densities on an interval grid.
inline TransportResult w2_interval(const Grid& g, const Density& from, const Density& to) {
  require_config(!g.periodic(), "w2_interval: grid must be an interval");
  detail::check_pair(g, from, to);
  detail::InverseCdf F = detail::inverse_cdf(g, from);
  detail::InverseCdf G = detail::inverse_cdf(g, to);
  const double scale = F.mass / G.mass;
  for (double& s : G.s) s *= scale;
  G.mass = F.mass;
  TransportResult r;
  r.w2 = std::sqrt(std::max(0.0, detail::cost_exact(F, G, 0.0)));
  r.shift = 0.0;
  r.map_T.resize(g.n);
  r.potential_phi.resize(g.n);
  std::vector<double> psi(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double s_mid = 0.5 * (F.s[i] + F.s[i + 1]);
    r.map_T[i] = detail::icdf_eval_cover(G, s_mid);
    psi[i] = g.centers[i] - r.map_T[i];
  }
  r.potential_phi[0] = 0.0;
  for (std::size_t i = 0; i + 1 < g.n; ++i) {
    r.potential_phi[i + 1] = r.potential_phi[i] + 0.5 * g.h * (psi[i] + psi[i + 1]);
  }
  return r;
}

/// Exact offset cost used by the torus distance; exposed for diagnostics.
inline double w2_shift_cost(const Grid& g, const Density& from, const Density& to,
                            double delta) {
  require_config(g.periodic(), "w2_shift_cost: grid must be a torus");
  detail::check_pair(g, from, to);
  detail::InverseCdf F = detail::inverse_cdf(g, from);
  detail::InverseCdf G = detail::inverse_cdf(g, to);
  const double scale = F.mass / G.mass;
  for (double& s : G.s) s *= scale;
  G.mass = F.mass;
  return detail::cost_exact(F, G, delta);
}

/// Quadratic-cost distance between equal-mass densities on a torus grid.
inline TransportResult w2_torus(const Grid& g, const Density& from, const Density& to) {
  require_config(g.periodic(), "w2_torus: grid must be a torus");
  detail::check_pair(g, from, to);
  detail::InverseCdf F = detail::inverse_cdf(g, from);
  detail::InverseCdf G = detail::inverse_cdf(g, to);
  const double scale = F.mass / G.mass;
  for (double& s : G.s) s *= scale;
  G.mass = F.mass;
  double delta = 0.0, cost = 0.0;
  detail::minimize_shift(F, G, delta, cost);
  TransportResult r;
  r.w2 = std::sqrt(std::max(0.0, cost));
  r.shift = wrap_point(g, detail::icdf_eval_cover(G, delta));
  r.map_T.resize(g.n);
  r.potential_phi.resize(g.n);
  std::vector<double> zeta(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double s_mid = 0.5 * (F.s[i] + F.s[i + 1]);
    const double target = detail::icdf_eval_cover(G, s_mid + delta);
    r.map_T[i] = wrap_point(g, target);
    zeta[i] = g.centers[i] - target;
  }
  r.potential_phi[0] = 0.0;
  for (std::size_t i = 0; i + 1 < g.n; ++i) {
    r.potential_phi[i + 1] = r.potential_phi[i] + 0.5 * g.h * (zeta[i] + zeta[i + 1]);
  }
  // remove the winding drift so the potential is single-valued on the circle
  double drift = 0.0;
  for (double z : zeta) drift += g.h * z;
  for (std::size_t i = 0; i < g.n; ++i) {
    r.potential_phi[i] -= (drift / g.length()) * (g.centers[i] - g.centers[0]);
  }
  return r;
}

/// Distance dispatcher picking the metric from the grid's domain.
inline TransportResult w2_distance(const Grid& g, const Density& from, const Density& to) {
  return g.periodic() ? w2_torus(g, from, to) : w2_interval(g, from, to);
}

/// Exhaustive assignment distance between small equal-weight atom families;
/// reference oracle for the quantile-based distances.
inline double w2_bruteforce(const Grid& g, std::vector<double> atoms_from,
                            std::vector<double> atoms_to, double total_mass = 1.0) {
  const std::size_t k = atoms_from.size();
  require_config(k >= 1 && k <= 8, "w2_bruteforce: supports 1..8 atoms");
  require_config(atoms_to.size() == k, "w2_bruteforce: atom counts must agree");
  require_config(total_mass > 0.0, "w2_bruteforce: mass must be positive");
  for (double& x : atoms_from) {
    if (g.periodic()) {
      x = wrap_point(g, x);
    } else {
      require_config(x >= g.left() && x <= g.right(), "w2_bruteforce: atom outside domain");
    }
  }
  for (double& y : atoms_to) {
    if (g.periodic()) {
      y = wrap_point(g, y);
    } else {
      require_config(y >= g.left() && y <= g.right(), "w2_bruteforce: atom outside domain");
    }
  }
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double d = point_distance(g, atoms_from[i], atoms_to[perm[i]]);
      cost += d * d;
    }
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::sqrt(best * total_mass / static_cast<double>(k));
}

}  // namespace ufd
