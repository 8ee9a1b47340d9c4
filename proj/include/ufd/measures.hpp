#pragma once
/// Weights, densities, and the weighted functionals driving the dynamics.
///
/// A Weight stores the cell-sampled weight rho together with m = rho^(1/sigma),
/// two-sided bounds lambda <= m <= 1/lambda, and the log-concavity modulus
/// Lambda of m (0 when flat or unknown).  A Density is a nonnegative
/// cell-sampled function with its midpoint-rule mass.  The energy
/// F[f] = integral rho / f^r and the relative moments
/// G_q[f] = integral (f/m)^q m are the Lyapunov functionals of the flow.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ufd/errors.hpp"
#include "ufd/grid.hpp"

namespace ufd {

/// Exponent bundle: r > 0 is the ultrafast exponent, sigma = r + 1, and d is
/// the ambient-dimension parameter used by exponent schedules.
struct Exponents {
  double r = 1.0;
  double sigma = 2.0;
  int d = 1;
};

inline Exponents make_exponents(double r, int d = 1) {
  require_config(std::isfinite(r) && r > 0.0, "exponent r must be positive");
  require_config(d >= 1, "dimension parameter d must be >= 1");
  return Exponents{r, r + 1.0, d};
}

/// Positive weight on a grid with unit mass and pointwise bounds.
struct Weight {
  std::vector<double> rho;  ///< cell values of the weight, unit total mass
  std::vector<double> m;    ///< rho^(1/sigma), the mobility profile
  double lambda = 0.0;      ///< lower bound: lambda < min m and max m < 1/lambda
  double Lambda = 0.0;      ///< modulus of log-concavity defect of m (0 = flat/unknown)
};

/// Nonnegative cell-sampled density with its midpoint-rule mass.
struct Density {
  std::vector<double> f;
  double mass = 0.0;
};

inline Density make_density(const Grid& g, std::vector<double> values) {
  require_config(values.size() == g.n, "density size does not match grid");
  for (double v : values) {
    require_config(std::isfinite(v) && v >= 0.0, "density values must be finite and >= 0");
  }
  Density d;
  d.mass = integrate(g, values);
  d.f = std::move(values);
  return d;
}

/// Validating constructor used by loaders; prefer weight_from_rho for new weights.
inline Weight make_weight(const Grid& g, const Exponents& e, std::vector<double> rho,
                          std::vector<double> m, double lambda, double Lambda) {
  require_config(rho.size() == g.n && m.size() == g.n, "weight size does not match grid");
  double min_m = std::numeric_limits<double>::infinity();
  double max_m = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    require_config(std::isfinite(rho[i]) && rho[i] > 0.0, "weight must be strictly positive");
    require_config(std::isfinite(m[i]) && m[i] > 0.0, "mobility must be strictly positive");
    const double want = std::pow(rho[i], 1.0 / e.sigma);
    require_config(std::abs(m[i] - want) <= 1e-12 * std::max(1.0, want),
                   "mobility is not rho^(1/sigma)");
    min_m = std::min(min_m, m[i]);
    max_m = std::max(max_m, m[i]);
  }
  require_config(std::abs(integrate(g, rho) - 1.0) <= 1e-10, "weight must have unit mass");
  require_config(lambda > 0.0 && lambda < min_m, "lambda must satisfy 0 < lambda < min m");
  require_config(max_m * lambda < 1.0, "lambda must satisfy max m < 1/lambda");
  require_config(std::isfinite(Lambda) && Lambda >= 0.0, "Lambda must be >= 0");
  Weight w;
  w.rho = std::move(rho);
  w.m = std::move(m);
  w.lambda = lambda;
  w.Lambda = Lambda;
  return w;
}

/// Build a weight from raw positive cell values: renormalize to unit mass,
/// derive the mobility m = rho^(1/sigma), and pick the tightest admissible lambda.
inline Weight weight_from_rho(const Grid& g, const Exponents& e, std::vector<double> raw,
                              double Lambda = 0.0) {
  require_config(raw.size() == g.n, "weight size does not match grid");
  for (double v : raw) {
    require_config(std::isfinite(v) && v > 0.0, "weight must be strictly positive");
  }
  const double total = integrate(g, raw);
  for (double& v : raw) v /= total;
  std::vector<double> m(g.n);
  double min_m = std::numeric_limits<double>::infinity();
  double max_m = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    m[i] = std::pow(raw[i], 1.0 / e.sigma);
    min_m = std::min(min_m, m[i]);
    max_m = std::max(max_m, m[i]);
  }
  const double lambda = std::min(min_m, 1.0 / max_m) * (1.0 - 1e-9);
  return make_weight(g, e, std::move(raw), std::move(m), lambda, Lambda);
}

/// Sample a weight function at cell centers and normalize.
template <class Fn>
inline Weight weight_from_function(const Grid& g, const Exponents& e, Fn&& fn,
                                   double Lambda = 0.0) {
  std::vector<double> raw(g.n);
  for (std::size_t i = 0; i < g.n; ++i) raw[i] = fn(g.centers[i]);
  return weight_from_rho(g, e, std::move(raw), Lambda);
}

/// Stationary profile of the flow: f = total_mass * m / integral(m).
inline Density steady_state(const Grid& g, const Weight& w, double total_mass = 1.0) {
  require_config(total_mass > 0.0, "steady state needs positive mass");
  const double gamma = total_mass / integrate(g, w.m);
  std::vector<double> f(g.n);
  for (std::size_t i = 0; i < g.n; ++i) f[i] = gamma * w.m[i];
  return make_density(g, std::move(f));
}

/// Relative density u = f / m.
inline std::vector<double> to_u(const Weight& w, const Density& d) {
  require_config(w.m.size() == d.f.size(), "weight and density sizes differ");
  std::vector<double> u(d.f.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = d.f[i] / w.m[i];
  return u;
}

/// Rebuild a density from its relative form: f = m * u.
inline Density to_f(const Grid& g, const Weight& w, const std::vector<double>& u) {
  require_config(u.size() == g.n, "relative density size does not match grid");
  std::vector<double> f(g.n);
  for (std::size_t i = 0; i < g.n; ++i) f[i] = w.m[i] * u[i];
  return make_density(g, std::move(f));
}

/// Weighted energy F[f] = integral rho / f^r; +infinity when f vanishes somewhere.
inline double functional_F(const Grid& g, const Exponents& e, const Weight& w,
                           const Density& dens) {
  require_config(dens.f.size() == g.n && w.rho.size() == g.n,
                 "functional_F: sizes do not match grid");
  double acc = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    if (dens.f[i] <= 0.0) return std::numeric_limits<double>::infinity();
    acc += w.rho[i] * std::pow(dens.f[i], -e.r);
  }
  return g.h * acc;
}

/// Relative moment G_q[f] = integral (f/m)^q m, defined for q < 0 or q > 1.
/// For q < 0 a vanishing cell makes the moment +infinity.
inline double functional_Gq(const Grid& g, const Weight& w, const Density& dens, double q) {
  require_config(dens.f.size() == g.n && w.m.size() == g.n,
                 "functional_Gq: sizes do not match grid");
  require_config(std::isfinite(q) && (q < 0.0 || q > 1.0),
                 "functional_Gq: exponent must satisfy q < 0 or q > 1");
  double acc = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double u = dens.f[i] / w.m[i];
    if (u <= 0.0) {
      if (q < 0.0) return std::numeric_limits<double>::infinity();
      continue;  // 0^q = 0 for q > 1
    }
    acc += std::pow(u, q) * w.m[i];
  }
  return g.h * acc;
}

/// Raw weighted moment integral v^q m (no root); q = 0 unsupported.
inline double weighted_Lq_moment(const Grid& g, const Weight& w,
                                 const std::vector<double>& values, double q) {
  require_config(values.size() == g.n && w.m.size() == g.n,
                 "weighted moment: sizes do not match grid");
  require_config(std::isfinite(q) && q != 0.0, "weighted moment: q = 0 unsupported");
  double acc = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double v = values[i];
    if (q < 0.0) {
      require_config(v >= 0.0, "weighted moment: negative exponents need values >= 0");
      if (v == 0.0) return std::numeric_limits<double>::infinity();
      acc += std::pow(v, q) * w.m[i];
    } else {
      acc += std::pow(std::abs(v), q) * w.m[i];
    }
  }
  return g.h * acc;
}

/// Weighted Lq norm (integral |v|^q m)^(1/q); q may be negative (values >= 0), q = 0 unsupported.
inline double weighted_Lq_norm(const Grid& g, const Weight& w,
                               const std::vector<double>& values, double q) {
  const double moment = weighted_Lq_moment(g, w, values, q);
  if (std::isinf(moment) && q < 0.0) return 0.0;  // essential infimum collapsed to zero
  return std::pow(moment, 1.0 / q);
}

/// Weighted total variation: sum over faces of m_face * |jump|, with the
/// face mobility the arithmetic mean of the neighbours.  The torus includes
/// the wrap-around face; an interval has no boundary faces.
inline double weighted_BV_norm(const Grid& g, const Weight& w,
                               const std::vector<double>& values) {
  require_config(values.size() == g.n && w.m.size() == g.n,
                 "weighted BV: sizes do not match grid");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < g.n; ++i) {
    acc += 0.5 * (w.m[i] + w.m[i + 1]) * std::abs(values[i + 1] - values[i]);
  }
  if (g.periodic()) {
    acc += 0.5 * (w.m[g.n - 1] + w.m[0]) * std::abs(values[0] - values[g.n - 1]);
  }
  return acc;
}

}  // namespace ufd
