#pragma once
/// Direct solvers for tridiagonal and cyclic-tridiagonal systems.
///
/// Both Newton loops in this library (transport steps and the implicit
/// integrator) produce diagonally dominant systems with this structure, so a
/// pivot-free Thomas sweep is adequate; a vanishing pivot is reported as a
/// solver failure rather than patched.

#include <cmath>
#include <cstddef>
#include <vector>

#include "ufd/errors.hpp"

namespace ufd {

/// Solve T x = rhs for tridiagonal T via the Thomas algorithm.
///
/// `lower[i]` sits at row i+1, column i; `upper[i]` at row i, column i+1.
/// Sizes: diag n, lower and upper n-1, rhs n.
inline std::vector<double> solve_tridiagonal(const std::vector<double>& lower,
                                             std::vector<double> diag,
                                             const std::vector<double>& upper,
                                             std::vector<double> rhs) {
  const std::size_t n = diag.size();
  require_config(n >= 1, "tridiagonal solve: empty system");
  require_config(lower.size() == n - 1 && upper.size() == n - 1 && rhs.size() == n,
                 "tridiagonal solve: band sizes do not match");
  for (std::size_t i = 1; i < n; ++i) {
    const double piv = diag[i - 1];
    if (piv == 0.0 || !std::isfinite(piv)) fail_solver("tridiagonal solve: pivot vanished");
    const double w = lower[i - 1] / piv;
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0 || !std::isfinite(diag[n - 1])) {
    fail_solver("tridiagonal solve: pivot vanished");
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
  }
  return rhs;
}

/// Solve the cyclic variant with corner entries A[0][n-1] and A[n-1][0]
/// via the Sherman-Morrison rank-one update of a plain tridiagonal system.
inline std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& lower,
                                                    std::vector<double> diag,
                                                    const std::vector<double>& upper,
                                                    double corner_top_right,
                                                    double corner_bottom_left,
                                                    std::vector<double> rhs) {
  const std::size_t n = diag.size();
  require_config(n >= 3, "cyclic tridiagonal solve: need at least 3 unknowns");
  require_config(lower.size() == n - 1 && upper.size() == n - 1 && rhs.size() == n,
                 "cyclic tridiagonal solve: band sizes do not match");
  const double alpha = corner_top_right;
  const double beta = corner_bottom_left;
  const double gamma = -diag[0];
  if (gamma == 0.0) fail_solver("cyclic tridiagonal solve: zero leading diagonal");
  diag[0] -= gamma;
  diag[n - 1] -= alpha * beta / gamma;

  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = beta;

  std::vector<double> y = solve_tridiagonal(lower, diag, upper, std::move(rhs));
  std::vector<double> z = solve_tridiagonal(lower, diag, upper, std::move(u));

  const double vy = y[0] + (alpha / gamma) * y[n - 1];
  const double vz = 1.0 + z[0] + (alpha / gamma) * z[n - 1];
  if (vz == 0.0 || !std::isfinite(vz)) fail_solver("cyclic tridiagonal solve: singular update");
  const double factor = vy / vz;
  for (std::size_t i = 0; i < n; ++i) y[i] -= factor * z[i];
  return y;
}

}  // namespace ufd
