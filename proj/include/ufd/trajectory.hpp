#pragma once
/// Time-discrete trajectories and their per-step diagnostics, shared by the
/// proximal (mass-coordinate) solver and the finite-volume integrator.

#include <cstddef>
#include <string>
#include <vector>

#include "ufd/errors.hpp"
#include "ufd/grid.hpp"
#include "ufd/measures.hpp"

namespace ufd {

/// Scalar functionals recorded at one time level.
struct StepDiagnostics {
  std::size_t step = 0;
  double t = 0.0;
  double F_rho = 0.0;    ///< weighted energy of the current density
  double w2_step = 0.0;  ///< transport distance covered by the last step (0 at step 0)
  double bv_u = 0.0;     ///< weighted total variation of u = f/m
  double min_u = 0.0;
  double max_u = 0.0;
  std::vector<double> gq;  ///< relative moments for each tracked exponent
};

/// Recorded evolution: diagnostics at every step, density snapshots at a stride.
struct Trajectory {
  std::vector<double> gq_list;  ///< tracked moment exponents (each < 0 or > 1)
  std::vector<StepDiagnostics> diagnostics;
  std::vector<std::size_t> snapshot_steps;
  std::vector<double> snapshot_times;
  std::vector<Density> snapshots;
  bool completed = true;        ///< false when a step failed and the run stopped early
  std::string failure_message;  ///< reason for an early stop
};

/// Options shared by the trajectory drivers.
struct RunOptions {
  std::vector<double> gq_list;  ///< moments to track (validated against q in (0,1])
  std::size_t stride = 1;       ///< snapshot every k-th step (first and last always kept)
};

inline StepDiagnostics measure_state(const Grid& g, const Exponents& e, const Weight& w,
                                     const Density& dens, std::size_t step, double t,
                                     double w2_step, const std::vector<double>& gq_list) {
  StepDiagnostics d;
  d.step = step;
  d.t = t;
  d.F_rho = functional_F(g, e, w, dens);
  d.w2_step = w2_step;
  const std::vector<double> u = to_u(w, dens);
  d.bv_u = weighted_BV_norm(g, w, u);
  d.min_u = u[0];
  d.max_u = u[0];
  for (double v : u) {
    d.min_u = std::min(d.min_u, v);
    d.max_u = std::max(d.max_u, v);
  }
  d.gq.reserve(gq_list.size());
  for (double q : gq_list) d.gq.push_back(functional_Gq(g, w, dens, q));
  return d;
}

/// Record a snapshot if due at this step (first/last steps are always due).
inline void record_snapshot(Trajectory& tr, const Density& dens, std::size_t step, double t,
                            std::size_t stride, bool force) {
  if (!force && stride > 0 && step % stride != 0) return;
  if (!tr.snapshot_steps.empty() && tr.snapshot_steps.back() == step) return;
  tr.snapshot_steps.push_back(step);
  tr.snapshot_times.push_back(t);
  tr.snapshots.push_back(dens);
}

}  // namespace ufd
