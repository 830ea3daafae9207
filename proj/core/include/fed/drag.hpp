#pragma once

#include <cstdint>
#include <vector>

#include "fed/materials.hpp"

namespace fed::drag {

/// Particle above a current-carrying plate: plate response, particle
/// response, separation, and the two temperatures entering the force.
/// t_lattice is carried for bookkeeping only; lattice fluctuations are the
/// other model and never enter this force.
struct DragConfig {
  materials::DriftParams plate;      // drift v0 along x
  materials::ParticleParams particle;
  double z0 = 1.0;
  double t_el = 0.0;
  double t_p = 0.0;
  double t_lattice = 0.0;

  void validate() const;
};

struct DragResult {
  double force = 0.0;               // F_x, along the drift
  double abs_error_estimate = 0.0;
  std::int64_t evaluations = 0;
};

/// Integrand of the drag force (without the 1/pi^2 prefactor):
///   Im alpha(w) [coth(w_-/2T_el) - coth(w/2T_p)] Im Gamma(w, kx) q kx e^{-2 q z0},
/// q = sqrt(kx^2 + ky^2), w_- = w - kx v0. A zero temperature replaces its
/// coth by the sign of the argument. Propagates PoleError at w_- = 0; the
/// force quadrature splits there instead of evaluating.
double drag_integrand(double omega, double k_x, double k_y,
                      const DragConfig& cfg);

/// F_x = (1/pi^2) int_0^inf dw int int dkx dky (integrand), hbar = 1.
/// Nested adaptive quadrature, ky innermost; k cut off where e^{-2 q z0}
/// is negligible, subdivisions seeded at the drag-window edge w = kx v0 and
/// at the surface-plasmon resonance of Im Gamma. tol is relative on F_x;
/// throws ConvergenceError when the error estimate misses it, or when more
/// than max_evaluations integrand calls would be needed (an unreachable tol
/// otherwise costs exponential work before it can be reported).
DragResult drag_force(const DragConfig& cfg, double tol,
                      std::int64_t max_evaluations = 200'000'000);

struct DragSample {
  double v0 = 0.0;
  double force = 0.0;
  double abs_error_estimate = 0.0;
};

/// Log-log slopes of |F_x(v0)| in the two regimes of kappa = v0/(omega0 z0):
/// p_small fitted over kappa < 1, p_large over kappa > 1 (expected ~ +3
/// and ~ -2 at T_el = T_p = 0). Each regime must span at least a decade;
/// an R^2 below 0.99 throws ConvergenceError.
struct DragAsymptotics {
  double p_small = 0.0;
  double p_large = 0.0;
  double r2_small = 1.0;
  double r2_large = 1.0;
  std::vector<DragSample> samples;
};

DragAsymptotics drag_asymptotics(const DragConfig& cfg_template,
                                 const std::vector<double>& v0_values,
                                 double tol, int threads = 0);

}  // namespace fed::drag
