#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace fed::friction {

using Complex = std::complex<double>;

/// Two plasmonic half-spaces a distance d apart, sheared along x with
/// relative speed v. omega_sp is the surface-plasmon frequency omega_p/sqrt(2).
struct ShearSystem {
  double omega_sp = 1.0;
  double d = 1.0;
  double v = 0.0;

  void validate() const;
};

struct WaveVector {
  double kx = 0.0;
  double ky = 0.0;

  double k_par() const;            // |k|
  double coupling(double d) const;  // e^{-|k| d}
};

/// Coupled-mode matrix M of the sheared pair in the co-moving frames,
/// basis (a1, a2, a1^+, a2^+): diagonal carries omega_sp -/+ k.v/2 and its
/// negatives, off-diagonals the inter-surface coupling
/// g = (omega_sp/2) e^{-|k| d}.
Eigen::Matrix4cd mode_matrix(const ShearSystem& sys, const WaveVector& k);

/// The four eigenvalues
///   +-sqrt(omega_sp^2 + (k.v/2)^2 +- omega_sp^2 sqrt(e^{-2|k|d} + (k.v/omega_sp)^2))
/// in the order {w+, w-, -w-, -w+}; principal branch when the inner radicand
/// turns negative (w- then sits on the positive imaginary axis).
std::array<Complex, 4> eigenvalues_closed_form(const ShearSystem& sys,
                                               const WaveVector& k);

/// Generic dense eigensolve of mode_matrix, unsorted. Cross-check oracle for
/// the closed form.
std::array<Complex, 4> dense_eigenvalues(const ShearSystem& sys,
                                         const WaveVector& k);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

enum class WindowMode {
  approximate,  // printed weak-coupling bounds (2 - e^{-kd}, 2 + e^{-kd})
  exact,        // endpoints from the sign change of the w- radicand
};

/// Unstable range of u = k.v/omega_sp for wave vectors of magnitude k_par
/// pointing along `direction` (unit 2-vector). Returns nullopt when no u is
/// reachable: v = 0 or direction perpendicular to the shear.
std::optional<Interval> instability_window(const ShearSystem& sys,
                                           double k_par,
                                           const Eigen::Vector2d& direction,
                                           WindowMode mode = WindowMode::approximate);

/// Im w- from the closed-form eigenvalue; 0 outside the unstable window.
double growth_rate(const ShearSystem& sys, const WaveVector& k);

/// Weak-coupling growth rate
///   (omega_sp/2) e^{-|k|d} sqrt(1 - ((|kx| - 2 omega_sp/v)/((omega_sp/v) e^{-|k|d}))^2),
/// 0 outside the window. Requires v > 0.
double growth_rate_approx(const ShearSystem& sys, const WaveVector& k);

/// Eigenstructure of M at one wave vector. When the eigenvector matrix is
/// unreliable (exceptional points at the window edges) `diagonalizable` is
/// false and evolution_operator falls back to a direct matrix exponential.
struct ModeEvolution {
  Eigen::Matrix4cd matrix;                // M itself
  std::array<Complex, 4> eigenvalues;     // {w+, w-, -w-, -w+}
  Eigen::Matrix4cd S;                     // eigenvector columns, same order
  double cond_S = 0.0;
  double growth_rate = 0.0;               // Im w- when positive, else 0
  std::optional<double> tau;              // 1/(2 growth_rate) when unstable
  bool diagonalizable = true;
};

ModeEvolution analyze_modes(const ShearSystem& sys, const WaveVector& k);

/// U(t) = exp(-i t M), via S diag(e^{-i w_j t}) S^{-1} when S is reliable,
/// else scaling-and-squaring on -i t M. U(0) = identity; U obeys the group
/// property and preserves the Bogoliubov (commutator) invariant
/// |U_r1|^2 + |U_r2|^2 - |U_r3|^2 - |U_r4|^2 = 1 for r = 1, 2.
Eigen::Matrix4cd evolution_operator(const ModeEvolution& modes, double t);
Eigen::Matrix4cd evolution_operator(const ShearSystem& sys, const WaveVector& k,
                                    double t);

/// Number of quanta created in surface 1 at time t, summed over the +-k pair:
///   N = |U13(k)|^2 + |U14(k)|^2 + |U13(-k)|^2 + |U14(-k)|^2.
/// The surface-2 count (rows 2) is computed independently and must agree;
/// disagreement beyond 1e-8 relative throws SymmetryError.
double quanta_number(const ShearSystem& sys, const WaveVector& k, double t);

struct QuantaTrace {
  std::vector<double> times;
  std::vector<double> n;     // N_k(t), >= 0, N(0) = 0
  std::vector<double> dndt;  // analytic, from dU/dt = -i M U
};

QuantaTrace quanta_trace(const ShearSystem& sys, const WaveVector& k,
                         const std::vector<double>& times);

/// Cell-centered rectangular k-grid covering the instability window in the
/// kx > 0 half-plane: kx spans 3 window half-widths around 2 omega_sp/v,
/// ky up to where the squared coupling drops below 1e-6.
struct KGrid {
  std::vector<WaveVector> points;
  double cell_area = 0.0;  // dkx * dky
};

KGrid instability_grid(const ShearSystem& sys, int nx, int ny);

/// E(t) = sum over the grid of 2 omega_sp N_k(t), weighted by the mode count
/// area * cell_area/(2pi)^2 per cell. Appends a coverage warning when fewer
/// than 16 kx columns sample the unstable window.
double total_energy(const ShearSystem& sys, const KGrid& grid, double t,
                    double area, std::vector<std::string>* warnings = nullptr);

/// Friction force per unit area at time t,
///   F/A = (2 omega_sp/v) (1/(2pi)^2) sum dN_k/dt cell_area,
/// with dN/dt analytic (the plate area cancels against the mode count).
/// Defined as 0 at v = 0.
double friction_force(const ShearSystem& sys, const KGrid& grid, double t,
                      double area, int threads = 0,
                      std::vector<std::string>* warnings = nullptr);

struct ForceTrace {
  std::vector<double> times;
  std::vector<double> force_per_area;
  std::vector<double> energy;  // E(t) for the same area
};

/// Force and energy on a shared time grid; one eigenstructure solve per
/// wave vector, evaluated across threads with an index-ordered reduction.
ForceTrace force_trace(const ShearSystem& sys, const KGrid& grid,
                       const std::vector<double>& times, double area,
                       int threads = 0,
                       std::vector<std::string>* warnings = nullptr);

/// Stationary (late-time mean) friction force per unit area,
///   F/A = (omega_sp^3/(4 pi v^2)) int dky e^{-2 sqrt(ky^2 + (2 omega_sp/v)^2) d},
/// by adaptive quadrature. Half of Pendry's original value: the
/// interaction convention here suppresses his factor of 2.
double pendry_force(const ShearSystem& sys, double rel_tol = 1e-9);

/// The same force from the window integral
///   F/A = (2 omega_sp/v) (1/(2pi)^2) int int 2 w''_k dkx dky,
/// with the coupling frozen at the window center kx = 2 omega_sp/v (the
/// approximation under which the kx integral is a half-circle area and the
/// two forms coincide). Agrees with pendry_force to quadrature tolerance.
double pendry_force_intermediate(const ShearSystem& sys, double rel_tol = 1e-9);

}  // namespace fed::friction
