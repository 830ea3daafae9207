#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace fed::materials {

using Complex = std::complex<double>;

/// Lattice (bound-charge) dielectric background eps_L(omega).
/// Must satisfy Im eps_L(omega) >= 0 for omega > 0.
using EpsLattice = std::function<Complex(double)>;

/// Constant background; the default is vacuum, eps_L = 1.
EpsLattice constant_eps_l(Complex value = Complex(1.0, 0.0));

/// Collisionless free-electron gas: eps = 1 - omega_p^2/omega^2.
struct PlasmaParams {
  double omega_p = 1.0;

  void validate() const;  // throws ConfigError
};

/// Drude metal: eps = eps_L(omega) - omega_p^2/(omega (omega + i gamma)).
struct DrudeParams {
  double omega_p = 1.0;
  double gamma = 0.0;
  EpsLattice eps_l;  // empty means constant 1

  Complex eps_l_at(double omega) const;
  void validate() const;
};

/// Drude metal whose carriers drift with velocity v0 (along x in all of the
/// drag-force usage). Frequencies seen by the carriers are Doppler shifted
/// to omega_minus = omega - k.v0.
struct DriftParams {
  DrudeParams drude;
  Eigen::Vector3d v0 = Eigen::Vector3d::Zero();

  void validate() const;
};

/// Single-resonance particle: alpha(omega) = alpha0 w0^2/(w0^2 - w^2 - i w eta).
struct ParticleParams {
  double alpha0 = 1.0;
  double omega0 = 1.0;
  double eta = 0.1;

  void validate() const;
};

/// eps = 1 - omega_p^2/omega^2. Throws PoleError at omega = 0 (double pole).
double plasma_epsilon(double omega, const PlasmaParams& p);

/// eps = eps_L(omega) - omega_p^2/(omega (omega + i gamma)).
/// Throws PoleError at omega = 0.
Complex drude_epsilon(double omega, const DrudeParams& p);

/// Drifting-carrier dielectric tensor
///   eps_ik = eps_L d_ik - [omega_p^2/(omega (omega_minus + i gamma))]
///            (d_ik + v0_i k_k / omega_minus),
/// omega_minus = omega - k.v0. Throws PoleError at omega = 0 or
/// omega_minus = 0 (gamma regularizes only the first factor).
Eigen::Matrix3cd drift_epsilon_tensor(double omega, const Eigen::Vector3d& k,
                                      const DriftParams& p);

/// Longitudinal response at the Doppler-shifted frequency:
///   eps = eps_L(omega) - omega_p^2/((omega_minus + i gamma) omega_minus).
/// The pole at omega_minus = 0 survives any gamma > 0; throws PoleError there
/// so quadrature can route around it explicitly.
Complex drift_epsilon_longitudinal(double omega, double k_dot_v0,
                                   const DriftParams& p);

/// alpha(omega) = alpha0 w0^2/(w0^2 - w^2 - i w eta). Regular on the whole
/// real axis for eta > 0; obeys alpha(-w) = conj(alpha(w)).
Complex particle_polarizability(double omega, const ParticleParams& p);

/// Quasi-static image factor Gamma = (eps - 1)/(eps + 1).
Complex surface_response_from_eps(Complex eps);

/// Gamma(omega, k_x) with eps = drift_epsilon_longitudinal at
/// k.v0 = k_x v0_x (drift along x; no other k dependence in the
/// quasi-static setup). Throws PoleError on eps = -1 exactly.
Complex surface_response(double omega, double k_x, const DriftParams& p);

/// Kramers-Kronig residual
///   | Re eps(wt) - 1 - (2/pi) PV int_0^Omega w' Im eps(w')/(w'^2 - wt^2) dw' |
/// with the principal value handled by subtracting the singular part
/// (the subtracted term integrates to a closed-form log) and inserting
/// symmetric nodes around omega_test. Small for causal lossy models,
/// order unity for the lossless plasma model.
///
/// omega_grid supplies the quadrature nodes (ascending, positive, spanning
/// well past all spectral features). Throws GridError if inserting midpoints
/// between adjacent nodes moves the residual by more than 10% of the scale
/// of the quantities being compared.
double kk_residual(const std::function<Complex(double)>& model,
                   const std::vector<double>& omega_grid, double omega_test);

}  // namespace fed::materials
