#pragma once

#include <complex>
#include <vector>

namespace fed::spectra {

using Complex = std::complex<double>;

struct ThermalState {
  double temperature = 0.0;  // k_B = 1; 0 selects the zero-point limit

  void validate() const;
};

/// Dielectric value and separation entering the two-point field correlator.
struct MediumPoint {
  Complex epsilon = Complex(1.0, 0.0);
  double separation = 1.0;  // R = |r - r'|

  void validate() const;  // requires Im epsilon >= 0, separation >= 0
};

/// coth(omega/2T), overflow-free; exactly 1 at T = 0.
/// Throws PoleError for omega <= 0.
double thermal_factor(double omega, const ThermalState& state);

/// (omega^2/2) coth(omega/2T) Im eps: the scalar weight multiplying
/// delta_ik delta(r - r') in the current-current spectral function (hbar = 1).
double current_correlator_prefactor(double omega, const ThermalState& state,
                                    double im_eps);

/// Equilibrium field spectral density at separation R in a uniform medium:
///   2 coth(omega/2T) Im[(omega^2/R) exp(-omega R sqrt(-eps))],  c = 1.
/// The contact term ~ delta(R) is excluded; R must be > 0. The branch of
/// sqrt(-eps) is chosen so lossless media join the weakly-lossy limit
/// continuously (see num::sqrt_neg); at eps = 1 this reduces to the vacuum
/// form (2 omega^2/R) sin(omega R).
double field_spectral_density(const MediumPoint& point, double omega,
                              const ThermalState& state);

/// The eps -> 1 closed form, 2 coth(omega/2T) (omega^2/R) sin(omega R).
double vacuum_density(double omega, double separation,
                      const ThermalState& state);

struct LosslessEntry {
  double delta = 0.0;    // Im eps
  double density = 0.0;  // field_spectral_density at eps = 1 + i delta
};

struct LosslessTrace {
  std::vector<LosslessEntry> entries;
  double limit = 0.0;  // vacuum value the trace converges to (linearly in delta)
};

/// Evaluates the density at eps = 1 + i delta for each delta (descending,
/// >= 0; an explicit 0 entry reproduces the limit exactly).
LosslessTrace lossless_limit_trace(double omega, double separation,
                                   const std::vector<double>& deltas,
                                   const ThermalState& state = {});

}  // namespace fed::spectra
