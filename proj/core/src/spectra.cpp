#include "fed/spectra.hpp"

#include <cmath>

#include "fed/errors.hpp"
#include "fed/numerics.hpp"

namespace fed::spectra {

void ThermalState::validate() const {
  if (!(temperature >= 0.0))
    throw ConfigError("ThermalState.temperature: must be >= 0");
}

void MediumPoint::validate() const {
  if (!(epsilon.imag() >= 0.0))
    throw ConfigError("MediumPoint.epsilon: Im must be >= 0 (passive medium)");
  if (!(separation >= 0.0))
    throw ConfigError("MediumPoint.separation: must be >= 0");
}

double thermal_factor(double omega, const ThermalState& state) {
  state.validate();
  if (!(omega > 0.0))
    throw PoleError("thermal_factor: omega must be > 0");
  if (state.temperature == 0.0) return 1.0;
  return num::coth(omega / (2.0 * state.temperature));
}

double current_correlator_prefactor(double omega, const ThermalState& state,
                                    double im_eps) {
  if (!(im_eps >= 0.0))
    throw ConfigError("current_correlator_prefactor: im_eps must be >= 0");
  if (im_eps == 0.0) return 0.0;  // no dissipation, no sources
  return 0.5 * omega * omega * thermal_factor(omega, state) * im_eps;
}

double field_spectral_density(const MediumPoint& point, double omega,
                              const ThermalState& state) {
  point.validate();
  if (point.separation == 0.0)
    throw PoleError(
        "field_spectral_density: R = 0 hits the excluded contact term");
  const double r = point.separation;
  const Complex amplitude =
      omega * omega / r * std::exp(-omega * r * num::sqrt_neg(point.epsilon));
  return 2.0 * thermal_factor(omega, state) * amplitude.imag();
}

double vacuum_density(double omega, double separation,
                      const ThermalState& state) {
  if (!(separation > 0.0))
    throw PoleError("vacuum_density: separation must be > 0");
  return 2.0 * thermal_factor(omega, state) * omega * omega *
         std::sin(omega * separation) / separation;
}

LosslessTrace lossless_limit_trace(double omega, double separation,
                                   const std::vector<double>& deltas,
                                   const ThermalState& state) {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] >= 0.0))
      throw ConfigError("lossless_limit_trace: deltas must be >= 0");
    if (i > 0 && !(deltas[i] < deltas[i - 1]))
      throw ConfigError("lossless_limit_trace: deltas must be descending");
  }

  LosslessTrace trace;
  trace.limit = vacuum_density(omega, separation, state);
  trace.entries.reserve(deltas.size());
  for (double delta : deltas) {
    MediumPoint point{Complex(1.0, delta), separation};
    trace.entries.push_back(
        {delta, field_spectral_density(point, omega, state)});
  }
  return trace;
}

}  // namespace fed::spectra
