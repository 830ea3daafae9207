#include <doctest.h>

#include <cmath>

#include "fed/errors.hpp"
#include "fed/spectra.hpp"

using namespace fed;

TEST_CASE("thermal factor: zero-point limit, pinned value, poles") {
  CHECK(spectra::thermal_factor(1.0, {0.0}) == 1.0);  // exact at T = 0
  CHECK(spectra::thermal_factor(2.0, {1.0}) ==
        doctest::Approx(1.3130352854993312).epsilon(1e-14));  // coth(1)
  CHECK_THROWS_AS(spectra::thermal_factor(0.0, {1.0}), PoleError);
  CHECK_THROWS_AS(spectra::thermal_factor(-1.0, {0.0}), PoleError);
  CHECK_THROWS_AS(spectra::ThermalState{-0.1}.validate(), ConfigError);
}

TEST_CASE("current correlator weight reproduces the worked value") {
  // (omega^2/2) coth(omega/2T) Im eps at omega = 1, T = 0.5, Im eps = 0.1
  CHECK(spectra::current_correlator_prefactor(1.0, {0.5}, 0.1) ==
        doctest::Approx(0.0656517642749666).epsilon(1e-13));
  // dissipationless media carry no fluctuating currents
  CHECK(spectra::current_correlator_prefactor(1.0, {0.5}, 0.0) == 0.0);
  CHECK_THROWS_AS(spectra::current_correlator_prefactor(1.0, {0.5}, -0.1),
                  ConfigError);
}

TEST_CASE("field spectral density reduces to the vacuum form at eps = 1") {
  const spectra::ThermalState cold{0.0};
  for (double r : {0.3, 1.0, 4.7}) {
    const spectra::MediumPoint point{{1.0, 0.0}, r};
    CHECK(spectra::field_spectral_density(point, 1.3, cold) ==
          doctest::Approx(spectra::vacuum_density(1.3, r, cold))
              .epsilon(1e-14));
  }
  CHECK(spectra::vacuum_density(1.0, 1.0, cold) ==
        doctest::Approx(2.0 * std::sin(1.0)).epsilon(1e-15));

  // independently computed lossy-medium point (eps = 2 + 0.5i)
  const spectra::MediumPoint lossy{{2.0, 0.5}, 2.1};
  CHECK(spectra::field_spectral_density(lossy, 1.3, {0.7}) ==
        doctest::Approx(-0.929858220031155).epsilon(1e-12));

  CHECK_THROWS_AS(
      spectra::field_spectral_density({{1.0, 0.0}, 0.0}, 1.0, cold),
      PoleError);
  CHECK_THROWS_AS(
      spectra::field_spectral_density({{1.0, -0.1}, 1.0}, 1.0, cold),
      ConfigError);
}

TEST_CASE("lossless limit trace converges linearly onto the vacuum value") {
  const std::vector<double> deltas = {1e-2, 1e-3, 1e-4, 1e-5};
  const auto trace = spectra::lossless_limit_trace(1.0, 1.0, deltas, {0.0});
  REQUIRE(trace.entries.size() == 4);
  CHECK(trace.limit == doctest::Approx(2.0 * std::sin(1.0)).epsilon(1e-15));

  double prev_err = 1e300;
  for (std::size_t i = 0; i < trace.entries.size(); ++i) {
    const double err = std::abs(trace.entries[i].density - trace.limit);
    CHECK(err < prev_err);
    prev_err = err;
    // linear in delta: err / delta is a stable constant
    const double ratio = err / trace.entries[i].delta;
    CHECK(ratio == doctest::Approx(0.841).epsilon(0.02));
  }

  // an explicit delta = 0 entry reproduces the limit exactly
  const auto with_zero =
      spectra::lossless_limit_trace(1.0, 1.0, {1e-3, 0.0}, {0.0});
  CHECK(with_zero.entries.back().density == with_zero.limit);

  CHECK_THROWS_AS(spectra::lossless_limit_trace(1.0, 1.0, {1e-4, 1e-3}, {0.0}),
                  ConfigError);  // ascending
  CHECK_THROWS_AS(spectra::lossless_limit_trace(1.0, 1.0, {1e-3, -1e-4}, {0.0}),
                  ConfigError);  // negative
}
