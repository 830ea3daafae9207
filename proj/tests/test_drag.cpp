#include <doctest.h>

#include <cmath>

#include "fed/drag.hpp"
#include "fed/errors.hpp"
#include "fed/numerics.hpp"

using namespace fed;

namespace {

drag::DragConfig reference_config(double v0) {
  drag::DragConfig cfg;
  cfg.plate.drude = {2.0, 0.1, materials::constant_eps_l({1.0, 0.0})};
  cfg.plate.v0 = Eigen::Vector3d(v0, 0.0, 0.0);
  cfg.particle = {1.0, 1.0, 0.1};
  cfg.z0 = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("drag config validation") {
  auto cfg = reference_config(0.5);
  CHECK_NOTHROW(cfg.validate());

  cfg.plate.v0.y() = 0.1;  // drift must stay along x
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = reference_config(0.5);
  cfg.z0 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = reference_config(0.5);
  cfg.t_el = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("drag integrand: window structure, poles, sign") {
  const auto cfg = reference_config(0.5);

  // T = 0: no contribution above the Doppler window edge omega = kx v0
  CHECK(drag::drag_integrand(1.0, 1.9, 0.3, cfg) == 0.0);
  // inside the window (omega < kx v0) the integrand is strictly positive
  CHECK(drag::drag_integrand(1.0, 2.5, 0.3, cfg) > 0.0);

  // the Doppler pole is flagged, not evaluated through
  CHECK_THROWS_AS(drag::drag_integrand(1.0, 2.0, 0.0, cfg), PoleError);
  CHECK_THROWS_AS(drag::drag_integrand(0.0, 1.0, 0.0, cfg), PoleError);
  CHECK_THROWS_AS(drag::drag_integrand(-1.0, 1.0, 0.0, cfg), PoleError);
}

TEST_CASE("inner ky integral matches the Bessel closed form") {
  // with the ky-independent factors divided out,
  //   int_-inf^inf q e^{-2 q z0} dky = kx^2 (K0 + K2)(2 z0 kx);
  // the 1e-7 slack covers the qmax = 12/z0 truncation of the left side
  const auto cfg = reference_config(0.5);
  const double w = 1.0;
  for (double kx : {2.5, 3.0}) {
    num::QuadratureOptions opts;
    opts.rel_tol = 1e-10;
    const double ky_lim = std::sqrt(144.0 - kx * kx);
    const auto inner = num::integrate(
        [&](double ky) { return drag::drag_integrand(w, kx, ky, cfg); }, 0.0,
        ky_lim, opts);
    // strip q e^{-2qz0} at ky = 0 (q = kx, z0 = 1) to recover the prefactor
    const double prefactor =
        drag::drag_integrand(w, kx, 0.0, cfg) / (kx * std::exp(-2.0 * kx));
    const double bessel = kx * kx *
                          (std::cyl_bessel_k(0, 2.0 * kx) +
                           std::cyl_bessel_k(2, 2.0 * kx));
    CHECK(2.0 * inner.value ==
          doctest::Approx(prefactor * bessel).epsilon(1e-7));
  }
}

TEST_CASE("drag force: null point, antisymmetry, pinned cross-check") {
  // no drift: identically zero, no quadrature involved
  auto cfg = reference_config(0.0);
  const auto at_rest = drag::drag_force(cfg, 1e-6);
  CHECK(at_rest.force == 0.0);
  CHECK(at_rest.abs_error_estimate == 0.0);
  CHECK(at_rest.evaluations == 0);

  // independently computed reference point (nested scipy quadrature)
  cfg = reference_config(0.5);
  const auto fwd = drag::drag_force(cfg, 1e-5);
  CHECK(fwd.force == doctest::Approx(0.01091990924235068).epsilon(1e-5));
  CHECK(fwd.abs_error_estimate < 1e-5 * fwd.force);
  CHECK(fwd.evaluations > 1000);

  // reversing the drift mirrors the window; forces must mirror too
  cfg = reference_config(-0.5);
  const auto bwd = drag::drag_force(cfg, 1e-5);
  CHECK(bwd.force == doctest::Approx(-fwd.force).epsilon(1e-8));
}

TEST_CASE("drag force self-convergence under tolerance halving") {
  const auto cfg = reference_config(0.5);
  const auto coarse = drag::drag_force(cfg, 1e-4);
  const auto fine = drag::drag_force(cfg, 5e-5);
  CHECK(std::abs(fine.force - coarse.force) <= coarse.abs_error_estimate);
  CHECK(fine.evaluations >= coarse.evaluations);
}

TEST_CASE("drag force rejects bad tolerances and reports failure to converge") {
  const auto cfg = reference_config(0.5);
  CHECK_THROWS_AS(drag::drag_force(cfg, 0.0), ConfigError);
  CHECK_THROWS_AS(drag::drag_force(cfg, -1.0), ConfigError);
  CHECK_THROWS_AS(drag::drag_force(cfg, 1e-4, 0), ConfigError);
  // a demand the budget cannot meet is reported, not chased forever
  CHECK_THROWS_AS(drag::drag_force(cfg, 1e-10, 200'000), ConvergenceError);
}

TEST_CASE("drag asymptotics input validation") {
  const auto cfg = reference_config(0.1);

  CHECK_THROWS_AS(drag::drag_asymptotics(cfg, {0.1, 0.2}, 1e-4),
                  ConfigError);  // too few speeds
  CHECK_THROWS_AS(
      drag::drag_asymptotics(cfg, {0.1, 0.2, 0.3, -0.4}, 1e-4),
      ConfigError);  // speeds must be positive
  CHECK_THROWS_AS(
      drag::drag_asymptotics(cfg, {0.05, 0.1, 10.0, 100.0}, 1e-4),
      ConfigError);  // small-kappa regime spans only a factor 2

  auto warm = cfg;
  warm.t_el = 0.5;
  warm.t_p = 0.5;
  CHECK_THROWS_AS(drag::drag_asymptotics(
                      warm, {0.01, 0.1, 10.0, 100.0}, 1e-4),
                  ConfigError);  // exponents are a T = 0 statement
}
