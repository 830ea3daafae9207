#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fed/errors.hpp"
#include "fed/numerics.hpp"

using namespace fed;

TEST_CASE("coth matches the analytic value and its limits") {
  CHECK(num::coth(1.0) == doctest::Approx(1.3130352854993312).epsilon(1e-15));
  CHECK(num::coth(-1.0) == -num::coth(1.0));
  // large argument: expm1 overflows cleanly, the correction vanishes
  CHECK(num::coth(400.0) == 1.0);
  CHECK(num::coth(-400.0) == -1.0);
  // small argument: coth(x) = 1/x + x/3 + O(x^3), no cancellation
  const double x = 1e-6;
  CHECK(num::coth(x) - 1.0 / x == doctest::Approx(x / 3.0).epsilon(1e-9));
}

TEST_CASE("sqrt_neg lands lossless media on the -i side of the cut") {
  const auto s = num::sqrt_neg({1.0, 0.0});
  CHECK(s.real() == doctest::Approx(0.0).epsilon(1e-300));
  CHECK(s.imag() == doctest::Approx(-1.0).epsilon(1e-15));

  // the weakly lossy limit joins continuously
  const auto sl = num::sqrt_neg({1.0, 1e-10});
  CHECK(std::abs(sl - s) < 1e-9);
  CHECK(sl.real() > 0.0);  // e^{-wR sqrt} decays for lossy media

  // negative-real eps: sqrt(-eps) is plain real
  CHECK(num::sqrt_neg({-4.0, 0.0}).real() == doctest::Approx(2.0));
  CHECK(num::sqrt_neg({-4.0, 0.0}).imag() == doctest::Approx(0.0));
}

TEST_CASE("integrate handles smooth, seeded, and endpoint-undefined cases") {
  num::QuadratureOptions opts;
  opts.rel_tol = 1e-12;

  auto r = num::integrate([](double x) { return x * x; }, 0.0, 1.0, opts);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(r.evaluations > 0);

  r = num::integrate([](double x) { return std::sin(x); }, 0.0,
                     std::numbers::pi, opts);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));

  // a spike 1e-7 wide: unseeded, no abscissa ever lands on it and the
  // result is silently wrong by the whole peak weight
  const double eta = 1e-7;
  auto lorentz = [eta](double x) {
    return eta / std::numbers::pi / (x * x + eta * eta);
  };
  num::QuadratureOptions blind;
  blind.rel_tol = 1e-9;
  blind.enforce = false;
  CHECK(num::integrate(lorentz, -1.0, 1.0, blind).value < 1e-3);

  // seeded, the peak sits on a segment boundary, but bisection still has
  // to be allowed to dig down to the peak width before the estimate settles
  num::QuadratureOptions seeded;
  seeded.rel_tol = 1e-6;
  seeded.seeds = {0.0};
  seeded.max_depth = 28;
  r = num::integrate(lorentz, -1.0, 1.0, seeded);
  CHECK(r.value ==
        doctest::Approx(2.0 / std::numbers::pi * std::atan(1.0 / eta))
            .epsilon(1e-6));

  // endpoints are never evaluated: sin(x)/x is NaN at 0 if called there
  r = num::integrate([](double x) { return std::sin(x) / x; }, 0.0, 1.0,
                     opts);
  CHECK(r.value == doctest::Approx(0.946083070367183).epsilon(1e-13));
}

TEST_CASE("integrate reports or enforces a missed tolerance") {
  // a step is not resolvable at depth 1; the estimate must say so
  auto step = [](double x) { return x < 0.123456 ? 0.0 : 1.0; };
  num::QuadratureOptions opts;
  opts.rel_tol = 1e-14;
  opts.max_depth = 1;
  CHECK_THROWS_AS(num::integrate(step, 0.0, 1.0, opts), ConvergenceError);

  opts.enforce = false;
  const auto r = num::integrate(step, 0.0, 1.0, opts);
  CHECK(r.error_estimate > opts.rel_tol * std::abs(r.value));
  CHECK(r.value == doctest::Approx(1.0 - 0.123456).epsilon(1e-2));
}

TEST_CASE("find_root brackets to near machine precision") {
  const double root =
      num::find_root([](double x) { return std::cos(x); }, 0.0, 2.0);
  CHECK(root == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));

  // endpoint zeros are returned directly
  CHECK(num::find_root([](double x) { return x; }, 0.0, 1.0) == 0.0);

  CHECK_THROWS_AS(
      num::find_root([](double x) { return 1.0 + x * x; }, -1.0, 1.0),
      ConfigError);
}

TEST_CASE("grids are endpoint-exact and validated") {
  const auto lg = num::log_grid(1e-3, 1e3, 7);
  CHECK(lg.size() == 7);
  CHECK(lg.front() == 1e-3);
  CHECK(lg.back() == 1e3);
  CHECK(lg[3] == doctest::Approx(1.0).epsilon(1e-14));

  const auto ln = num::linear_grid(0.0, 10.0, 11);
  CHECK(ln.size() == 11);
  CHECK(ln.front() == 0.0);
  CHECK(ln.back() == 10.0);
  CHECK(ln[4] == doctest::Approx(4.0).epsilon(1e-14));

  CHECK_THROWS_AS(num::log_grid(-1.0, 1.0, 5), ConfigError);
  CHECK_THROWS_AS(num::log_grid(1.0, 2.0, 1), ConfigError);
  CHECK_THROWS_AS(num::linear_grid(0.0, 1.0, 1), ConfigError);
}

TEST_CASE("fit_line recovers exact lines and flags degenerate input") {
  std::vector<double> x, y;
  for (int i = 0; i < 9; ++i) {
    x.push_back(0.3 * i);
    y.push_back(2.0 * x.back() + 1.0);
  }
  const auto fit = num::fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(num::fit_line({1.0, 1.0, 1.0}, {0.0, 1.0, 2.0}),
                  ConfigError);
}

TEST_CASE("parallel_map is index-ordered and thread-count independent") {
  auto square = [](int i) { return static_cast<double>(i) * i; };
  const auto serial = num::parallel_map(100, square, 1);
  const auto threaded = num::parallel_map(100, square, 4);
  REQUIRE(serial.size() == 100);
  CHECK(serial == threaded);
  CHECK(serial[7] == 49.0);

  // non-double payloads work too
  struct Pair {
    double a = 0.0;
    double b = 0.0;
  };
  const auto pairs = num::parallel_map(
      5, [](int i) { return Pair{1.0 * i, 2.0 * i}; }, 2);
  CHECK(pairs[3].b == 6.0);

  // a worker exception surfaces on the caller
  CHECK_THROWS_AS(num::parallel_map(
                      8,
                      [](int i) -> double {
                        if (i == 5) throw ConvergenceError("boom");
                        return 0.0;
                      },
                      3),
                  ConvergenceError);
}
