#include "fed/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "fed/errors.hpp"

namespace fed::num {

double coth(double x) {
  if (x < 0.0) return -coth(-x);
  // 1 + 2/(e^{2x} - 1): exact asymptote for large x (expm1 overflows to inf,
  // the correction to 0) and cancellation-free near 0.
  return 1.0 + 2.0 / std::expm1(2.0 * x);
}

std::complex<double> sqrt_neg(std::complex<double> eps) {
  // Land exactly-lossless media on the lower side of the branch cut of
  // sqrt(-eps): canonicalizing Im eps = -0 to +0 makes the negation below
  // yield -0, so sqrt(-1 - i0) = -i and finite losses connect continuously.
  const double im = (eps.imag() == 0.0) ? 0.0 : eps.imag();
  return std::sqrt(std::complex<double>(-eps.real(), -im));
}

namespace {

std::vector<double> segment_boundaries(double a, double b,
                                       const std::vector<double>& seeds) {
  std::vector<double> bounds;
  bounds.push_back(a);
  std::vector<double> inner(seeds);
  std::sort(inner.begin(), inner.end());
  for (double s : inner) {
    if (s > a && s < b && s != bounds.back()) bounds.push_back(s);
  }
  bounds.push_back(b);
  return bounds;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opts) {
  if (!(a < b)) throw ConfigError("integrate: requires a < b");
  if (!(opts.rel_tol > 0.0) || opts.abs_tol < 0.0)
    throw ConfigError("integrate: rel_tol must be > 0 and abs_tol >= 0");

  QuadratureResult result;
  std::int64_t evals = 0;
  auto counted = [&f, &evals](double x) {
    ++evals;
    return f(x);
  };

  using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
  const std::vector<double> bounds = segment_boundaries(a, b, opts.seeds);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    double err = 0.0;
    result.value += gk::integrate(counted, bounds[i], bounds[i + 1],
                                  opts.max_depth, opts.rel_tol, &err);
    result.error_estimate += err;
  }
  result.evaluations = evals;

  const double bound =
      std::max(opts.rel_tol * std::abs(result.value), opts.abs_tol);
  if (opts.enforce && result.error_estimate > bound) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "integrate: error estimate %.3g exceeds tolerance %.3g "
                  "(value %.6g, %lld evaluations)",
                  result.error_estimate, bound, result.value,
                  static_cast<long long>(result.evaluations));
    throw ConvergenceError(msg);
  }
  return result;
}

double find_root(const std::function<double(double)>& f, double a, double b) {
  if (!(a < b)) throw ConfigError("find_root: requires a < b");
  const double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw ConfigError("find_root: f(a) and f(b) must differ in sign");

  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t max_iter = 200;
  auto bracket = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, max_iter);
  if (max_iter >= 200)
    throw ConvergenceError("find_root: TOMS 748 exhausted its iteration budget");
  return 0.5 * (bracket.first + bracket.second);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo))
    throw ConfigError("log_grid: requires 0 < lo < hi");
  if (n < 2) throw ConfigError("log_grid: requires n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double step = (std::log(hi) - std::log(lo)) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = std::exp(std::log(lo) + step * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (!(hi > lo)) throw ConfigError("linear_grid: requires lo < hi");
  if (n < 2) throw ConfigError("linear_grid: requires n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo + step * i;
  g.back() = hi;
  return g;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw ConfigError("fit_line: x and y must have equal length");
  if (x.size() < 2) throw ConfigError("fit_line: needs at least 2 points");

  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ConfigError("fit_line: x values are all identical");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (fit.slope * x[i] + fit.intercept);
      ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

}  // namespace fed::num
