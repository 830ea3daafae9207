#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "fed/errors.hpp"

namespace fed::num {

/// coth(x) without overflow for large |x| and no cancellation near the
/// asymptote: coth(x) = 1 + 2/expm1(2x). Diverges like 1/x at x -> 0; the
/// caller is responsible for not evaluating at exactly 0.
double coth(double x);

/// Principal square root of -eps for a permittivity eps with Im(eps) >= 0.
/// The imaginary part of eps is canonicalized so that Im(eps) == 0 lands on
/// the lower side of the branch cut: sqrt(-1) == -i, never +i. This keeps
/// lossless media continuous with the weakly-lossy limit.
std::complex<double> sqrt_neg(std::complex<double> eps);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  std::int64_t evaluations = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;       // secondary floor; 0 disables
  int max_depth = 15;         // adaptive bisection depth per segment
  // Best-effort mode: report the error estimate instead of throwing on a
  // miss. For inner integrals of a nested quadrature, where a vanishing
  // tail can never meet a relative tolerance and only the outer estimate
  // is contractual.
  bool enforce = true;
  // Interior points the integrand is concentrated around (resonances,
  // thresholds). The interval is split there before adapting.
  std::vector<double> seeds;
};

/// Adaptive Gauss-Kronrod integration of f over [a, b]. Seeds inside (a, b)
/// become segment boundaries. Throws ConvergenceError if the combined error
/// estimate exceeds max(rel_tol * |value|, abs_tol). Segment endpoints are
/// never evaluated, so an integrable endpoint singularity (or a seeded pole)
/// is safe.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opts = {});

/// Bracketing root solve on [a, b] (f(a) and f(b) must differ in sign).
/// TOMS 748 bracketing; converges to ~full double precision.
double find_root(const std::function<double(double)>& f, double a, double b);

/// n points log-spaced over [lo, hi], inclusive. Requires lo > 0, n >= 2.
std::vector<double> log_grid(double lo, double hi, int n);

/// n points linearly spaced over [lo, hi], inclusive. Requires n >= 2.
std::vector<double> linear_grid(double lo, double hi, int n);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

/// Least-squares straight line through (x[i], y[i]).
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Evaluates f(i) for i in [0, n) across `threads` workers (0 = hardware
/// concurrency) and returns the results in index order. The reduction order
/// is deterministic regardless of thread count.
template <typename F>
auto parallel_map(int n, const F& f, int threads = 0)
    -> std::vector<decltype(f(0))> {
  if (n < 0) throw ConfigError("parallel_map: n must be >= 0");
  std::vector<decltype(f(0))> out(static_cast<std::size_t>(n));
  if (n == 0) return out;

  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n);

  if (workers == 1) {
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(i);
    return out;
  }

  // Each index writes its own slot, so the result is independent of the
  // scheduling order.
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const int i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) return;
        try {
          out[static_cast<std::size_t>(i)] = f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace fed::num
