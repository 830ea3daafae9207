#include "fed/drag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fed/errors.hpp"
#include "fed/numerics.hpp"

namespace fed::drag {

namespace {

constexpr double kPi = std::numbers::pi;

// Zero temperature replaces coth by the sign of its argument (the coth(x/0)
// limit), keeping the quantum-drag window exact instead of a numerical trap.
double coth_or_sign(double x, double temperature) {
  if (temperature > 0.0) return num::coth(x / (2.0 * temperature));
  return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
}

double integrand_unchecked(double omega, double kx, double ky,
                           const DragConfig& cfg) {
  const double omega_minus = omega - kx * cfg.plate.v0.x();
  const double bracket =
      coth_or_sign(omega_minus, cfg.t_el) - coth_or_sign(omega, cfg.t_p);
  if (bracket == 0.0) return 0.0;
  const double alpha_im =
      materials::particle_polarizability(omega, cfg.particle).imag();
  const double gamma_im =
      materials::surface_response(omega, kx, cfg.plate).imag();
  const double q = std::hypot(kx, ky);
  return alpha_im * bracket * gamma_im * q * kx * std::exp(-2.0 * q * cfg.z0);
}

// Doppler-shifted surface-plasmon resonance of Im Gamma: eps(w_minus) = -1
// at |w_minus| = sqrt(wp^2/(1 + eps_L) - gamma^2). Used only to seed the
// quadrature.
double resonance_frequency(const DragConfig& cfg) {
  const double eps_l =
      cfg.plate.drude.eps_l_at(cfg.particle.omega0).real();
  const double wp = cfg.plate.drude.omega_p;
  const double gamma = cfg.plate.drude.gamma;
  const double wbar2 = wp * wp / (1.0 + eps_l) - gamma * gamma;
  return wbar2 > 0.0 ? std::sqrt(wbar2) : 0.0;
}

void push_if_inside(std::vector<double>& seeds, double value, double lo,
                    double hi) {
  if (value > lo && value < hi) seeds.push_back(value);
}

}  // namespace

void DragConfig::validate() const {
  plate.validate();
  particle.validate();
  if (plate.v0.y() != 0.0 || plate.v0.z() != 0.0)
    throw ConfigError("DragConfig.plate.v0: drift must be along x");
  if (!(z0 > 0.0)) throw ConfigError("DragConfig.z0: must be > 0");
  if (!(t_el >= 0.0)) throw ConfigError("DragConfig.t_el: must be >= 0");
  if (!(t_p >= 0.0)) throw ConfigError("DragConfig.t_p: must be >= 0");
  if (!(t_lattice >= 0.0))
    throw ConfigError("DragConfig.t_lattice: must be >= 0");
}

double drag_integrand(double omega, double k_x, double k_y,
                      const DragConfig& cfg) {
  cfg.validate();
  if (!(omega > 0.0))
    throw PoleError("drag_integrand: omega must be > 0");
  return integrand_unchecked(omega, k_x, k_y, cfg);
}

DragResult drag_force(const DragConfig& cfg, double tol,
                      std::int64_t max_evaluations) {
  cfg.validate();
  if (!(tol > 0.0)) throw ConfigError("drag_force: tol must be > 0");
  if (!(max_evaluations > 0))
    throw ConfigError("drag_force: max_evaluations must be > 0");

  const double v0 = cfg.plate.v0.x();
  // Without drift the kx-odd integrand integrates to zero identically
  // (at equal temperatures it even vanishes pointwise).
  if (v0 == 0.0) return DragResult{0.0, 0.0, 0};

  const double qmax = 12.0 / cfg.z0;  // e^{-2 q z0} below ~4e-11 beyond
  const double wbar = resonance_frequency(cfg);
  const bool quantum = (cfg.t_el == 0.0 && cfg.t_p == 0.0);
  const double window_top = qmax * std::abs(v0);
  const double wmax =
      quantum ? window_top
              : window_top + cfg.particle.omega0 + 10.0 * cfg.particle.eta +
                    50.0 * std::max(cfg.t_el, cfg.t_p);

  std::int64_t evals = 0;

  auto ky_integral = [&](double w, double kx) {
    const double ky_lim =
        std::sqrt(std::max(qmax * qmax - kx * kx, 0.0));
    if (ky_lim == 0.0) return 0.0;
    num::QuadratureOptions opts;
    opts.rel_tol = tol / 50.0;
    opts.enforce = false;
    auto f = [&](double ky) {
      if (++evals > max_evaluations) {
        char msg[120];
        std::snprintf(msg, sizeof(msg),
                      "drag_force: evaluation budget %lld exhausted before "
                      "reaching tol %.3g",
                      static_cast<long long>(max_evaluations), tol);
        throw ConvergenceError(msg);
      }
      return integrand_unchecked(w, kx, ky, cfg);
    };
    return 2.0 * num::integrate(f, 0.0, ky_lim, opts).value;  // even in ky
  };

  auto kx_integral = [&](double w) {
    double lo = -qmax;
    double hi = qmax;
    if (quantum) {
      // Only w_minus < 0 contributes: kx beyond w/v0 (or before, for v0 < 0).
      if (v0 > 0.0)
        lo = w / v0;
      else
        hi = w / v0;
      if (!(lo < hi)) return 0.0;
    }
    num::QuadratureOptions opts;
    opts.rel_tol = tol / 10.0;
    opts.enforce = false;
    push_if_inside(opts.seeds, w / v0, lo, hi);  // drag-window edge
    if (wbar > 0.0) {                            // Im Gamma resonances
      push_if_inside(opts.seeds, (w + wbar) / v0, lo, hi);
      push_if_inside(opts.seeds, (w - wbar) / v0, lo, hi);
    }
    auto f = [&](double kx) { return ky_integral(w, kx); };
    return num::integrate(f, lo, hi, opts).value;
  };

  num::QuadratureOptions outer;
  outer.rel_tol = tol;
  for (double seed :
       {cfg.particle.omega0 - 5.0 * cfg.particle.eta, cfg.particle.omega0,
        cfg.particle.omega0 + 5.0 * cfg.particle.eta, wbar,
        window_top - wbar})
    push_if_inside(outer.seeds, seed, 0.0, wmax);

  const num::QuadratureResult res =
      num::integrate([&](double w) { return kx_integral(w); }, 0.0, wmax,
                     outer);

  DragResult out;
  out.force = res.value / (kPi * kPi);
  out.abs_error_estimate = res.error_estimate / (kPi * kPi);
  out.evaluations = evals;
  return out;
}

DragAsymptotics drag_asymptotics(const DragConfig& cfg_template,
                                 const std::vector<double>& v0_values,
                                 double tol, int threads) {
  cfg_template.validate();
  if (!(tol > 0.0)) throw ConfigError("drag_asymptotics: tol must be > 0");
  if (!(cfg_template.t_el == 0.0 && cfg_template.t_p == 0.0))
    throw ConfigError(
        "drag_asymptotics: quantum-drag exponents need t_el = t_p = 0");
  if (v0_values.size() < 4)
    throw ConfigError("v0_values: need at least 4 speeds");
  for (double v0 : v0_values)
    if (!(v0 > 0.0)) throw ConfigError("v0_values: entries must be > 0");

  const std::size_t n = v0_values.size();
  const double kappa_scale = cfg_template.particle.omega0 * cfg_template.z0;

  auto regime_indices = [&](bool small_kappa) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      const double kappa = v0_values[i] / kappa_scale;
      if (small_kappa ? kappa < 1.0 : kappa > 1.0) idx.push_back(i);
    }
    const char* name = small_kappa ? "small-kappa" : "large-kappa";
    if (idx.size() < 2) {
      char msg[110];
      std::snprintf(msg, sizeof(msg),
                    "v0_values: %s regime has %zu points (need >= 2)", name,
                    idx.size());
      throw ConfigError(msg);
    }
    double lo = v0_values[idx.front()];
    double hi = lo;
    for (std::size_t i : idx) {
      lo = std::min(lo, v0_values[i]);
      hi = std::max(hi, v0_values[i]);
    }
    // One part in 1e9 of slack so an endpoint-exact decade grid passes.
    if (hi < lo * 10.0 * (1.0 - 1e-9)) {
      char msg[110];
      std::snprintf(msg, sizeof(msg),
                    "v0_values: %s regime must span at least a decade", name);
      throw ConfigError(msg);
    }
    return idx;
  };
  const std::vector<std::size_t> idx_small = regime_indices(true);
  const std::vector<std::size_t> idx_large = regime_indices(false);

  std::vector<double> errors(n, 0.0);
  const std::vector<double> forces = num::parallel_map(
      static_cast<int>(n),
      [&](int i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        DragConfig cfg = cfg_template;
        cfg.plate.v0 = Eigen::Vector3d(v0_values[ui], 0.0, 0.0);
        const DragResult r = drag_force(cfg, tol);
        errors[ui] = r.abs_error_estimate;
        return r.force;
      },
      threads);

  DragAsymptotics fit;
  fit.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    fit.samples.push_back({v0_values[i], forces[i], errors[i]});

  auto fit_regime = [&](const std::vector<std::size_t>& idx, const char* name,
                        double* slope, double* r2) {
    std::vector<double> lx, ly;
    for (std::size_t i : idx) {
      if (!(forces[i] > 0.0))
        throw ConvergenceError(
            "drag_asymptotics: nonpositive force, log-log fit impossible");
      lx.push_back(std::log(v0_values[i] / kappa_scale));
      ly.push_back(std::log(forces[i]));
    }
    const num::LineFit line = num::fit_line(lx, ly);
    if (line.r_squared < 0.99) {
      char msg[130];
      std::snprintf(msg, sizeof(msg),
                    "drag_asymptotics: %s fit quality R^2 = %.4f < 0.99",
                    name, line.r_squared);
      throw ConvergenceError(msg);
    }
    *slope = line.slope;
    *r2 = line.r_squared;
  };

  fit_regime(idx_small, "small-kappa", &fit.p_small, &fit.r2_small);
  fit_regime(idx_large, "large-kappa", &fit.p_large, &fit.r2_large);
  return fit;
}

}  // namespace fed::drag
