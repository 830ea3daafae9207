#include "fed/materials.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fed/errors.hpp"

namespace fed::materials {

namespace {

[[noreturn]] void bad_field(const char* field, const char* requirement,
                            double got) {
  char msg[160];
  std::snprintf(msg, sizeof(msg), "%s: must be %s (got %g)", field,
                requirement, got);
  throw ConfigError(msg);
}

}  // namespace

EpsLattice constant_eps_l(Complex value) {
  return [value](double) { return value; };
}

void PlasmaParams::validate() const {
  if (!(omega_p > 0.0)) bad_field("PlasmaParams.omega_p", "> 0", omega_p);
}

Complex DrudeParams::eps_l_at(double omega) const {
  return eps_l ? eps_l(omega) : Complex(1.0, 0.0);
}

void DrudeParams::validate() const {
  // omega_p = 0 is legal here (no carriers, pure lattice response).
  if (!(omega_p >= 0.0)) bad_field("DrudeParams.omega_p", ">= 0", omega_p);
  if (!(gamma >= 0.0)) bad_field("DrudeParams.gamma", ">= 0", gamma);
}

void DriftParams::validate() const {
  drude.validate();
  if (!v0.allFinite())
    throw ConfigError("DriftParams.v0: components must be finite");
}

void ParticleParams::validate() const {
  if (!(alpha0 > 0.0)) bad_field("ParticleParams.alpha0", "> 0", alpha0);
  if (!(omega0 > 0.0)) bad_field("ParticleParams.omega0", "> 0", omega0);
  if (!(eta > 0.0)) bad_field("ParticleParams.eta", "> 0", eta);
}

double plasma_epsilon(double omega, const PlasmaParams& p) {
  p.validate();
  if (omega == 0.0)
    throw PoleError("plasma_epsilon: double pole at omega = 0");
  return 1.0 - (p.omega_p / omega) * (p.omega_p / omega);
}

Complex drude_epsilon(double omega, const DrudeParams& p) {
  p.validate();
  if (omega == 0.0) throw PoleError("drude_epsilon: pole at omega = 0");
  return p.eps_l_at(omega) -
         p.omega_p * p.omega_p / (omega * Complex(omega, p.gamma));
}

Eigen::Matrix3cd drift_epsilon_tensor(double omega, const Eigen::Vector3d& k,
                                      const DriftParams& p) {
  p.validate();
  if (omega == 0.0)
    throw PoleError("drift_epsilon_tensor: pole at omega = 0");
  const double omega_minus = omega - k.dot(p.v0);
  if (omega_minus == 0.0)
    throw PoleError("drift_epsilon_tensor: pole at omega - k.v0 = 0");

  const Complex eps_l = p.drude.eps_l_at(omega);
  const double wp2 = p.drude.omega_p * p.drude.omega_p;
  const Complex drude_factor =
      wp2 / (omega * Complex(omega_minus, p.drude.gamma));

  Eigen::Matrix3cd eps = Eigen::Matrix3cd::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Complex entry = (i == j) ? eps_l : Complex(0.0, 0.0);
      Complex carrier = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      carrier += p.v0(i) * k(j) / omega_minus;
      eps(i, j) = entry - drude_factor * carrier;
    }
  }
  return eps;
}

Complex drift_epsilon_longitudinal(double omega, double k_dot_v0,
                                   const DriftParams& p) {
  p.validate();
  const double omega_minus = omega - k_dot_v0;
  if (omega_minus == 0.0)
    throw PoleError(
        "drift_epsilon_longitudinal: pole at omega - k.v0 = 0 "
        "(survives any gamma > 0)");
  const double wp2 = p.drude.omega_p * p.drude.omega_p;
  return p.drude.eps_l_at(omega) -
         wp2 / (Complex(omega_minus, p.drude.gamma) * omega_minus);
}

Complex particle_polarizability(double omega, const ParticleParams& p) {
  p.validate();
  const double w02 = p.omega0 * p.omega0;
  return p.alpha0 * w02 / Complex(w02 - omega * omega, -omega * p.eta);
}

Complex surface_response_from_eps(Complex eps) {
  if (eps == Complex(-1.0, 0.0))
    throw PoleError("surface_response: surface-plasmon pole at eps = -1");
  return (eps - 1.0) / (eps + 1.0);
}

Complex surface_response(double omega, double k_x, const DriftParams& p) {
  return surface_response_from_eps(
      drift_epsilon_longitudinal(omega, k_x * p.v0.x(), p));
}

namespace {

// (2/pi) PV int over [nodes.front(), nodes.back()] of
//   w' Im eps(w') / (w'^2 - wt^2) dw',
// by subtracting the singular part: the regularized integrand
//   g = (f(w') - f(wt)) / (w'^2 - wt^2),  f = w' Im eps,
// is integrated by trapezoid (with extra symmetric nodes packed around wt),
// and the subtracted term has the closed form
//   f(wt)/(2 wt) * ln|((W-wt)(wt+a)) / ((W+wt)(wt-a))|  over [a, W].
double kk_pv_integral(const std::function<Complex(double)>& model,
                      const std::vector<double>& nodes, double omega_test) {
  const double a = nodes.front();
  const double cap = nodes.back();

  auto f = [&model](double w) { return w * model(w).imag(); };
  const double ft = f(omega_test);
  // d f / d w at the test point, for the removable 0/0 limit of g.
  const double h = 1e-6 * omega_test;
  const double fprime = (f(omega_test + h) - f(omega_test - h)) / (2.0 * h);

  auto g = [&](double w) {
    const double dw = w - omega_test;
    if (std::abs(dw) < 1e-12 * omega_test) return fprime / (2.0 * omega_test);
    return (f(w) - ft) / (dw * (w + omega_test));
  };

  // Pack symmetric nodes across the cell containing wt; g is regular there,
  // this just resolves its curvature (and makes the leading discretization
  // error around wt cancel pairwise).
  std::vector<double> merged = nodes;
  const auto above =
      std::upper_bound(nodes.begin(), nodes.end(), omega_test);
  if (above != nodes.begin() && above != nodes.end()) {
    const double spacing = *above - *(above - 1);
    const double half = std::min(spacing, 0.5 * omega_test);
    const int m = 24;
    for (int j = 1; j <= m; ++j) {
      const double off = half * j / m;
      if (omega_test - off > a) merged.push_back(omega_test - off);
      if (omega_test + off < cap) merged.push_back(omega_test + off);
    }
    merged.push_back(omega_test);
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  }

  double integral = 0.0;
  double g_prev = g(merged.front());
  for (std::size_t i = 1; i < merged.size(); ++i) {
    const double g_next = g(merged[i]);
    integral += 0.5 * (g_prev + g_next) * (merged[i] - merged[i - 1]);
    g_prev = g_next;
  }

  const double log_term =
      std::log(((cap - omega_test) * (omega_test + a)) /
               ((cap + omega_test) * (omega_test - a)));
  integral += ft / (2.0 * omega_test) * log_term;

  return 2.0 / std::numbers::pi * integral;
}

}  // namespace

double kk_residual(const std::function<Complex(double)>& model,
                   const std::vector<double>& omega_grid, double omega_test) {
  if (!model) throw ConfigError("kk_residual: model must be callable");
  if (omega_grid.size() < 8)
    throw ConfigError("kk_residual: omega_grid needs at least 8 nodes");
  if (!(omega_grid.front() > 0.0))
    throw ConfigError("kk_residual: omega_grid must be positive");
  if (!std::is_sorted(omega_grid.begin(), omega_grid.end()) ||
      std::adjacent_find(omega_grid.begin(), omega_grid.end()) !=
          omega_grid.end())
    throw ConfigError("kk_residual: omega_grid must be strictly ascending");
  if (!(omega_test > omega_grid.front()) ||
      !(omega_test < omega_grid.back()))
    throw ConfigError(
        "kk_residual: omega_test must lie strictly inside the grid range");

  const double re_gap = model(omega_test).real() - 1.0;

  const double integral_coarse = kk_pv_integral(model, omega_grid, omega_test);
  const double coarse = std::abs(re_gap - integral_coarse);

  std::vector<double> refined;
  refined.reserve(2 * omega_grid.size());
  for (std::size_t i = 0; i + 1 < omega_grid.size(); ++i) {
    refined.push_back(omega_grid[i]);
    refined.push_back(0.5 * (omega_grid[i] + omega_grid[i + 1]));
  }
  refined.push_back(omega_grid.back());
  const double integral_fine = kk_pv_integral(model, refined, omega_test);
  const double fine = std::abs(re_gap - integral_fine);

  // 10% stability gate, floored at 0.1% of the scale of the compared
  // quantities so a residual already far below any physical claim cannot
  // trip it on jitter alone.
  const double scale = std::max(std::abs(re_gap), std::abs(integral_fine));
  const double allowed = 0.1 * std::max(std::max(coarse, fine), 1e-3 * scale);
  if (std::abs(fine - coarse) > allowed) {
    char msg[180];
    std::snprintf(msg, sizeof(msg),
                  "kk_residual: grid too coarse, midpoint refinement moved "
                  "the residual from %.6g to %.6g",
                  coarse, fine);
    throw GridError(msg);
  }
  return fine;
}

}  // namespace fed::materials
