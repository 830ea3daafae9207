#include "fed/friction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "fed/errors.hpp"
#include "fed/numerics.hpp"

namespace fed::friction {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kImag(0.0, 1.0);

// Eigenvector-matrix quality gates. Past either one the diagonalization
// formula for U(t) is not trusted and evolution falls back to expm.
constexpr double kMaxCond = 1e6;
constexpr double kMaxDiagResidual = 1e-11;

void check_times(const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0))
      throw ConfigError("times: entries must be >= 0");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw ConfigError("times: entries must be strictly ascending");
  }
}

}  // namespace

void ShearSystem::validate() const {
  if (!(omega_sp > 0.0))
    throw ConfigError("ShearSystem.omega_sp: must be > 0");
  if (!(d > 0.0)) throw ConfigError("ShearSystem.d: must be > 0");
  if (!(v >= 0.0)) throw ConfigError("ShearSystem.v: must be >= 0");
}

double WaveVector::k_par() const { return std::hypot(kx, ky); }

double WaveVector::coupling(double d) const { return std::exp(-k_par() * d); }

Eigen::Matrix4cd mode_matrix(const ShearSystem& sys, const WaveVector& k) {
  sys.validate();
  const double wsp = sys.omega_sp;
  const double g = 0.5 * wsp * k.coupling(sys.d);
  const double kv2 = 0.5 * k.kx * sys.v;  // Doppler detuning k.v/2

  Eigen::Matrix4cd m;
  m << wsp - kv2, g, 0.0, g,
      g, wsp + kv2, g, 0.0,
      0.0, -g, -(wsp + kv2), -g,
      -g, 0.0, -g, -(wsp - kv2);
  return m;
}

std::array<Complex, 4> eigenvalues_closed_form(const ShearSystem& sys,
                                               const WaveVector& k) {
  sys.validate();
  const double wsp = sys.omega_sp;
  const double kv = k.kx * sys.v;
  const double eps = k.coupling(sys.d);
  const double inner = std::sqrt(eps * eps + (kv / wsp) * (kv / wsp));
  const double base = wsp * wsp + 0.25 * kv * kv;
  // base - wsp^2 inner cancels badly when the minus pair sits near zero
  // (Doppler resonance at weak coupling), so evaluate it in a factored
  // form that keeps the relative accuracy of the small radicand.
  const double gap = wsp * wsp - 0.25 * kv * kv;
  const double split = wsp * wsp * eps;
  const double minus_radicand =
      (gap - split) * (gap + split) / (base + wsp * wsp * inner);
  // Principal branch: a negative radicand puts w- on the positive
  // imaginary axis (the growing channel).
  const Complex w_plus = std::sqrt(Complex(base + wsp * wsp * inner, 0.0));
  const Complex w_minus = std::sqrt(Complex(minus_radicand, 0.0));
  return {w_plus, w_minus, -w_minus, -w_plus};
}

std::array<Complex, 4> dense_eigenvalues(const ShearSystem& sys,
                                         const WaveVector& k) {
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(mode_matrix(sys, k),
                                                     false);
  std::array<Complex, 4> out;
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

std::optional<Interval> instability_window(const ShearSystem& sys,
                                           double k_par,
                                           const Eigen::Vector2d& direction,
                                           WindowMode mode) {
  sys.validate();
  if (!(k_par >= 0.0))
    throw ConfigError("instability_window: k_par must be >= 0");
  if (std::abs(direction.norm() - 1.0) > 1e-9)
    throw ConfigError("instability_window: direction must be a unit vector");
  if (sys.v == 0.0 || direction.x() == 0.0) return std::nullopt;

  const double eps = std::exp(-k_par * sys.d);
  if (mode == WindowMode::approximate)
    return Interval{2.0 - eps, 2.0 + eps};

  // Exact endpoints: sign changes of the w- radicand as a function of
  // u = |k.v|/omega_sp,  r(u) = 1 + u^2/4 - sqrt(eps^2 + u^2).
  auto radicand = [eps](double u) {
    return 1.0 + 0.25 * u * u - std::sqrt(eps * eps + u * u);
  };
  const double u_tiny = 1e-12;
  const double lo = radicand(u_tiny) <= 0.0
                        ? 0.0
                        : num::find_root(radicand, u_tiny, 2.0);
  const double hi = num::find_root(radicand, 2.0, 4.0);
  return Interval{lo, hi};
}

double growth_rate(const ShearSystem& sys, const WaveVector& k) {
  return std::max(0.0, eigenvalues_closed_form(sys, k)[1].imag());
}

double growth_rate_approx(const ShearSystem& sys, const WaveVector& k) {
  sys.validate();
  if (!(sys.v > 0.0))
    throw ConfigError("growth_rate_approx: requires v > 0");
  const double eps = k.coupling(sys.d);
  const double center = 2.0 * sys.omega_sp / sys.v;
  const double half_width = sys.omega_sp / sys.v * eps;
  const double x = (std::abs(k.kx) - center) / half_width;
  if (std::abs(x) >= 1.0) return 0.0;
  return 0.5 * sys.omega_sp * eps * std::sqrt(1.0 - x * x);
}

ModeEvolution analyze_modes(const ShearSystem& sys, const WaveVector& k) {
  ModeEvolution me;
  me.matrix = mode_matrix(sys, k);
  me.eigenvalues = eigenvalues_closed_form(sys, k);

  // One null-space solve per closed-form eigenvalue.
  for (int j = 0; j < 4; ++j) {
    const Eigen::Matrix4cd shifted =
        me.matrix - me.eigenvalues[static_cast<std::size_t>(j)] *
                        Eigen::Matrix4cd::Identity();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(shifted, Eigen::ComputeFullV);
    me.S.col(j) = svd.matrixV().col(3);
  }

  Eigen::JacobiSVD<Eigen::Matrix4cd> s_svd(me.S);
  const double s_min = s_svd.singularValues()(3);
  me.cond_S = s_min > 0.0 ? s_svd.singularValues()(0) / s_min
                          : std::numeric_limits<double>::infinity();

  // A nearly-degenerate null space can hand back orthonormal columns that
  // are not eigenvectors, so a good condition number alone proves nothing;
  // check M S = S Lambda directly as well.
  Eigen::Vector4cd lambda;
  for (int j = 0; j < 4; ++j) lambda(j) = me.eigenvalues[static_cast<std::size_t>(j)];
  const double residual =
      (me.matrix * me.S - me.S * lambda.asDiagonal()).norm() /
      me.matrix.norm();
  me.diagonalizable = me.cond_S < kMaxCond && residual < kMaxDiagResidual;

  me.growth_rate = std::max(0.0, me.eigenvalues[1].imag());
  if (me.growth_rate > 0.0) me.tau = 1.0 / (2.0 * me.growth_rate);
  return me;
}

Eigen::Matrix4cd evolution_operator(const ModeEvolution& modes, double t) {
  if (!(t >= 0.0)) throw ConfigError("evolution_operator: t must be >= 0");
  if (t == 0.0) return Eigen::Matrix4cd::Identity();
  if (modes.diagonalizable) {
    Eigen::Vector4cd phases;
    for (int j = 0; j < 4; ++j)
      phases(j) =
          std::exp(-kImag * modes.eigenvalues[static_cast<std::size_t>(j)] * t);
    return modes.S * phases.asDiagonal() * modes.S.inverse();
  }
  // Exceptional-point fallback: scaling-and-squaring exponential.
  const Eigen::Matrix4cd a = -kImag * t * modes.matrix;
  return a.exp();
}

Eigen::Matrix4cd evolution_operator(const ShearSystem& sys,
                                    const WaveVector& k, double t) {
  return evolution_operator(analyze_modes(sys, k), t);
}

namespace {

struct PairEvolution {
  ModeEvolution plus;
  ModeEvolution minus;
};

PairEvolution analyze_pair(const ShearSystem& sys, const WaveVector& k) {
  return {analyze_modes(sys, k), analyze_modes(sys, WaveVector{-k.kx, -k.ky})};
}

double surface_quanta(const Eigen::Matrix4cd& u_plus,
                      const Eigen::Matrix4cd& u_minus, int row) {
  return std::norm(u_plus(row, 2)) + std::norm(u_plus(row, 3)) +
         std::norm(u_minus(row, 2)) + std::norm(u_minus(row, 3));
}

// The +-k evolutions are computed independently, so agreement of the two
// surface counts is a real cross-check, not an identity of the code path.
double checked_quanta(const Eigen::Matrix4cd& u_plus,
                      const Eigen::Matrix4cd& u_minus) {
  const double n1 = surface_quanta(u_plus, u_minus, 0);
  const double n2 = surface_quanta(u_plus, u_minus, 1);
  if (std::abs(n1 - n2) > 1e-8 * std::max(1.0, std::max(n1, n2))) {
    char msg[140];
    std::snprintf(msg, sizeof(msg),
                  "quanta_number: surface counts disagree (N1 = %.12g, "
                  "N2 = %.12g)",
                  n1, n2);
    throw SymmetryError(msg);
  }
  return n1;
}

double quanta_rate(const PairEvolution& pair, const Eigen::Matrix4cd& u_plus,
                   const Eigen::Matrix4cd& u_minus) {
  // dN/dt from dU/dt = -i M U: d|U_1j|^2/dt = 2 Re(conj(U_1j) (-i M U)_1j).
  const Eigen::Matrix4cd du_plus = -kImag * (pair.plus.matrix * u_plus);
  const Eigen::Matrix4cd du_minus = -kImag * (pair.minus.matrix * u_minus);
  double rate = 0.0;
  for (int j = 2; j < 4; ++j) {
    rate += 2.0 * std::real(std::conj(u_plus(0, j)) * du_plus(0, j));
    rate += 2.0 * std::real(std::conj(u_minus(0, j)) * du_minus(0, j));
  }
  return rate;
}

}  // namespace

double quanta_number(const ShearSystem& sys, const WaveVector& k, double t) {
  const PairEvolution pair = analyze_pair(sys, k);
  return checked_quanta(evolution_operator(pair.plus, t),
                        evolution_operator(pair.minus, t));
}

QuantaTrace quanta_trace(const ShearSystem& sys, const WaveVector& k,
                         const std::vector<double>& times) {
  check_times(times);
  const PairEvolution pair = analyze_pair(sys, k);
  QuantaTrace trace;
  trace.times = times;
  trace.n.reserve(times.size());
  trace.dndt.reserve(times.size());
  for (double t : times) {
    const Eigen::Matrix4cd u_plus = evolution_operator(pair.plus, t);
    const Eigen::Matrix4cd u_minus = evolution_operator(pair.minus, t);
    trace.n.push_back(checked_quanta(u_plus, u_minus));
    trace.dndt.push_back(quanta_rate(pair, u_plus, u_minus));
  }
  return trace;
}

KGrid instability_grid(const ShearSystem& sys, int nx, int ny) {
  sys.validate();
  if (!(sys.v > 0.0))
    throw ConfigError("instability_grid: requires v > 0");
  if (nx < 1 || ny < 1)
    throw ConfigError("instability_grid: nx and ny must be >= 1");

  const double center = 2.0 * sys.omega_sp / sys.v;
  const double eps0 = std::exp(-center * sys.d);
  const double half = 3.0 * eps0 * sys.omega_sp / sys.v;
  const double kx_lo = std::max(center - half, 1e-3 * center);
  const double kx_hi = center + half;

  // ky reach: where the squared coupling has dropped to 1e-6.
  const double k_cut = 3.0 * std::log(10.0) / sys.d;
  double ky_max = std::sqrt(std::max(k_cut * k_cut - center * center, 0.0));
  ky_max = std::max(ky_max, half);

  KGrid grid;
  const double dkx = (kx_hi - kx_lo) / nx;
  const double dky = 2.0 * ky_max / ny;
  grid.cell_area = dkx * dky;
  grid.points.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  // Cell centers: no point lands exactly on a window edge (exceptional point).
  for (int i = 0; i < nx; ++i) {
    const double kx = kx_lo + (i + 0.5) * dkx;
    for (int j = 0; j < ny; ++j) {
      grid.points.push_back(WaveVector{kx, -ky_max + (j + 0.5) * dky});
    }
  }
  return grid;
}

namespace {

void check_grid_coverage(const ShearSystem& sys, const KGrid& grid,
                         std::vector<std::string>* warnings) {
  if (warnings == nullptr) return;
  std::vector<double> unstable_kx;
  for (const WaveVector& k : grid.points) {
    if (growth_rate(sys, k) > 0.0) unstable_kx.push_back(k.kx);
  }
  std::sort(unstable_kx.begin(), unstable_kx.end());
  unstable_kx.erase(std::unique(unstable_kx.begin(), unstable_kx.end()),
                    unstable_kx.end());
  if (unstable_kx.size() < 16) {
    char msg[120];
    std::snprintf(msg, sizeof(msg),
                  "unstable window sampled by only %zu k_x columns (< 16)",
                  unstable_kx.size());
    warnings->push_back(msg);
  }
}

double mode_weight(const KGrid& grid, double area) {
  return area * grid.cell_area / (4.0 * kPi * kPi);
}

}  // namespace

double total_energy(const ShearSystem& sys, const KGrid& grid, double t,
                    double area, std::vector<std::string>* warnings) {
  sys.validate();
  if (!(area > 0.0)) throw ConfigError("total_energy: area must be > 0");
  check_grid_coverage(sys, grid, warnings);
  double sum = 0.0;
  for (const WaveVector& k : grid.points) sum += quanta_number(sys, k, t);
  return 2.0 * sys.omega_sp * sum * mode_weight(grid, area);
}

double friction_force(const ShearSystem& sys, const KGrid& grid, double t,
                      double area, int threads,
                      std::vector<std::string>* warnings) {
  sys.validate();
  if (!(area > 0.0)) throw ConfigError("friction_force: area must be > 0");
  if (sys.v == 0.0) return 0.0;
  check_grid_coverage(sys, grid, warnings);

  const int n = static_cast<int>(grid.points.size());
  const std::vector<double> rates = num::parallel_map(
      n,
      [&](int i) {
        const PairEvolution pair =
            analyze_pair(sys, grid.points[static_cast<std::size_t>(i)]);
        return quanta_rate(pair, evolution_operator(pair.plus, t),
                           evolution_operator(pair.minus, t));
      },
      threads);

  double sum = 0.0;
  for (double r : rates) sum += r;
  // Per unit area: the plate area in the mode count cancels the 1/A in F/A.
  return 2.0 * sys.omega_sp / sys.v * sum * mode_weight(grid, 1.0);
}

ForceTrace force_trace(const ShearSystem& sys, const KGrid& grid,
                       const std::vector<double>& times, double area,
                       int threads, std::vector<std::string>* warnings) {
  sys.validate();
  if (!(area > 0.0)) throw ConfigError("force_trace: area must be > 0");
  check_times(times);
  check_grid_coverage(sys, grid, warnings);

  const std::size_t n_k = grid.points.size();
  const std::size_t n_t = times.size();
  std::vector<double> n_all(n_k * n_t);
  std::vector<double> rate_all(n_k * n_t);

  // One eigenstructure solve per wave vector; each worker owns its slab.
  num::parallel_map(
      static_cast<int>(n_k),
      [&](int i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        const PairEvolution pair = analyze_pair(sys, grid.points[ui]);
        for (std::size_t j = 0; j < n_t; ++j) {
          const Eigen::Matrix4cd u_plus =
              evolution_operator(pair.plus, times[j]);
          const Eigen::Matrix4cd u_minus =
              evolution_operator(pair.minus, times[j]);
          n_all[ui * n_t + j] = checked_quanta(u_plus, u_minus);
          rate_all[ui * n_t + j] = quanta_rate(pair, u_plus, u_minus);
        }
        return 0.0;
      },
      threads);

  ForceTrace trace;
  trace.times = times;
  trace.force_per_area.assign(n_t, 0.0);
  trace.energy.assign(n_t, 0.0);
  for (std::size_t j = 0; j < n_t; ++j) {
    double n_sum = 0.0;
    double rate_sum = 0.0;
    for (std::size_t i = 0; i < n_k; ++i) {
      n_sum += n_all[i * n_t + j];
      rate_sum += rate_all[i * n_t + j];
    }
    trace.energy[j] = 2.0 * sys.omega_sp * n_sum * mode_weight(grid, area);
    trace.force_per_area[j] =
        sys.v > 0.0
            ? 2.0 * sys.omega_sp / sys.v * rate_sum * mode_weight(grid, 1.0)
            : 0.0;
  }
  return trace;
}

namespace {

double pendry_ky_cut(const ShearSystem& sys, double center) {
  // Out to where e^{-2 k d} has fallen ~30 decades below its ky = 0 value.
  const double k_cut = center + 35.0 / sys.d;
  return std::sqrt(k_cut * k_cut - center * center);
}

}  // namespace

double pendry_force(const ShearSystem& sys, double rel_tol) {
  sys.validate();
  if (!(sys.v > 0.0)) throw ConfigError("pendry_force: requires v > 0");
  if (!(rel_tol > 0.0))
    throw ConfigError("pendry_force: rel_tol must be > 0");

  const double wsp = sys.omega_sp;
  const double center = 2.0 * wsp / sys.v;
  auto integrand = [&](double ky) {
    return std::exp(-2.0 * std::hypot(ky, center) * sys.d);
  };
  num::QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  const double integral =
      2.0 * num::integrate(integrand, 0.0, pendry_ky_cut(sys, center), opts)
                .value;
  return wsp * wsp * wsp / (4.0 * kPi * sys.v * sys.v) * integral;
}

double pendry_force_intermediate(const ShearSystem& sys, double rel_tol) {
  sys.validate();
  if (!(sys.v > 0.0))
    throw ConfigError("pendry_force_intermediate: requires v > 0");
  if (!(rel_tol > 0.0))
    throw ConfigError("pendry_force_intermediate: rel_tol must be > 0");

  const double wsp = sys.omega_sp;
  const double v = sys.v;
  const double center = 2.0 * wsp / v;

  // Window integral of the growth rate at fixed ky, with the coupling frozen
  // at the window center (same approximation that makes the kx integral a
  // half-circle area and collapses the double integral to the final form).
  auto window_integral = [&](double ky) {
    const double eps_k = std::exp(-std::hypot(ky, center) * sys.d);
    if (eps_k == 0.0) return 0.0;
    const double half_width = wsp / v * eps_k;
    auto rate = [&](double theta) {
      const double c = std::cos(theta);
      return 0.5 * wsp * eps_k * half_width * c * c;
    };
    num::QuadratureOptions inner_opts;
    inner_opts.rel_tol = 0.1 * rel_tol;
    const double value =
        num::integrate(rate, -0.5 * kPi, 0.5 * kPi, inner_opts).value;
    const double closed = 0.25 * kPi * wsp * wsp / v * eps_k * eps_k;
    if (std::abs(value - closed) > rel_tol * closed)
      throw SymmetryError(
          "pendry_force_intermediate: window integral deviates from its "
          "closed form");
    return value;
  };

  num::QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  const double ky_int =
      num::integrate(window_integral, 0.0, pendry_ky_cut(sys, center), opts)
          .value;
  return 2.0 * wsp / v / (kPi * kPi) * ky_int;
}

}  // namespace fed::friction
