#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fed::run {

/// Parameter sets behind the CLI subcommands, one struct per subcommand.
/// Every run_* function validates its job, computes the sweep, and returns
/// the complete CSV document (metadata header echoing the job, then rows).
/// Output is deterministic: a fixed job yields a bit-identical string.

struct SpectraJob {
  std::string sweep = "delta";  // "delta": lossless-limit trace; "r": profile
  double omega = 1.0;
  double separation = 1.0;      // R used by the delta sweep
  double temperature = 0.0;
  std::vector<double> deltas = {1e-2, 1e-3, 1e-4, 1e-5};  // descending
  double eps_re = 1.0;          // medium for the r sweep
  double eps_im = 0.0;
  double r_min = 0.5;
  double r_max = 10.0;
  int r_points = 64;
};

struct FrictionJob {
  double omega_sp = 1.0;
  double v = 1.0;
  std::vector<double> d_values = {0.6, 1.15, 1.75};  // gap sizes to trace
  double t_max = 400.0;
  int t_points = 201;
  int nx = 32;  // instability-window grid resolution
  int ny = 32;
  double area = 1.0;
  int threads = 0;
};

struct PendryJob {
  std::string sweep = "v";  // "v" or "d"
  double omega_sp = 1.0;
  double v = 0.5;           // held fixed when sweeping d
  double d = 1.0;           // held fixed when sweeping v
  double lo = 0.2;
  double hi = 1.0;
  int points = 17;
  bool log_spacing = false;
  double rel_tol = 1e-9;
};

struct DragJob {
  std::string sweep = "v0";  // "v0", "z0", or "none" (single point)
  double omega_p = 2.0;
  double gamma = 0.1;
  double eps_l = 1.0;        // real constant background
  double v0 = 0.1;
  double alpha0 = 1.0;
  double omega0 = 1.0;
  double eta = 0.1;
  double z0 = 1.0;
  double t_el = 0.0;
  double t_p = 0.0;
  double lo = 0.01;
  double hi = 1.0;
  int points = 9;
  bool log_spacing = true;
  double tol = 1e-4;
  std::int64_t max_evals = 200'000'000;  // per-point integrand budget
  int threads = 0;
};

struct KkJob {
  std::string model = "drude";  // "drude" or "plasma"
  double omega_p = 1.0;
  double gamma = 0.2;
  double eps_l = 1.0;
  double test_lo = 0.5;  // omega_test sweep (linear); points = 1 uses test_lo
  double test_hi = 2.0;
  int test_points = 1;
  double grid_min = 1e-4;
  double grid_max = 100.0;
  int grid_points = 4000;
};

std::string run_spectra(const SpectraJob& job);

/// Per gap d: quanta trace of the peak channel (ky = 0, kx = 2 omega_sp/v)
/// and the grid friction force, on a shared time grid. Coverage warnings
/// come back as '# warning' lines.
std::string run_friction(const FrictionJob& job);

std::string run_pendry(const PendryJob& job);

/// Rows that fail to converge are kept (converged = 0) so a sweep survives
/// a bad corner; nonconverged_rows (when given) receives the count so the
/// caller decides whether that fails the run.
std::string run_drag(const DragJob& job, int* nonconverged_rows = nullptr);

std::string run_kk(const KkJob& job);

}  // namespace fed::run
