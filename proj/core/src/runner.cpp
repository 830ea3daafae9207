#include "fed/runner.hpp"

#include <cmath>
#include <limits>

#include "fed/csv.hpp"
#include "fed/drag.hpp"
#include "fed/errors.hpp"
#include "fed/friction.hpp"
#include "fed/materials.hpp"
#include "fed/numerics.hpp"
#include "fed/spectra.hpp"
#include "fed/version.hpp"

namespace fed::run {

namespace {

io::CsvWriter make_writer(const char* tool, std::vector<std::string> columns) {
  io::CsvWriter w(std::move(columns));
  w.meta("tool", tool);
  w.meta("version", kVersion);
  w.meta("revision", kGitRevision);
  return w;
}

std::vector<double> sweep_grid(double lo, double hi, int points,
                               bool log_spacing) {
  if (points == 1) return {lo};
  return log_spacing ? num::log_grid(lo, hi, points)
                     : num::linear_grid(lo, hi, points);
}

}  // namespace

std::string run_spectra(const SpectraJob& job) {
  const spectra::ThermalState state{job.temperature};
  state.validate();

  if (job.sweep == "delta") {
    const spectra::LosslessTrace trace = spectra::lossless_limit_trace(
        job.omega, job.separation, job.deltas, state);
    io::CsvWriter w = make_writer("spectra", {"delta", "field_density"});
    w.meta("sweep", "delta");
    w.meta("omega", job.omega);
    w.meta("separation", job.separation);
    w.meta("temperature", job.temperature);
    w.meta("vacuum_limit", trace.limit);
    for (const auto& e : trace.entries) w.row({e.delta, e.density});
    return w.str();
  }

  if (job.sweep == "r") {
    io::CsvWriter w =
        make_writer("spectra", {"r", "field_density", "vacuum_density"});
    w.meta("sweep", "r");
    w.meta("omega", job.omega);
    w.meta("temperature", job.temperature);
    w.meta("eps_re", job.eps_re);
    w.meta("eps_im", job.eps_im);
    for (double r : num::linear_grid(job.r_min, job.r_max, job.r_points)) {
      const spectra::MediumPoint point{{job.eps_re, job.eps_im}, r};
      w.row({r, spectra::field_spectral_density(point, job.omega, state),
             spectra::vacuum_density(job.omega, r, state)});
    }
    return w.str();
  }

  throw ConfigError("SpectraJob.sweep: must be \"delta\" or \"r\"");
}

std::string run_friction(const FrictionJob& job) {
  if (!(job.v > 0.0))
    throw ConfigError("FrictionJob.v: must be > 0");
  if (job.d_values.empty())
    throw ConfigError("FrictionJob.d_values: must not be empty");
  if (job.t_points < 2)
    throw ConfigError("FrictionJob.t_points: need >= 2");
  if (!(job.t_max > 0.0))
    throw ConfigError("FrictionJob.t_max: must be > 0");

  const std::vector<double> times =
      num::linear_grid(0.0, job.t_max, job.t_points);

  struct GapTrace {
    double d = 0.0;
    friction::QuantaTrace peak;
    friction::ForceTrace force;
  };
  std::vector<GapTrace> gaps;
  std::vector<std::string> warnings;
  for (double d : job.d_values) {
    const friction::ShearSystem sys{job.omega_sp, d, job.v};
    sys.validate();
    const friction::KGrid grid =
        friction::instability_grid(sys, job.nx, job.ny);
    const friction::WaveVector peak{2.0 * job.omega_sp / job.v, 0.0};
    gaps.push_back({d, friction::quanta_trace(sys, peak, times),
                    friction::force_trace(sys, grid, times, job.area,
                                          job.threads, &warnings)});
  }

  io::CsvWriter w = make_writer(
      "friction-dynamics",
      {"d", "t", "n_peak", "dndt_peak", "force_per_area", "energy"});
  w.meta("omega_sp", job.omega_sp);
  w.meta("v", job.v);
  w.meta("t_max", job.t_max);
  w.meta("t_points", job.t_points);
  w.meta("nx", job.nx);
  w.meta("ny", job.ny);
  w.meta("area", job.area);
  for (const auto& warning : warnings) w.comment("warning: " + warning);
  for (const auto& gap : gaps)
    for (std::size_t i = 0; i < times.size(); ++i)
      w.row({gap.d, times[i], gap.peak.n[i], gap.peak.dndt[i],
             gap.force.force_per_area[i], gap.force.energy[i]});
  return w.str();
}

std::string run_pendry(const PendryJob& job) {
  const bool sweep_v = (job.sweep == "v");
  if (!sweep_v && job.sweep != "d")
    throw ConfigError("PendryJob.sweep: must be \"v\" or \"d\"");
  if (job.points < 1) throw ConfigError("PendryJob.points: need >= 1");
  if (!(job.v > 0.0)) throw ConfigError("PendryJob.v: must be > 0");
  if (!(job.d > 0.0)) throw ConfigError("PendryJob.d: must be > 0");

  io::CsvWriter w =
      make_writer("pendry-force", {"v", "d", "force", "force_window"});
  w.meta("sweep", job.sweep);
  w.meta("omega_sp", job.omega_sp);
  w.meta("rel_tol", job.rel_tol);
  for (double x : sweep_grid(job.lo, job.hi, job.points, job.log_spacing)) {
    const friction::ShearSystem sys{job.omega_sp, sweep_v ? job.d : x,
                                    sweep_v ? x : job.v};
    sys.validate();
    w.row({sys.v, sys.d, friction::pendry_force(sys, job.rel_tol),
           friction::pendry_force_intermediate(sys, job.rel_tol)});
  }
  return w.str();
}

std::string run_drag(const DragJob& job, int* nonconverged_rows) {
  const bool sweep_v0 = (job.sweep == "v0");
  const bool sweep_z0 = (job.sweep == "z0");
  if (!sweep_v0 && !sweep_z0 && job.sweep != "none")
    throw ConfigError("DragJob.sweep: must be \"v0\", \"z0\", or \"none\"");
  if (job.points < 1) throw ConfigError("DragJob.points: need >= 1");

  drag::DragConfig base;
  base.plate.drude = {job.omega_p, job.gamma,
                      materials::constant_eps_l({job.eps_l, 0.0})};
  base.plate.v0 = Eigen::Vector3d(job.v0, 0.0, 0.0);
  base.particle = {job.alpha0, job.omega0, job.eta};
  base.z0 = job.z0;
  base.t_el = job.t_el;
  base.t_p = job.t_p;
  base.validate();

  const std::vector<double> grid =
      job.sweep == "none"
          ? std::vector<double>{sweep_z0 ? job.z0 : job.v0}
          : sweep_grid(job.lo, job.hi, job.points, job.log_spacing);

  struct Row {
    double force = 0.0;
    double error = 0.0;
    double evaluations = 0.0;
    double converged = 0.0;
  };
  const std::vector<Row> results = num::parallel_map(
      static_cast<int>(grid.size()),
      [&](int i) {
        drag::DragConfig cfg = base;
        if (sweep_z0)
          cfg.z0 = grid[static_cast<std::size_t>(i)];
        else if (sweep_v0)
          cfg.plate.v0.x() = grid[static_cast<std::size_t>(i)];
        try {
          const drag::DragResult r =
              drag::drag_force(cfg, job.tol, job.max_evals);
          return Row{r.force, r.abs_error_estimate,
                     static_cast<double>(r.evaluations), 1.0};
        } catch (const ConvergenceError&) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          return Row{nan, nan, 0.0, 0.0};
        }
      },
      job.threads);

  io::CsvWriter w = make_writer(
      "drag-force",
      {"v0", "z0", "force", "abs_error_estimate", "evaluations", "converged"});
  w.meta("sweep", job.sweep);
  w.meta("omega_p", job.omega_p);
  w.meta("gamma", job.gamma);
  w.meta("eps_l", job.eps_l);
  w.meta("alpha0", job.alpha0);
  w.meta("omega0", job.omega0);
  w.meta("eta", job.eta);
  w.meta("t_el", job.t_el);
  w.meta("t_p", job.t_p);
  w.meta("tol", job.tol);
  w.meta("max_evals", static_cast<double>(job.max_evals));

  int failed = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Row& r = results[i];
    if (r.converged == 0.0) ++failed;
    w.row({sweep_z0 ? job.v0 : grid[i], sweep_z0 ? grid[i] : job.z0, r.force,
           r.error, r.evaluations, r.converged});
  }
  if (nonconverged_rows) *nonconverged_rows = failed;
  return w.str();
}

std::string run_kk(const KkJob& job) {
  std::function<materials::Complex(double)> model;
  if (job.model == "drude") {
    const materials::DrudeParams p{job.omega_p, job.gamma,
                                   materials::constant_eps_l({job.eps_l, 0.0})};
    p.validate();
    model = [p](double w) { return materials::drude_epsilon(w, p); };
  } else if (job.model == "plasma") {
    const materials::PlasmaParams p{job.omega_p};
    p.validate();
    model = [p](double w) {
      return materials::Complex(materials::plasma_epsilon(w, p), 0.0);
    };
  } else {
    throw ConfigError("KkJob.model: must be \"drude\" or \"plasma\"");
  }
  if (job.test_points < 1) throw ConfigError("KkJob.test_points: need >= 1");

  const std::vector<double> nodes =
      num::log_grid(job.grid_min, job.grid_max, job.grid_points);
  io::CsvWriter w =
      make_writer("kk-check", {"omega_test", "residual", "eps_re", "eps_im"});
  w.meta("model", job.model);
  w.meta("omega_p", job.omega_p);
  if (job.model == "drude") {
    w.meta("gamma", job.gamma);
    w.meta("eps_l", job.eps_l);
  }
  w.meta("grid_min", job.grid_min);
  w.meta("grid_max", job.grid_max);
  w.meta("grid_points", job.grid_points);
  for (double wt :
       sweep_grid(job.test_lo, job.test_hi, job.test_points, false)) {
    const materials::Complex eps = model(wt);
    w.row({wt, materials::kk_residual(model, nodes, wt), eps.real(),
           eps.imag()});
  }
  return w.str();
}

}  // namespace fed::run
