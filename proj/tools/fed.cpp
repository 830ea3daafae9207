#include <algorithm>
#include <cstddef>
#include <exception>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fed/csv.hpp"
#include "fed/errors.hpp"
#include "fed/runner.hpp"
#include "fed/version.hpp"

// Exit codes: 0 success, 2 bad configuration, 3 non-convergence (including
// drag sweeps where any row failed to converge), 1 anything else.

namespace {

void add_config_and_out(CLI::App* sub, std::string* out) {
  sub->add_option("--config",
                  "parameter file, flat key = value lines (flags override)");
  sub->add_option("--out", *out, "output CSV path ('-' for stdout)")
      ->capture_default_str();
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  const auto b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
}

// The parameter file is applied before CLI11 runs: every "key = value" line
// becomes "--key=value" unless that option already appears on the command
// line, so explicit flags always win.
std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  std::set<std::string> given;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg.rfind("--", 0) != 0) continue;
    const std::string name = arg.substr(0, arg.find('='));
    given.insert(name);
    if (name != "--config") continue;
    if (arg.find('=') != std::string::npos)
      path = arg.substr(arg.find('=') + 1);
    else if (i + 1 < args.size())
      path = args[i + 1];
  }
  if (path.empty()) return args;

  std::ifstream file(path);
  if (!file) throw fed::ConfigError("config: cannot open '" + path + "'");
  std::string line;
  while (std::getline(file, line)) {
    line = trimmed(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw fed::ConfigError("config: expected 'key = value', got '" + line +
                             "'");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    if (key.empty() || key.front() == '-')
      throw fed::ConfigError("config: bad key in '" + line + "'");
    if (key == "config")
      throw fed::ConfigError("config: files cannot chain to other files");
    if (given.count("--" + key) != 0) continue;
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fluctuational-electrodynamics toolkit"};
  app.set_version_flag("--version", fed::kVersion);
  app.require_subcommand(1);

  fed::run::SpectraJob spectra_job;
  std::string spectra_out = "-";
  CLI::App* spectra = app.add_subcommand(
      "spectra", "field and current spectral densities (CSV)");
  add_config_and_out(spectra, &spectra_out);
  spectra->add_option("--sweep", spectra_job.sweep,
                      "'delta' (lossless-limit trace) or 'r' (profile)")
      ->capture_default_str();
  spectra->add_option("--omega", spectra_job.omega, "frequency")
      ->capture_default_str();
  spectra->add_option("--separation", spectra_job.separation,
                      "R for the delta sweep")
      ->capture_default_str();
  spectra->add_option("--temperature", spectra_job.temperature, "T (k_B = 1)")
      ->capture_default_str();
  spectra
      ->add_option("--deltas", spectra_job.deltas,
                   "descending Im eps values, comma separated")
      ->delimiter(',');
  spectra->add_option("--eps-re", spectra_job.eps_re, "Re eps for the r sweep")
      ->capture_default_str();
  spectra->add_option("--eps-im", spectra_job.eps_im, "Im eps for the r sweep")
      ->capture_default_str();
  spectra->add_option("--r-min", spectra_job.r_min, "r sweep start")
      ->capture_default_str();
  spectra->add_option("--r-max", spectra_job.r_max, "r sweep end")
      ->capture_default_str();
  spectra->add_option("--r-points", spectra_job.r_points, "r sweep length")
      ->capture_default_str();
  spectra->add_option("--tol", "accepted for flag uniformity; closed forms");
  spectra->add_option("--threads", "accepted for flag uniformity; closed forms");

  fed::run::FrictionJob friction_job;
  std::string friction_out = "-";
  CLI::App* friction = app.add_subcommand(
      "friction-dynamics", "sheared-plate mode growth and force traces (CSV)");
  add_config_and_out(friction, &friction_out);
  friction->add_option("--omega-sp", friction_job.omega_sp,
                       "surface-plasmon frequency")
      ->capture_default_str();
  friction->add_option("--v", friction_job.v, "shear speed")
      ->capture_default_str();
  friction
      ->add_option("--d", friction_job.d_values,
                   "gap sizes, comma separated")
      ->delimiter(',');
  friction->add_option("--t-max", friction_job.t_max, "trace end time")
      ->capture_default_str();
  friction->add_option("--t-points", friction_job.t_points, "trace length")
      ->capture_default_str();
  friction->add_option("--nx", friction_job.nx, "kx grid resolution")
      ->capture_default_str();
  friction->add_option("--ny", friction_job.ny, "ky grid resolution")
      ->capture_default_str();
  friction->add_option("--area", friction_job.area, "plate area (energy only)")
      ->capture_default_str();
  friction->add_option("--threads", friction_job.threads,
                       "worker threads (0 = hardware)")
      ->capture_default_str();
  friction->add_option("--tol", "accepted for flag uniformity; grid sums");

  fed::run::PendryJob pendry_job;
  std::string pendry_out = "-";
  CLI::App* pendry = app.add_subcommand(
      "pendry-force", "stationary friction force sweeps (CSV)");
  add_config_and_out(pendry, &pendry_out);
  pendry->add_option("--sweep", pendry_job.sweep, "'v' or 'd'")
      ->capture_default_str();
  pendry->add_option("--omega-sp", pendry_job.omega_sp,
                     "surface-plasmon frequency")
      ->capture_default_str();
  pendry->add_option("--v", pendry_job.v, "shear speed (fixed when sweeping d)")
      ->capture_default_str();
  pendry->add_option("--d", pendry_job.d, "gap (fixed when sweeping v)")
      ->capture_default_str();
  pendry->add_option("--lo", pendry_job.lo, "sweep start")
      ->capture_default_str();
  pendry->add_option("--hi", pendry_job.hi, "sweep end")
      ->capture_default_str();
  pendry->add_option("--points", pendry_job.points, "sweep length")
      ->capture_default_str();
  pendry->add_flag("--log-spacing", pendry_job.log_spacing,
                   "logarithmic sweep grid");
  pendry->add_option("--tol", pendry_job.rel_tol,
                     "relative quadrature tolerance")
      ->capture_default_str();
  pendry->add_option("--threads", "accepted for flag uniformity; single sweep");

  fed::run::DragJob drag_job;
  std::string drag_out = "-";
  CLI::App* drag = app.add_subcommand(
      "drag-force", "current-induced drag on a particle above a plate (CSV)");
  add_config_and_out(drag, &drag_out);
  drag->add_option("--sweep", drag_job.sweep, "'v0', 'z0', or 'none'")
      ->capture_default_str();
  drag->add_option("--omega-p", drag_job.omega_p, "plate plasma frequency")
      ->capture_default_str();
  drag->add_option("--gamma", drag_job.gamma, "plate collision rate")
      ->capture_default_str();
  drag->add_option("--eps-l", drag_job.eps_l, "plate lattice background (real)")
      ->capture_default_str();
  drag->add_option("--v0", drag_job.v0, "drift speed (fixed when sweeping z0)")
      ->capture_default_str();
  drag->add_option("--alpha0", drag_job.alpha0, "particle static polarizability")
      ->capture_default_str();
  drag->add_option("--omega0", drag_job.omega0, "particle resonance")
      ->capture_default_str();
  drag->add_option("--eta", drag_job.eta, "particle damping")
      ->capture_default_str();
  drag->add_option("--z0", drag_job.z0, "height (fixed when sweeping v0)")
      ->capture_default_str();
  drag->add_option("--t-el", drag_job.t_el, "electron temperature")
      ->capture_default_str();
  drag->add_option("--t-p", drag_job.t_p, "particle temperature")
      ->capture_default_str();
  drag->add_option("--lo", drag_job.lo, "sweep start")->capture_default_str();
  drag->add_option("--hi", drag_job.hi, "sweep end")->capture_default_str();
  drag->add_option("--points", drag_job.points, "sweep length")
      ->capture_default_str();
  drag->add_flag("--log-spacing,!--linear-spacing", drag_job.log_spacing,
                 "logarithmic sweep grid");
  drag->add_option("--tol", drag_job.tol, "relative tolerance on each force")
      ->capture_default_str();
  drag->add_option("--max-evals", drag_job.max_evals,
                   "integrand evaluation budget per sweep point")
      ->capture_default_str();
  drag->add_option("--threads", drag_job.threads,
                   "worker threads (0 = hardware)")
      ->capture_default_str();

  fed::run::KkJob kk_job;
  std::string kk_out = "-";
  CLI::App* kk = app.add_subcommand(
      "kk-check", "Kramers-Kronig residuals of the response models (CSV)");
  add_config_and_out(kk, &kk_out);
  kk->add_option("--model", kk_job.model, "'drude' or 'plasma'")
      ->capture_default_str();
  kk->add_option("--omega-p", kk_job.omega_p, "plasma frequency")
      ->capture_default_str();
  kk->add_option("--gamma", kk_job.gamma, "collision rate (drude)")
      ->capture_default_str();
  kk->add_option("--eps-l", kk_job.eps_l, "lattice background (drude)")
      ->capture_default_str();
  kk->add_option("--test-lo", kk_job.test_lo, "first test frequency")
      ->capture_default_str();
  kk->add_option("--test-hi", kk_job.test_hi, "last test frequency")
      ->capture_default_str();
  kk->add_option("--test-points", kk_job.test_points, "test sweep length")
      ->capture_default_str();
  kk->add_option("--grid-min", kk_job.grid_min, "quadrature grid start")
      ->capture_default_str();
  kk->add_option("--grid-max", kk_job.grid_max, "quadrature grid end")
      ->capture_default_str();
  kk->add_option("--grid-points", kk_job.grid_points, "quadrature grid length")
      ->capture_default_str();
  kk->add_option("--tol", "accepted for flag uniformity; grid-driven");
  kk->add_option("--threads", "accepted for flag uniformity; grid-driven");

  int drag_failed_rows = 0;
  spectra->callback([&] {
    fed::io::write_text(spectra_out, fed::run::run_spectra(spectra_job));
  });
  friction->callback([&] {
    fed::io::write_text(friction_out, fed::run::run_friction(friction_job));
  });
  pendry->callback([&] {
    fed::io::write_text(pendry_out, fed::run::run_pendry(pendry_job));
  });
  drag->callback([&] {
    fed::io::write_text(drag_out,
                        fed::run::run_drag(drag_job, &drag_failed_rows));
  });
  kk->callback(
      [&] { fed::io::write_text(kk_out, fed::run::run_kk(kk_job)); });

  try {
    std::vector<std::string> args = expand_config_args(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const fed::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const fed::ConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return 3;
  } catch (const fed::GridError& e) {
    std::cerr << "grid failure: " << e.what() << '\n';
    return 3;
  } catch (const fed::PoleError& e) {
    std::cerr << "pole hit: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (drag_failed_rows > 0) {
    std::cerr << "non-convergence: " << drag_failed_rows
              << " sweep row(s) missed the tolerance\n";
    return 3;
  }
  return 0;
}
