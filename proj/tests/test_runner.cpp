#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "fed/csv.hpp"
#include "fed/errors.hpp"
#include "fed/runner.hpp"

using namespace fed;

namespace {

struct Csv {
  std::vector<std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv out;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      out.meta.push_back(line);
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    if (!header_seen) {
      while (std::getline(cells, cell, ',')) out.columns.push_back(cell);
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    out.rows.push_back(std::move(row));
  }
  return out;
}

bool has_meta(const Csv& csv, const std::string& needle) {
  for (const auto& line : csv.meta)
    if (line.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("csv writer: layout, formatting, misuse") {
  io::CsvWriter w({"a", "b"});
  w.meta("key", "value");
  w.meta("pi", 3.14159265358979);
  w.row({1.0, 2.5});
  w.row({-1e-30, 4.0});
  const std::string text = w.str();
  CHECK(text.find("# key = value\n") != std::string::npos);
  CHECK(text.find("# pi = 3.14159265359\n") != std::string::npos);
  CHECK(text.find("a,b\n") != std::string::npos);
  CHECK(text.find("1,2.5\n") != std::string::npos);
  CHECK(w.rows() == 2);

  CHECK_THROWS_AS(w.meta("late", 1.0), ConfigError);  // after first row
  CHECK_THROWS_AS(w.row({1.0}), ConfigError);         // width mismatch
  CHECK_THROWS_AS(io::CsvWriter({}), ConfigError);

  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(-2.0) == "-2");
}

TEST_CASE("spectra runner: delta trace and r profile") {
  run::SpectraJob job;
  const auto csv = parse_csv(run::run_spectra(job));
  CHECK(has_meta(csv, "tool = spectra"));
  CHECK(has_meta(csv, "vacuum_limit = 1.68294196962"));
  REQUIRE(csv.columns == std::vector<std::string>{"delta", "field_density"});
  REQUIRE(csv.rows.size() == 4);
  // densities approach the vacuum limit as delta shrinks
  const double limit = 2.0 * std::sin(1.0);
  double prev_err = 1e300;
  for (const auto& row : csv.rows) {
    const double err = std::abs(row[1] - limit);
    CHECK(err < prev_err);
    prev_err = err;
  }

  job.sweep = "r";
  job.r_points = 16;
  const auto profile = parse_csv(run::run_spectra(job));
  REQUIRE(profile.rows.size() == 16);
  CHECK(profile.columns.size() == 3);
  // eps = 1 default: the medium column equals the vacuum column
  for (const auto& row : profile.rows)
    CHECK(row[1] == doctest::Approx(row[2]).epsilon(1e-13));

  job.sweep = "sideways";
  CHECK_THROWS_AS(run::run_spectra(job), ConfigError);
}

TEST_CASE("spectra runner output is bit-identical across calls") {
  const run::SpectraJob job;
  CHECK(run::run_spectra(job) == run::run_spectra(job));
}

TEST_CASE("friction runner: trace shape, warning comment, determinism") {
  run::FrictionJob job;
  job.d_values = {1.151292546497023};
  job.t_max = 40.0;
  job.t_points = 5;
  job.nx = 16;
  job.ny = 8;

  const std::string text = run::run_friction(job);
  const auto csv = parse_csv(text);
  CHECK(has_meta(csv, "tool = friction-dynamics"));
  CHECK(has_meta(csv, "warning:"));  // 16 columns over 3 half-widths: sparse
  REQUIRE(csv.rows.size() == 5);
  CHECK(csv.rows[0][2] == 0.0);                 // N(0) = 0
  CHECK(csv.rows[4][2] > csv.rows[1][2]);       // quanta grow
  CHECK(csv.rows[4][4] > 0.0);                  // force positive

  job.threads = 3;
  CHECK(run::run_friction(job) == text);  // thread count cannot leak in

  job.v = 0.0;
  CHECK_THROWS_AS(run::run_friction(job), ConfigError);
}

TEST_CASE("pendry runner emits matching direct and window forces") {
  run::PendryJob job;
  job.points = 5;
  const auto csv = parse_csv(run::run_pendry(job));
  REQUIRE(csv.rows.size() == 5);
  for (const auto& row : csv.rows) {
    CHECK(row[2] > 0.0);
    CHECK(row[3] == doctest::Approx(row[2]).epsilon(1e-6));
  }

  job.sweep = "z";
  CHECK_THROWS_AS(run::run_pendry(job), ConfigError);
}

TEST_CASE("drag runner: sweep rows, convergence flag, failure counting") {
  run::DragJob job;
  job.sweep = "v0";
  job.lo = 0.2;
  job.hi = 0.8;
  job.points = 3;
  job.log_spacing = false;
  job.tol = 1e-3;

  int failed = -1;
  const auto csv = parse_csv(run::run_drag(job, &failed));
  CHECK(failed == 0);
  REQUIRE(csv.rows.size() == 3);
  for (const auto& row : csv.rows) {
    CHECK(row[2] > 0.0);         // force along the drift
    CHECK(row[5] == 1.0);        // converged
    CHECK(row[4] > 100.0);       // evaluation count recorded
  }
  CHECK(csv.rows[0][0] == 0.2);
  CHECK(csv.rows[2][0] == 0.8);

  // an unaffordable tolerance is reported per row, not thrown
  job.sweep = "none";
  job.tol = 1e-10;
  job.max_evals = 200'000;
  const auto bad = parse_csv(run::run_drag(job, &failed));
  CHECK(failed == 1);
  REQUIRE(bad.rows.size() == 1);
  CHECK(bad.rows[0][5] == 0.0);
  CHECK(std::isnan(bad.rows[0][2]));

  job.sweep = "sideways";
  CHECK_THROWS_AS(run::run_drag(job), ConfigError);
}

TEST_CASE("kk runner separates the two models") {
  run::KkJob job;
  job.grid_points = 2000;
  const auto drude = parse_csv(run::run_kk(job));
  REQUIRE(drude.rows.size() == 1);
  CHECK(drude.rows[0][1] < 0.02);

  job.model = "plasma";
  const auto plasma = parse_csv(run::run_kk(job));
  CHECK(plasma.rows[0][1] == doctest::Approx(4.0).epsilon(1e-10));

  job.model = "lorentz";
  CHECK_THROWS_AS(run::run_kk(job), ConfigError);
}
