#include <benchmark/benchmark.h>

#include <vector>

#include "fed/drag.hpp"
#include "fed/friction.hpp"
#include "fed/materials.hpp"
#include "fed/numerics.hpp"

namespace {

using namespace fed;

const friction::ShearSystem kSys{1.0, 1.151292546497023, 1.0};

void BM_EvolutionDiagonalized(benchmark::State& state) {
  const friction::WaveVector k{2.1, 0.4};
  const auto modes = friction::analyze_modes(kSys, k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(friction::evolution_operator(modes, 25.0));
  }
}
BENCHMARK(BM_EvolutionDiagonalized);

void BM_EvolutionExponential(benchmark::State& state) {
  // marginal point of the instability: eigenvectors coalesce there and the
  // matrix-exponential fallback carries the whole cost
  const friction::WaveVector k{1.881960086580932, 0.0};
  const auto modes = friction::analyze_modes(kSys, k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(friction::evolution_operator(modes, 25.0));
  }
}
BENCHMARK(BM_EvolutionExponential);

void BM_QuantaTrace(benchmark::State& state) {
  const friction::WaveVector k{2.0, 0.0};
  const auto times = num::linear_grid(0.0, 400.0, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(friction::quanta_trace(kSys, k, times));
  }
}
BENCHMARK(BM_QuantaTrace)->Arg(64)->Arg(256);

void BM_DragIntegrand(benchmark::State& state) {
  drag::DragConfig cfg;
  cfg.plate.drude = {2.0, 0.1, materials::constant_eps_l()};
  cfg.plate.v0 = Eigen::Vector3d(0.5, 0.0, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(drag::drag_integrand(1.0, 2.5, 0.3, cfg));
  }
}
BENCHMARK(BM_DragIntegrand);

void BM_PendryForce(benchmark::State& state) {
  const friction::ShearSystem sys{1.0, 1.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(friction::pendry_force(sys));
  }
}
BENCHMARK(BM_PendryForce);

void BM_KkResidual(benchmark::State& state) {
  const materials::DrudeParams drude{1.0, 0.2, {}};
  const auto model = [&](double w) {
    return materials::drude_epsilon(w, drude);
  };
  const auto nodes = num::log_grid(1e-4, 100.0, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(materials::kk_residual(model, nodes, 0.5));
  }
}
BENCHMARK(BM_KkResidual)->Arg(1000)->Arg(4000);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
