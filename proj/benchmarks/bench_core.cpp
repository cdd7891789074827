#include <benchmark/benchmark.h>

#include <cmath>

#include <hcdtn/asymptotics.hpp>
#include <hcdtn/generators.hpp>
#include <hcdtn/geometry.hpp>
#include <hcdtn/network.hpp>
#include <hcdtn/oracle.hpp>
#include <hcdtn/specfun.hpp>

using namespace hcdtn;

namespace {

Packing grid(int target) {
  // Spacing picked so the hex grid holds roughly `target` disks.
  const double pitch = std::sqrt(3.14159 / (0.9 * target));
  return hex_grid_packing(1.0, 0.45 * pitch, 0.1 * pitch);
}

void BM_Adjacency(benchmark::State& state) {
  const Packing p = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze_geometry(p));
  state.counters["N"] = static_cast<double>(p.size());
}
BENCHMARK(BM_Adjacency)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_DtnMatrix(benchmark::State& state) {
  const auto a = analyze_geometry(grid(static_cast<int>(state.range(0))));
  const Network net = build_network(a, ConductivityMode::identical);
  for (auto _ : state) benchmark::DoNotOptimize(dtn_matrix(net));
  state.counters["N"] = static_cast<double>(a.size());
}
BENCHMARK(BM_DtnMatrix)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_TotalEnergy(benchmark::State& state) {
  const auto a = analyze_geometry(equal_gap_ring(16, 0.12, 0.006));
  const Network net = build_network(a, ConductivityMode::identical);
  const auto psi = FourierPotential::cosine(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(total_energy(psi, a, net));
}
BENCHMARK(BM_TotalEnergy)->Arg(1)->Arg(100)->Arg(1000);

void BM_OracleFactorization(benchmark::State& state) {
  const Packing p = equal_gap_ring(16, 0.12, 0.006);
  OracleOptions opt;
  opt.order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(DirichletOracle(p, opt));
}
BENCHMARK(BM_OracleFactorization)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_PolylogHalf(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) * 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(polylog_half(x));
}
BENCHMARK(BM_PolylogHalf)->Arg(1)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace

// The packaged benchmark_main archive carries LTO bytecode from another GCC.
BENCHMARK_MAIN();
