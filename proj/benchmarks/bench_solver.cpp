#include <benchmark/benchmark.h>

#include "curvlab/boundary.hpp"
#include "curvlab/curvature_field.hpp"
#include "curvlab/solve.hpp"

using namespace curvlab;

namespace {

void BM_SolveArc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = CurvatureField::constant(1.0);
  const Grid g(0.0, 1.0, n);
  for (auto _ : state) {
    auto r = solve(f, Dirichlet{0.0, 0.0}, g, SolveParams{});
    benchmark::DoNotOptimize(r.u);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveArc)->Arg(250)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SolveNearFrontier(benchmark::State& state) {
  const auto f = CurvatureField::constant(1.9);
  const Grid g(0.0, 1.0, 2000);
  for (auto _ : state) {
    auto r = solve(f, Dirichlet{0.0, 0.0}, g, SolveParams{});
    benchmark::DoNotOptimize(r.u);
  }
}
BENCHMARK(BM_SolveNearFrontier)->Unit(benchmark::kMillisecond);

// outer fixed-point sweeps are exercised only by a state-dependent load
void BM_SolveStateDependent(benchmark::State& state) {
  const auto f = CurvatureField::expression("1 + 0.5*s");
  const Grid g(0.0, 1.0, 1000);
  for (auto _ : state) {
    auto r = solve(f, Dirichlet{0.0, 0.0}, g, SolveParams{});
    benchmark::DoNotOptimize(r.u);
  }
}
BENCHMARK(BM_SolveStateDependent)->Unit(benchmark::kMillisecond);

void BM_SolveJump(benchmark::State& state) {
  const auto f = CurvatureField::power_sign(0.5, 3.0, 0.0);
  const Grid g(0.0, 1.0, 2000);
  for (auto _ : state) {
    auto r = solve(f, Dirichlet{0.0, 0.0}, g, SolveParams{});
    benchmark::DoNotOptimize(r.u);
  }
}
BENCHMARK(BM_SolveJump)->Unit(benchmark::kMillisecond);

}  // namespace
