#include <benchmark/benchmark.h>

#include "curvlab/boundary.hpp"
#include "curvlab/classify.hpp"
#include "curvlab/criteria.hpp"
#include "curvlab/curvature_field.hpp"
#include "curvlab/momentum.hpp"
#include "curvlab/solve.hpp"
#include "curvlab/weak_form.hpp"

using namespace curvlab;
using namespace curvlab::criteria;

namespace {

void BM_Classify(benchmark::State& state) {
  const auto f = CurvatureField::power_sign(0.5, 3.0, 1.5);
  const auto sol = solve(f, Dirichlet{0.0, 0.0}, Grid(0.0, 1.0, 2000), SolveParams{});
  for (auto _ : state) {
    auto c = classify_solution(sol.u, f);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMicrosecond);

void BM_WeakForm(benchmark::State& state) {
  const auto f = CurvatureField::power_sign(0.5, 3.0, 0.0);
  const BoundaryCondition bc = Dirichlet{0.0, 0.0};
  const auto sol = solve(f, bc, Grid(0.0, 1.0, 2000), SolveParams{});
  for (auto _ : state) {
    auto r = verify_weak_form(sol.u, f, bc, 1e-6);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_WeakForm)->Unit(benchmark::kMicrosecond);

void BM_MomentumIntegrate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = CurvatureField::constant(1.0);
  const Grid g(0.0, 1.0, n);
  for (auto _ : state) {
    auto r = momentum_integrate(f, 0.0, 0.5, g);
    benchmark::DoNotOptimize(r.u);
  }
}
BENCHMARK(BM_MomentumIntegrate)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);

void BM_EndpointCriterion(benchmark::State& state) {
  Envelope env;
  env.point = 0.0;
  env.side = Side::Right;
  env.alpha = 1.0;
  env.beta = 2.0;
  for (auto _ : state) {
    auto v = endpoint_regularity(EndpointCase::J, env);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_EndpointCriterion);

void BM_InteriorCriterion(benchmark::State& state) {
  Envelope env;
  env.point = 0.5;
  env.side = Side::Left;
  env.alpha = 1.5;
  for (auto _ : state) {
    auto v = interior_regularity(InteriorCase::H, env, 0.0, 1.0);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_InteriorCriterion);

}  // namespace
