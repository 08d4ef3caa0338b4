// Micro and instance benchmarks. Instance benchmarks run once per repetition
// (they take from milliseconds to seconds).

#include <random>

#include <benchmark/benchmark.h>

#include "pcity/analysis.hpp"
#include "pcity/bounds.hpp"
#include "pcity/lines.hpp"
#include "pcity/symmetry.hpp"

using namespace pcity;

namespace {

CityParams city8(double alpha, double gamma) {
  CityParams p;  // n=8, K=100, Y=24000, a=0.8, T=30, g=1/3
  return p.with_shares(alpha, gamma);
}

void BM_ShortestPathOracle(benchmark::State& state) {
  CityParams p;
  p.n = static_cast<int>(state.range(0));
  const CityInstance city = build_city(p);
  for (auto _ : state) benchmark::DoNotOptimize(shortest_path_oracle(city));
}
BENCHMARK(BM_ShortestPathOracle)->Arg(8)->Arg(32)->Arg(128);

void BM_LambdaClosedForm(benchmark::State& state) {
  CityParams p;
  p.n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_value(p));
}
BENCHMARK(BM_LambdaClosedForm)->Arg(8)->Arg(128);

void BM_AlppRelaxation(benchmark::State& state) {
  const CityInstance city = build_city(city8(0.25, 0.25));
  for (auto _ : state) benchmark::DoNotOptimize(solve_alpp_relaxation(city).objective);
}
BENCHMARK(BM_AlppRelaxation)->Unit(benchmark::kMillisecond);

void BM_AlppSym(benchmark::State& state) {
  const CityInstance city = build_city(city8(0.25, 0.25));
  for (auto _ : state) benchmark::DoNotOptimize(solve_alpp_sym(city).objective);
}
BENCHMARK(BM_AlppSym)->Unit(benchmark::kMillisecond);

// A symmetric grid point (closes at the root) and an asymmetric one.
void BM_AnalyzeInstance(benchmark::State& state) {
  const double alpha = state.range(0) / 1000.0, gamma = state.range(1) / 1000.0;
  const CityInstance city = build_city(city8(alpha, gamma));
  for (auto _ : state) benchmark::DoNotOptimize(analyze_instance(city).gap.gamma_rel);
}
BENCHMARK(BM_AnalyzeInstance)->Args({425, 325})->Args({125, 25})->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_DecomposeCirculation(benchmark::State& state) {
  CityParams p;
  p.n = static_cast<int>(state.range(0));
  const CityInstance city = build_city(p);
  const SymmetricFrequencies sf{24, 13, 4, 4};
  const FrequencyPlan F = expand(sf, city);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_circulation(F, city).entries.size());
}
BENCHMARK(BM_DecomposeCirculation)->Arg(8)->Arg(64);

void BM_Symmetrize(benchmark::State& state) {
  const CityInstance city = build_city(city8(0.125, 0.025));
  const Solution s = solve_alpp_sym(city);
  const MilpModel model = build_alpp_sym(city);
  const FrequencyPlan F = extract_frequency_plan(s, model, city);
  const RoutingFlow x = extract_routing_flow(s, model);
  for (auto _ : state) benchmark::DoNotOptimize(symmetrize(F, x, city).first.F.size());
}
BENCHMARK(BM_Symmetrize)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
