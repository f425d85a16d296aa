#include <benchmark/benchmark.h>

#include "kovan/flow.hpp"
#include "kovan/parse.hpp"

using namespace kovan;

namespace {

const std::vector<std::string> Q4{"q1", "p1", "q2", "p2"};

VectorField ham(const char* h) { return hamiltonian_to_field(parse_expression(h, Q4), Q4); }

const VectorField& four() {
  static const VectorField f = ham("2*p1*p2 + 3*p2^2*q1 + q1^4 - q1^2*q2 - q2^2");
  return f;
}

const VectorField& four_g() {
  static const VectorField g = ham("p1^2 + 2*p1*p2*q1 - q1^5 + p2^2*q2 + 3*q1^3*q2 - 2*q1*q2^2");
  return g;
}

IndicialLocus exact_locus(const ExactVector& c) {
  IndicialLocus l;
  l.exactness = Exactness::Exact;
  l.exact = c;
  for (const auto& r : c) l.numeric.emplace_back(r.to_double(), 0.0);
  return l;
}

const Weights kW4{{2, 5, 4, 3}, 1};

void BM_FindLoci(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_loci(four(), kW4));
}
BENCHMARK(BM_FindLoci)->Unit(benchmark::kMillisecond);

void BM_KExponents(benchmark::State& state) {
  const IndicialLocus c = exact_locus({1, 1, 1, -1});
  for (auto _ : state) benchmark::DoNotOptimize(k_exponents(four(), kW4, c));
}
BENCHMARK(BM_KExponents);

void BM_BuildSeries(benchmark::State& state) {
  const IndicialLocus c = exact_locus({1, 1, 1, -1});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_series(four(), kW4, c, n));
}
BENCHMARK(BM_BuildSeries)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_ParamFlow(benchmark::State& state) {
  const LaurentSolution s = build_series(four(), kW4, exact_locus({1, 1, 1, -1}), 11);
  for (auto _ : state) benchmark::DoNotOptimize(param_flow(four(), kW4, four_g(), s));
}
BENCHMARK(BM_ParamFlow)->Unit(benchmark::kMillisecond);

void BM_ParseExpression(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(parse_expression("p1^2 + 2*p1*p2*q1 - q1^5 + p2^2*q2 + 3*q1^3*q2 - 2*q1*q2^2", Q4));
}
BENCHMARK(BM_ParseExpression);

}  // namespace
BENCHMARK_MAIN();
