#include "qps/dahmen_micchelli.hpp"
#include "qps/diophantine.hpp"
#include "qps/oracle.hpp"
#include "qps/semilinear.hpp"

#include <benchmark/benchmark.h>

using namespace qps;

namespace {

IntMatrix matrix(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix out;
  for (const auto& r : rows) {
    IntVector row;
    for (long v : r) row.emplace_back(v);
    out.push_back(std::move(row));
  }
  return out;
}

void BM_CountExample1(benchmark::State& state) {
  const auto sys = DioSystem::make(matrix({{1, 2}, {2, 3}}));
  for (auto _ : state) benchmark::DoNotOptimize(count_system(sys));
}
BENCHMARK(BM_CountExample1)->Unit(benchmark::kMillisecond);

// Number of unknowns grows with the argument.
void BM_CountColumns(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  IntMatrix m(2, IntVector(k));
  for (std::size_t j = 0; j < k; ++j) {
    m[0][j] = 1 + j % 3;
    m[1][j] = 1 + (2 * j + 1) % 3;
  }
  const auto sys = DioSystem::make(m);
  for (auto _ : state) benchmark::DoNotOptimize(count_system(sys));
}
BENCHMARK(BM_CountColumns)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Count3Rows(benchmark::State& state) {
  const auto sys = DioSystem::make(matrix({{1, 2, 0, 1}, {0, 1, 3, 1}, {2, 0, 1, 1}}));
  for (auto _ : state) benchmark::DoNotOptimize(count_system(sys));
}
BENCHMARK(BM_Count3Rows)->Unit(benchmark::kMillisecond);

void BM_EvalExample1(benchmark::State& state) {
  const auto f = count_system(DioSystem::make(matrix({{1, 2}, {2, 3}})));
  const IntVector x{Integer(123456), Integer(234567)};
  for (auto _ : state) benchmark::DoNotOptimize(bs_eval(f, x));
}
BENCHMARK(BM_EvalExample1);

void BM_BuildCATriangle(benchmark::State& state) {
  const auto inst = DMInstance::make(matrix({{1, 0, 1}, {0, 1, 1}}));
  for (auto _ : state) benchmark::DoNotOptimize(build_CA(inst));
}
BENCHMARK(BM_BuildCATriangle)->Unit(benchmark::kMillisecond);

void BM_GrowthIntegers(benchmark::State& state) {
  auto p = [](long o, long g) {
    IntMatrix gens;
    if (g != 0) gens = matrix({{g}});
    return SimpleSet::make(Domain::Integer, IntVector{Integer(o)}, gens);
  };
  const auto x = SemiSimpleSet::make(1, Domain::Integer, {p(0, 0), p(1, 1), p(-1, -1)});
  for (auto _ : state) benchmark::DoNotOptimize(growth(x));
}
BENCHMARK(BM_GrowthIntegers)->Unit(benchmark::kMillisecond);

void BM_DiffTestExample1(benchmark::State& state) {
  const Problem p = DioSystem::make(matrix({{1, 2}, {2, 3}}));
  const auto f = construct(p);
  for (auto _ : state) benchmark::DoNotOptimize(diff_test(p, f, state.range(0)));
}
BENCHMARK(BM_DiffTestExample1)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
