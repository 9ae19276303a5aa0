#include <benchmark/benchmark.h>

#include "cvpa/acceptance.hpp"
#include "cvpa/graded_view.hpp"
#include "cvpa/quotient.hpp"

using namespace cvpa;

namespace {

// arg 0: threads (1 = serial reference loop)

void BM_CheckCourant(benchmark::State& state) {
  const CourantAlgebroid x = exact_example(4);
  const Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(check_courant(x, exec));
}

void BM_MutationSuite(benchmark::State& state) {
  const CourantAlgebroid x = exact_example(3);
  const Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(mutation_suite(x, exec));
}

void BM_CheckVertexLie(benchmark::State& state) {
  const VertexLieC c(to_1tca(exact_example(3)), 4);
  const Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(check_vertex_lie(c, exec));
}

void BM_CheckVpa(benchmark::State& state) {
  const SymmetricAlgebra s(std::make_shared<const VertexLieC>(to_1tca(exact_example(2)), 3));
  const Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(check_vpa(s, exec));
}

void BM_BuildView(benchmark::State& state) {
  const QuotientSB q(exact_example(3), 4);
  const Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(build_view(q, 4, exec));
}

}  // namespace

BENCHMARK(BM_CheckCourant)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MutationSuite)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CheckVertexLie)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CheckVpa)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BuildView)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
