#include <benchmark/benchmark.h>

#include "lyap/hill.hpp"
#include "lyap/lyapunov_order.hpp"

namespace {

using namespace lyap;

// One eigenvalue per group, each with a single Jordan block of size k.
LyapunovProblem jordan_problem(int groups, int k) {
  std::vector<EigenBlock> eig;
  BicommElement b;
  for (int g = 0; g < groups; ++g) {
    eig.push_back({Complex(1.0 + g, 0.5 * g), {k}});
    std::vector<Complex> t;
    for (int d = 0; d < k; ++d) t.push_back(Complex(1.0 + g + d, -0.25 * d));
    b.coeffs.push_back(t);
  }
  return LyapunovProblem(JordanSpec(Field::Complex, eig), b);
}

void BM_ClosedForm(benchmark::State& state) {
  const LyapunovProblem p = jordan_problem(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_order_matricization(p));
}
BENCHMARK(BM_ClosedForm)->Arg(1)->Arg(2)->Arg(4);

void BM_NumericOrderMap(benchmark::State& state) {
  const LyapunovProblem p = jordan_problem(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lyapunov_order_map(p));
}
BENCHMARK(BM_NumericOrderMap)->Arg(1)->Arg(2)->Arg(4);

void BM_HillPick(benchmark::State& state) {
  const LyapunovProblem p = jordan_problem(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hill_pick_matrix(p));
}
BENCHMARK(BM_HillPick)->Arg(1)->Arg(2)->Arg(4);

void BM_MinimalHill(benchmark::State& state) {
  const StarLinearMap map = lyapunov_order_map(jordan_problem(2, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_hill_from_blocks(map, {}));
}
BENCHMARK(BM_MinimalHill)->Arg(1)->Arg(2)->Arg(4);

void BM_CheckDomination(benchmark::State& state) {
  const LyapunovProblem p = jordan_problem(2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(check_domination(p, state.range(0), 1));
}
BENCHMARK(BM_CheckDomination)->Arg(0)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
