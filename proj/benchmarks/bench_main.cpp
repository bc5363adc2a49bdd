#include "faircoin/pricing.hpp"
#include "faircoin/reality.hpp"
#include "faircoin/strategies.hpp"
#include "faircoin/verify.hpp"

#include <benchmark/benchmark.h>

using namespace faircoin;

namespace {

void BM_EtaTableExact(benchmark::State& state) {
  const auto h = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    EtaTable<Rational> t({4, h, Tail::zero, Side::negative, 0});
    benchmark::DoNotOptimize(t.value(0, 0));
  }
}
BENCHMARK(BM_EtaTableExact)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_EtaTableFloat(benchmark::State& state) {
  const auto h = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    EtaTable<double> t({4, h, Tail::half, Side::negative, 0});
    benchmark::DoNotOptimize(t.value(0, 0));
  }
}
BENCHMARK(BM_EtaTableFloat)->Arg(4096)->Arg(65536)->Unit(benchmark::kMillisecond);

void BM_ForwardMasses(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(forward_masses(9, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ForwardMasses)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_Census(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_absorption(9, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Census)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_BruteForceCensus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_b_k(9, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_BruteForceCensus)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

template <class Num>
void BM_TruncatedQ(benchmark::State& state) {
  const auto rounds = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto q = truncated_q<Num>(20);
    auto r = iid_reality<Num>(7);
    benchmark::DoNotOptimize(run_game(*q, *r, rounds, Num(1)).capital());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * rounds));
}
BENCHMARK(BM_TruncatedQ<double>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TruncatedQ<Rational>)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveAdditive(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive(static_cast<std::size_t>(state.range(0)), "additive-closed-form"));
}
BENCHMARK(BM_ExhaustiveAdditive)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Minimax(benchmark::State& state) {
  for (auto _ : state) {
    auto s = stopped_additive<Rational>(Rational(2, 4));
    benchmark::DoNotOptimize(minimax_value(*s, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Minimax)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
