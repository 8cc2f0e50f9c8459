#include <benchmark/benchmark.h>

#include "cvdisc/bounds.hpp"

namespace {

using namespace cvdisc;

const ChannelFamily kLoss = ChannelFamily::pure_loss(0.99L, 0.97L);

void BM_GaussianFidelity(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto probe = ghz_cm(m, 20.5L);
  std::vector<int> bits(static_cast<std::size_t>(m), 0);
  const auto a = apply_pattern(probe, kLoss, Pattern::from_bits(bits));
  bits.front() = 1;
  const auto b = apply_pattern(probe, kLoss, Pattern::from_bits(bits));
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_log_fidelity(a, b));
}
BENCHMARK(BM_GaussianFidelity)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_BruteBounds(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto space = ImageSpace::full(m);
  const auto probe = assemble_probe({full_ghz_partition(m), 20.5L}, m);
  for (auto _ : state) {
    const auto table = fidelity_table_brute(space.patterns(), probe, kLoss);
    benchmark::DoNotOptimize(bounds_generic(table, space.priors(), 10));
  }
}
BENCHMARK(BM_BruteBounds)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CountingBounds(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto space = ImageSpace::full(m);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        bounds_via_counting(space, full_ghz_partition(m), kLoss, 20.5L, 10));
}
BENCHMARK(BM_CountingBounds)->Arg(5)->Arg(9)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MutualBounds(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto space = ImageSpace::cpf(m, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(bounds_mutual(space, nn_partition(m), kLoss, 20.5L, 50));
}
BENCHMARK(BM_MutualBounds)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_ClosedFormD2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bounds_d2(kLoss, 20.5L, 100, 10));
}
BENCHMARK(BM_ClosedFormD2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
