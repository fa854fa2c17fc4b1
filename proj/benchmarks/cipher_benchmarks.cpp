// Per-stage and full-pipeline throughput, monolithic and blocked.
#include <benchmark/benchmark.h>

#include <cstdint>

#include "vsem/bench.hpp"
#include "vsem/ciphers.hpp"
#include "vsem/prng.hpp"

namespace {

void run_chain(benchmark::State& state, vsem::ChainSpec chain, std::size_t block) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const vsem::Bytes input = vsem::bench_buffer(size);
  vsem::PipelineOptions opts;
  opts.block_size = block;
  for (auto _ : state) {
    auto out = vsem::encrypt_pipeline(input, vsem::kBenchPassword, chain, opts);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(size));
}

void BM_Xor(benchmark::State& s) { run_chain(s, vsem::ChainSpec::only(vsem::Stage::Xor), 0); }
void BM_Transpose(benchmark::State& s) {
  run_chain(s, vsem::ChainSpec::only(vsem::Stage::Transpose), 0);
}
void BM_Shift(benchmark::State& s) { run_chain(s, vsem::ChainSpec::only(vsem::Stage::Shift), 0); }
void BM_Circular(benchmark::State& s) {
  run_chain(s, vsem::ChainSpec::only(vsem::Stage::Circular), 0);
}
void BM_Pipeline(benchmark::State& s) { run_chain(s, vsem::ChainSpec::full(), 0); }
void BM_PipelineBlocked(benchmark::State& s) {
  run_chain(s, vsem::ChainSpec::full(), vsem::kDefaultBlockSize);
}

void BM_XorShiftNext(benchmark::State& state) {
  vsem::XorShift g(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(g.next());
}

constexpr std::int64_t kSmall = 280 << 10;
constexpr std::int64_t kLarge = 16 << 20;

}  // namespace

BENCHMARK(BM_Xor)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Transpose)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Shift)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Circular)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pipeline)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PipelineBlocked)->Arg(kLarge)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_XorShiftNext)->DenseRange(1, 3);

BENCHMARK_MAIN();
