#include "surfdef/h1.hpp"

#include <benchmark/benchmark.h>

using namespace sd;

namespace {

const AutomorphismSpec& example() {
    static const AutomorphismSpec spec = load_automorphism_spec(data_path("example15.spec"));
    return spec;
}

void blocks(benchmark::State& state, ExecPolicy pol) {
    const auto& spec = example();
    auto sp = random_specialization(spec, 1);
    for (auto _ : state) benchmark::DoNotOptimize(compute_blocks(spec, sp, pol));
}

void BM_BlocksSerial(benchmark::State& s) { blocks(s, ExecPolicy::Serial); }
void BM_BlocksParallel(benchmark::State& s) { blocks(s, ExecPolicy::Parallel); }

void BM_BaseBlock(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(base_block(example()));
}

} // namespace

BENCHMARK(BM_BlocksSerial)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK(BM_BlocksParallel)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK(BM_BaseBlock)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
