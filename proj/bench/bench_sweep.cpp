// Serial reference vs OpenMP sweep on the (64,57) polar code.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "ssd/sim.hpp"

namespace {

ssd::SweepConfig bench_config(int64_t trials)
{
	ssd::SweepConfig c;
	c.family = "polar";
	c.n = 6;
	c.K = 57;
	c.ebn0_db = {5.0};
	c.kinds = {ssd::MetricKind::M1, ssd::MetricKind::M2};
	c.trials_per_point = uint64_t(trials);
	c.min_block_errors = 0;
	c.record_timing = false;
	return c;
}

void BM_SweepSerial(benchmark::State &state)
{
	const auto config = bench_config(state.range(0));
	for (auto _ : state)
		benchmark::DoNotOptimize(ssd::run_sweep_serial(config));
	state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State &state)
{
	const auto config = bench_config(state.range(0));
	for (auto _ : state)
		benchmark::DoNotOptimize(ssd::run_sweep(config));
	state.SetItemsProcessed(state.iterations() * state.range(0));
	state.counters["threads"] = omp_get_max_threads();
}

} // namespace

BENCHMARK(BM_SweepSerial)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
