// Serial vs OpenMP property-suite runner.

#include <benchmark/benchmark.h>

#include "affmech/verify.hpp"

using namespace affmech;

namespace {

const Invariant& find(const std::string& name) {
  for (const Invariant& inv : invariant_registry())
    if (inv.name == name) return inv;
  throw std::runtime_error("no invariant " + name);
}

void run_bench(benchmark::State& state, const char* name, bool parallel) {
  const Invariant& inv = find(name);
  const auto cases = std::size_t(state.range(0));
  for (auto _ : state) {
    const InvariantReport r = parallel ? run_invariant_parallel(inv, cases, 42, inv.tolerance)
                                       : run_invariant_serial(inv, cases, 42, inv.tolerance);
    benchmark::DoNotOptimize(r.worst_residual);
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * state.range(0));
}

void BM_serial(benchmark::State& state, const char* name) { run_bench(state, name, false); }
void BM_parallel(benchmark::State& state, const char* name) { run_bench(state, name, true); }

void BM_suite(benchmark::State& state, bool parallel) {
  VerifyConfig c;
  c.cases = std::size_t(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_verify(c, parallel).failures);
}

}  // namespace

BENCHMARK_CAPTURE(BM_serial, gauge_invariance_serial, "gauge_invariance")->Arg(256)->UseRealTime();
BENCHMARK_CAPTURE(BM_parallel, gauge_invariance_parallel, "gauge_invariance")->Arg(256)->UseRealTime();
BENCHMARK_CAPTURE(BM_serial, morse_legendre_serial, "morse_legendre")->Arg(256)->UseRealTime();
BENCHMARK_CAPTURE(BM_parallel, morse_legendre_parallel, "morse_legendre")->Arg(256)->UseRealTime();
BENCHMARK_CAPTURE(BM_serial, dual_involution_serial, "dual_involution")->Arg(4096)->UseRealTime();
BENCHMARK_CAPTURE(BM_parallel, dual_involution_parallel, "dual_involution")->Arg(4096)->UseRealTime();
BENCHMARK_CAPTURE(BM_suite, all_serial, false)->Arg(100)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_suite, all_parallel, true)->Arg(100)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
