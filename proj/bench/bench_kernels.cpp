// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "cslow/assembler.hpp"
#include "cslow/cslow_machine.hpp"
#include "cslow/retime.hpp"

using namespace cslow;

namespace {

net::Netlist circuit(int gates, bool zero_preserving) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(gates));
  net::RandomNetlistParams p;
  p.inputs = 4;
  p.outputs = 4;
  p.gates = gates;
  p.feedback = true;
  p.zero_preserving = zero_preserving;
  return net::random_netlist(p, rng);
}

void BM_WdSerial(benchmark::State& state) {
  const auto n = circuit(static_cast<int>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(retime::compute_wd_serial(n));
}

void BM_WdParallel(benchmark::State& state) {
  const auto n = circuit(static_cast<int>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(retime::compute_wd(n));
}

void equivalence(benchmark::State& state, bool parallel) {
  const auto n = circuit(static_cast<int>(state.range(0)), true);
  const auto retimed = retime::apply_retiming(n, retime::min_period_retime(n).retiming);
  retime::EquivalenceOptions o;
  o.trials = 32;
  o.warmup = retime::retiming_warmup(n, retimed);
  o.cycles = o.warmup + 256;
  o.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(retime::check_equivalence(n, retimed, o));
}

void BM_EquivalenceSerial(benchmark::State& state) { equivalence(state, false); }
void BM_EquivalenceParallel(benchmark::State& state) { equivalence(state, true); }

std::vector<core::SweepJob> sweep_jobs() {
  const auto img = isa::assemble(
      "LOOP: LOAD N\nDCRA\nSTO N\nJOZ DONE\nJOC LOOP\nDONE: HALT\nN: .word 200\n");
  std::vector<core::SweepJob> jobs;
  for (unsigned c = 1; c <= core::kMaxThreads; ++c) {
    for (auto mode : {core::MemoryMode::Private, core::MemoryMode::Tagged}) {
      jobs.push_back({std::vector<isa::MemoryImage>(c, img), c, mode, 1'000'000});
    }
  }
  return jobs;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto jobs = sweep_jobs();
  for (auto _ : state) benchmark::DoNotOptimize(core::sweep_serial(jobs));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto jobs = sweep_jobs();
  for (auto _ : state) benchmark::DoNotOptimize(core::sweep(jobs));
}

}  // namespace

BENCHMARK(BM_WdSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_WdParallel)->Arg(64)->Arg(256);
BENCHMARK(BM_EquivalenceSerial)->Arg(64);
BENCHMARK(BM_EquivalenceParallel)->Arg(64);
BENCHMARK(BM_SweepSerial);
BENCHMARK(BM_SweepParallel);

BENCHMARK_MAIN();
