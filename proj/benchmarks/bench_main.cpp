#include <benchmark/benchmark.h>

#include <random>

#include "fogsim/harness/sweep.hpp"
#include "fogsim/scenario/simulation.hpp"
#include "fogsim/sim/event_queue.hpp"
#include "fogsim/sim/latency.hpp"

namespace {

void BM_EventQueueScheduleRun(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(1);
  std::vector<double> times(n);
  for (auto& t : times) t = static_cast<double>(gen() % 100000);
  for (auto _ : state) {
    fogsim::sim::EventQueue<std::uint32_t, std::uint64_t> q;
    for (std::size_t i = 0; i < n; ++i) q.schedule(fogsim::sim::SimTime{times[i]}, 0, i);
    std::uint64_t sum = 0;
    q.run([&](auto&, const auto& ev) { sum += ev.payload; });
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_EventQueueScheduleRun)->Range(1 << 10, 1 << 17);

void BM_SelfRescheduling(benchmark::State& state) {
  for (auto _ : state) {
    fogsim::sim::EventQueue<std::uint32_t, int> q;
    for (std::uint32_t i = 0; i < 64; ++i) q.schedule(fogsim::sim::SimTime{static_cast<double>(i)}, i, 0);
    q.run_until(fogsim::sim::SimTime{20000.0}, [](auto& queue, const auto& ev) {
      queue.schedule(fogsim::sim::SimTime{ev.fire_at.ms + 1.0 + ev.target % 7}, ev.target, ev.payload + 1);
    });
    benchmark::DoNotOptimize(q.size());
  }
}
BENCHMARK(BM_SelfRescheduling);

void BM_LatencyModel(benchmark::State& state) {
  fogsim::sim::LatencyModel m;
  double x = 0.0;
  for (auto _ : state) {
    x += 1.0;
    benchmark::DoNotOptimize(fogsim::sim::link_latency(m, {0, 0}, {x, 300}, 0.5).ms);
  }
}
BENCHMARK(BM_LatencyModel);

void BM_SingleRun(benchmark::State& state) {
  fogsim::scenario::ScenarioConfig c;
  c.architecture = state.range(0) == 0 ? fogsim::scenario::Architecture::kTraditional
                                       : fogsim::scenario::Architecture::kCoordinated;
  for (auto _ : state) {
    const auto r = fogsim::scenario::simulate(c);
    benchmark::DoNotOptimize(r.trace_digest);
    state.counters["events"] = static_cast<double>(r.events_processed);
  }
}
BENCHMARK(BM_SingleRun)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RangeSweepOneRep(benchmark::State& state) {
  auto spec = fogsim::harness::default_sweep(fogsim::harness::SweepVariable::kQueryRange);
  spec.repetitions = 1;
  spec.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(fogsim::harness::run_sweep(spec).rows.size());
}
BENCHMARK(BM_RangeSweepOneRep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
