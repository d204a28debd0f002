#include <benchmark/benchmark.h>

#include <vector>

#include "rolab/overhead_model.hpp"
#include "rolab/scheduler.hpp"
#include "rolab/sensitivity.hpp"
#include "rolab/simulation.hpp"

using namespace rolab;

namespace {

model::NetworkShape shape_for(int hops) {
  model::NetworkShape s;
  s.nodes = 200.0;
  s.hops = hops;
  s.forwarding_probability = 0.7;
  s.coverage = {0.3, 0.4, 0.3};
  for (int k = 0; k <= hops; ++k) s.tier_neighbors.push_back(3.0 + k);
  return s;
}

std::vector<model::MonitoredRoute> routes_for(int count) {
  std::vector<model::MonitoredRoute> r;
  for (int i = 0; i < count; ++i) r.push_back({1 + i % 5, 10.0 + i, 1.0 + 0.1 * (i % 3)});
  return r;
}

}  // namespace

static void BM_AggregateOverhead(benchmark::State& state) {
  const auto shape = shape_for(static_cast<int>(state.range(0)));
  const auto routes = routes_for(32);
  for (auto _ : state) benchmark::DoNotOptimize(model::aggregate_overhead(shape, routes));
}
BENCHMARK(BM_AggregateOverhead)->Arg(1)->Arg(4)->Arg(12);

static void BM_TotalDifferential(benchmark::State& state) {
  const auto shape = shape_for(4);
  const auto routes = routes_for(32);
  const sensitivity::ParamDelta delta{1.0, 1.0, 0.5, 0.1};
  const auto method = static_cast<sensitivity::Method>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sensitivity::total_differential(shape, routes, delta, method));
}
BENCHMARK(BM_TotalDifferential)->DenseRange(0, 2);

static void BM_SchedulerChurn(benchmark::State& state) {
  const auto events = state.range(0);
  for (auto _ : state) {
    sim::Scheduler s;
    std::int64_t fired = 0;
    for (std::int64_t i = 0; i < events; ++i) {
      s.schedule(static_cast<double>((i * 7919) % events), 0, sim::EventKind::timer, [&fired] { ++fired; });
    }
    s.run_until(static_cast<double>(events));
    benchmark::DoNotOptimize(fired);
  }
  state.SetItemsProcessed(state.iterations() * events);
}
BENCHMARK(BM_SchedulerChurn)->Arg(1 << 10)->Arg(1 << 16);

static void BM_StaticLine(benchmark::State& state) {
  auto c = sim::bundled_scenario("static-line-5");
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_scenario(c).report.data_delivered);
}
BENCHMARK(BM_StaticLine);

static void BM_Mobility50(benchmark::State& state) {
  auto c = sim::bundled_scenario("mobility-50");
  c.duration = 60.0;
  c.profile = proto::builtin_profile(state.range(0) == 0 ? "aodv" : state.range(0) == 1 ? "dsr" : "dymo");
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_scenario(c).report.data_delivered);
}
BENCHMARK(BM_Mobility50)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
