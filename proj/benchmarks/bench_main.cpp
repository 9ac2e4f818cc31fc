#include <benchmark/benchmark.h>

#include "dtn/fuzzy.hpp"
#include "dtn/qlearn.hpp"
#include "dtn/rng.hpp"
#include "dtn/sim.hpp"

namespace {

using namespace dtn;

void BM_FuzzyInference(benchmark::State& state) {
  const fuzzy::RuleBase& rb = fuzzy::flc3_rulebase();
  SeededRng rng(1);
  for (auto _ : state) {
    const double x = rng.next_double();
    const double y = rng.next_double();
    benchmark::DoNotOptimize(fuzzy::defuzzify_cog(fuzzy::infer(rb, x, y)));
  }
}
BENCHMARK(BM_FuzzyInference);

void BM_FuzzyCached(benchmark::State& state) {
  fuzzy::CachedFlc flc(fuzzy::flc3_rulebase());
  SeededRng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(flc.eval(rng.next_double(), rng.next_double()));
  }
}
BENCHMARK(BM_FuzzyCached);

void BM_QTableContactUpdate(benchmark::State& state) {
  const QParams p;
  QTable q(0);
  SeededRng rng(2);
  Seconds now = 0.0;
  for (auto _ : state) {
    now += 1.0;
    q.update_on_connect(static_cast<NodeId>(rng.below(60)),
                        static_cast<NodeId>(rng.below(60)), rng.next_double(),
                        rng.next_double(), rng.next_double() < 0.5 ? 1 : 0, now, p);
  }
}
BENCHMARK(BM_QTableContactUpdate);

void BM_ShortSimulation(benchmark::State& state) {
  Scenario s = parse_scenario(
      "scenario.duration = 2000\n"
      "world.width = 300\n"
      "world.height = 300\n"
      "group1.count = 30\n");
  const char* routers[] = {"epidemic", "prophet", "snw", "carl"};
  s.router = routers[state.range(0)];
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(s));
  }
  state.SetLabel(s.router);
}
BENCHMARK(BM_ShortSimulation)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
