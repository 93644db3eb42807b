// Microbenchmarks for the hot paths: controller slot step, baseline slot
// step, whole simulation slots, and the static-plan LP solve.

#include <benchmark/benchmark.h>

#include "dcnet/arrivals.hpp"
#include "dcnet/capacity.hpp"
#include "dcnet/controller.hpp"
#include "dcnet/dcnc.hpp"
#include "dcnet/scenario.hpp"
#include "dcnet/sim.hpp"

using namespace dcnet;

namespace {

SimInstance instance(int lifetime) {
  return make_instance(builtin_abilene(), lifetime);
}

void BM_ControllerStep(benchmark::State& state) {
  SimInstance inst = instance(static_cast<int>(state.range(0)));
  ControllerConfig cfg;
  cfg.V = 1000.0;
  LdpController ctrl(inst.graph(), inst.groups,
                     inst.commodities(), cfg);
  ArrivalGenerator gen(inst.commodities(), ArrivalProcessKind::Poisson, 42);
  ArrivalSample arrivals(static_cast<int>(inst.commodities().size()));
  for (auto _ : state) {
    arrivals.clear();
    gen.generate(arrivals);
    benchmark::DoNotOptimize(ctrl.step(arrivals));
  }
}
BENCHMARK(BM_ControllerStep)->Arg(7)->Arg(15);

void BM_BaselineStep(benchmark::State& state) {
  SimInstance inst = instance(static_cast<int>(state.range(0)));
  DcncController ctrl(inst.graph(), inst.groups, inst.commodities(), 0.0);
  ArrivalGenerator gen(inst.commodities(), ArrivalProcessKind::Poisson, 42);
  ArrivalSample arrivals(static_cast<int>(inst.commodities().size()));
  for (auto _ : state) {
    arrivals.clear();
    gen.generate(arrivals);
    benchmark::DoNotOptimize(ctrl.step(arrivals));
  }
}
BENCHMARK(BM_BaselineStep)->Arg(7)->Arg(15);

void BM_SimulationSlot(benchmark::State& state) {
  SimInstance inst = instance(7);
  const long long slots = 2000;
  for (auto _ : state) {
    RunConfig cfg;
    cfg.policy = Policy::Proposed;
    cfg.V = 1000.0;
    cfg.horizon = slots;
    cfg.seed = 42;
    cfg.record_every = slots;
    benchmark::DoNotOptimize(run_simulation(inst, cfg));
  }
  state.SetItemsProcessed(state.iterations() * slots);
}
BENCHMARK(BM_SimulationSlot)->Unit(benchmark::kMillisecond);

void BM_CapacityProbe(benchmark::State& state) {
  SimInstance inst = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(probe_capacity(inst.graph(), inst.commodities(),
                                            inst.groups, 1.0, {},
                                            /*with_cost_objective=*/false));
  }
}
BENCHMARK(BM_CapacityProbe)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
