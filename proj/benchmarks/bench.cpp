#include <benchmark/benchmark.h>

#include "infprop/baselines.hpp"
#include "infprop/oracle.hpp"
#include "infprop/propagation.hpp"
#include "infprop/synth.hpp"

using namespace infprop;

namespace {

struct Fixture {
  DirectedGraph g;
  SeedSet seeds;

  Fixture() : seeds({}, 1) {
    Rng rng(42);
    SynthResult res = synth_community(SynthParams{}, rng);
    g = default_params(res.graph, 0.3);
    std::vector<SeedSet::Entry> entries;
    for (NodeId v : {NodeId(0), NodeId(64), NodeId(128)})
      entries.push_back({v, res.labels[v]});
    seeds = SeedSet(entries, 3);
  }
};

const Fixture& fixture() {
  static Fixture f;
  return f;
}

void BM_RunInstance(benchmark::State& state) {
  const Fixture& f = fixture();
  DelayModel model = DelayModel::ic_unit();
  Rng rng(7);
  for (auto _ : state) {
    InstanceOutcome out = run_instance(f.g, f.seeds, model, nullptr, rng);
    benchmark::DoNotOptimize(out.label.data());
  }
}
BENCHMARK(BM_RunInstance);

void BM_InfProp1000(benchmark::State& state) {
  const Fixture& f = fixture();
  DelayModel model = DelayModel::ic_unit();
  for (auto _ : state) {
    PredictionMatrix pred = infprop::infprop(f.g, f.seeds, model, nullptr, 1000, 1, 1);
    benchmark::DoNotOptimize(pred.p.data());
  }
}
BENCHMARK(BM_InfProp1000)->Unit(benchmark::kMillisecond);

void BM_LabelProp(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    LabelPropResult res = labelprop(f.g, f.seeds);
    benchmark::DoNotOptimize(res.pred.p.data());
  }
}
BENCHMARK(BM_LabelProp)->Unit(benchmark::kMillisecond);

void BM_ExactEnumeration(benchmark::State& state) {
  // 12-edge cycle with chords: 2^12 subsets per call.
  std::vector<EdgeInput> edges;
  for (int v = 0; v < 8; ++v) edges.push_back({v, (v + 1) % 8, 1.0});
  for (int v = 0; v < 4; ++v) edges.push_back({v, (v + 4) % 8, 1.0});
  DirectedGraph g = default_params(build_graph(8, edges), 0.5);
  SeedSet seeds({{0, 1}, {4, 2}}, 2);
  for (auto _ : state) {
    ExactSolution sol = exact_infector_and_bias(g, seeds);
    benchmark::DoNotOptimize(sol.f.p.data());
  }
}
BENCHMARK(BM_ExactEnumeration)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
