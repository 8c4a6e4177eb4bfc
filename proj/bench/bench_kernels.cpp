// Serial reference vs OpenMP kernels on one GLP network.

#include <benchmark/benchmark.h>

#include "pie/experiments.hpp"

using namespace pie;

namespace {

struct Setup {
  PieNetwork net;
  std::vector<NodePair> pairs;
  FailureSet failures;
};

const Setup& setup() {
  static const Setup s = [] {
    GlpParams p;
    p.n = 4000;
    Graph g = assign_weights(generate_glp(p, 1), WeightMode::kUniformInt, 1);
    PieNetwork net = build_network(std::move(g), default_levels(p.n), 1);
    auto pairs = sample_pairs(alive_nodes(net.graph.node_count(), nullptr), 2000, 1);
    FailureSet f = inject_failures(net.graph, 0.05, 1);
    return Setup{std::move(net), std::move(pairs), std::move(f)};
  }();
  return s;
}

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::kParallel : Execution::kSerial;
}

void BM_PairDistances(benchmark::State& state) {
  const auto& s = setup();
  for (auto _ : state) benchmark::DoNotOptimize(pair_distances(s.net.graph, s.pairs, mode(state)));
}

void BM_TraceRoutes(benchmark::State& state) {
  const auto& s = setup();
  for (auto _ : state) benchmark::DoNotOptimize(trace_routes(s.net, s.pairs, nullptr, mode(state)));
}

void BM_SimulateFlows(benchmark::State& state) {
  const auto& s = setup();
  for (auto _ : state) benchmark::DoNotOptimize(simulate_flows(s.net, s.pairs, nullptr, mode(state)));
}

void BM_BaselineDelivery(benchmark::State& state) {
  const auto& s = setup();
  for (auto _ : state) {
    benchmark::DoNotOptimize(baseline_delivery(s.net.graph, s.pairs, &s.failures, mode(state)));
  }
}

}  // namespace

// arg 0: serial reference, arg 1: parallel
BENCHMARK(BM_PairDistances)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TraceRoutes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateFlows)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BaselineDelivery)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
