// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>

#include "etopo/harness.hpp"

using namespace etopo;

namespace {

struct AdaptInput {
  OverlayNetwork network;
  BaseGraph graph;
};

AdaptInput adapt_input(std::int64_t links) {
  GeneratorParams p;
  p.nodes = static_cast<std::uint32_t>(std::ceil(std::sqrt(4.0 * static_cast<double>(links)))) + 2;
  p.links = static_cast<std::size_t>(links);
  p.level_weights = {3, 2, 1};
  p.swap_success = {0.5, 1.0};
  p.photon_loss = {0.0, 0.3};
  p.fidelity = {0.7, 1.0};
  AdaptInput in;
  in.network = generate_network(p, 11);
  const auto side = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(p.nodes)))) + 1;
  in.graph = map_overlay(in.network, 2, side, RandomPlacement{12});
  return in;
}

ThresholdPolicy policy() {
  ThresholdPolicy t;
  t.default_threshold = 0.5;
  return t;
}

void BM_adapt(benchmark::State& state) {
  const auto in = adapt_input(state.range(0));
  const auto t = policy();
  for (auto _ : state) benchmark::DoNotOptimize(adapt(in.graph, in.network, t));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_adapt_serial(benchmark::State& state) {
  const auto in = adapt_input(state.range(0));
  const auto t = policy();
  for (auto _ : state) benchmark::DoNotOptimize(adapt_serial(in.graph, in.network, t));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

ScalingParams scaling_params(std::int64_t n) {
  ScalingParams p;
  p.sizes = {n};
  p.graphs = 1;
  p.queries = 200;
  p.seed = 5;
  return p;
}

void BM_routing(benchmark::State& state) {
  const auto p = scaling_params(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(routing_scaling(p));
}

void BM_routing_serial(benchmark::State& state) {
  const auto p = scaling_params(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(routing_scaling_serial(p));
}

}  // namespace

BENCHMARK(BM_adapt)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_adapt_serial)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_routing)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_routing_serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
