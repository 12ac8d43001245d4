// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "vecgraph/corpus.hpp"
#include "vecgraph/schedule.hpp"
#include "vecgraph/vector_ir.hpp"

using namespace vecgraph;

namespace {

VectorGraph pred10(std::int64_t size) {
  return lift_scalar_graph(corpus::make_predx({10, static_cast<std::size_t>(size), 1}), 8);
}

void BM_Schedule(benchmark::State& state) {
  const VectorGraph g = pred10(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(schedule(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Schedule)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_StackSimulation(benchmark::State& state) {
  const VectorGraph g = pred10(state.range(0));
  const auto order = schedule(g);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_stack_accesses(g, order, 32));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StackSimulation)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

}  // namespace
