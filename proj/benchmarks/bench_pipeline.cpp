// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "vecgraph/corpus.hpp"
#include "vecgraph/ordering.hpp"
#include "vecgraph/random.hpp"
#include "vecgraph/search.hpp"
#include "vecgraph/splitting.hpp"

using namespace vecgraph;

namespace {

// Full search on one kernel; range(0) is the unrolled size.
void BM_ProspectKA(benchmark::State& state) {
  const ScalarGraph g = corpus::make_kernel(corpus::ka(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(prospect(g, 8));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProspectKA)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_ProspectReduction(benchmark::State& state) {
  const ScalarGraph g = corpus::make_kernel({"", corpus::Signature::rNN_1, static_cast<std::size_t>(state.range(0)), Opcode::Add});
  for (auto _ : state) benchmark::DoNotOptimize(prospect(g, 8));
}
BENCHMARK(BM_ProspectReduction)->Arg(16)->Arg(64);

void BM_Unroll(benchmark::State& state) {
  const corpus::KernelSpec spec{"", corpus::Signature::sNsN_N, static_cast<std::size_t>(state.range(0)), Opcode::Mul};
  for (auto _ : state) benchmark::DoNotOptimize(dedup(corpus::make_kernel(spec)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Unroll)->Arg(64)->Arg(1024);

ScoreMatrix random_scores(std::size_t n) {
  Rng rng(n);
  ScoreMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = static_cast<double>(rng.uniform_int(0, 6)) / 2.0;
      d.set(i, j, v);
      d.set(j, i, v);
    }
  }
  return d;
}

void BM_SplitPartitioning(benchmark::State& state) {
  const ScoreMatrix d = random_scores(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(split_by_partitioning(d, 8));
}
BENCHMARK(BM_SplitPartitioning)->Arg(16)->Arg(64)->Arg(256);

void BM_SplitClustering(benchmark::State& state) {
  const ScoreMatrix d = random_scores(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(split_by_clustering(d, 8));
}
BENCHMARK(BM_SplitClustering)->Arg(16)->Arg(64)->Arg(256);

void BM_FixOrder(benchmark::State& state) {
  const std::size_t vec = static_cast<std::size_t>(state.range(0));
  Rng rng(vec);
  OrderingContext ctx{vec, {}};
  for (std::size_t m = 0; m < vec; ++m) {
    OrderingMember member;
    for (int k = 0; k < 2; ++k) {
      member.operands.push_back({static_cast<std::uint32_t>(rng.uniform_int(0, 2)),
                                 static_cast<std::uint32_t>(rng.uniform_int(0, static_cast<std::int64_t>(vec) - 1)), false});
    }
    member.stores.push_back({0, static_cast<std::uint32_t>((m * 3) % vec)});
    ctx.members.push_back(member);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fix_order(ctx));
}
BENCHMARK(BM_FixOrder)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
