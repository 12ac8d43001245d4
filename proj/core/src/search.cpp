// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/search.hpp"

#include <sstream>

#include "vecgraph/error.hpp"
#include "vecgraph/reduction.hpp"

namespace vecgraph {

std::string describe(const PipelineConfig& config) {
  std::ostringstream out;
  out << "reduction=" << (config.use_reduction ? "on" : "off") << " choice=" << config.load_store_choice
      << " split=" << to_string(config.strategy) << " vec=" << config.vec_size;
  return out.str();
}

Census count_nodes(const VectorGraph& graph) {
  Census c;
  for (const VectorNode& n : graph.nodes()) {
    switch (n.kind) {
      case VectorKind::Load:
      case VectorKind::Broadcast: ++c.loads; break;
      case VectorKind::Store: ++c.stores; break;
      case VectorKind::Op:
      case VectorKind::Reduce: ++c.operations; break;
      case VectorKind::Permute:
      case VectorKind::Extract:
      case VectorKind::Merge: ++c.data_moves; break;
    }
  }
  return c;
}

namespace {

constexpr double kReassociationTolerance = 1e-10;

bool better(const Census& a, const Census& b) {
  if (a.total() != b.total()) return a.total() < b.total();
  return a.data_moves < b.data_moves;
}

}  // namespace

SearchResult prospect(const ScalarGraph& input, std::size_t vec_size, const SearchLimits& limits) {
  if (vec_size < 2) fail(ErrorCode::Unsupported, "vec_size must be at least 2");
  const ScalarGraph base = dedup(input);
  const MemoryImage image = MemoryImage::random(base.arrays(), limits.oracle_seed);
  const MemoryImage expected = interpret_scalar(base, image);

  std::vector<bool> variants;
  if (limits.reduction != std::optional<bool>(true)) variants.push_back(false);
  if (limits.reduction != std::optional<bool>(false) && !find_reduction_paths(base, vec_size).empty()) {
    variants.push_back(true);
  }

  std::vector<SplitStrategy> strategies = {SplitStrategy::Identity, SplitStrategy::Partitioning,
                                           SplitStrategy::Clustering};
  if (limits.strategy) strategies = {*limits.strategy};

  SearchResult result;
  bool have_winner = false;
  std::string diagnostics;
  for (bool reduce : variants) {
    ScalarGraph graph = reduce ? apply_all_reductions(base, vec_size) : base;
    GroupGraph gg = build_group_graph(graph);
    const std::vector<LoadStoreSplitChoice> choices = enumerate_load_store_splits(gg, vec_size, limits.c_max);
    if (!reduce) result.report.choices_available = count_load_store_splits(gg, vec_size);
    if (limits.choice && *limits.choice >= choices.size()) {
      fail(ErrorCode::Precondition, "load/store choice " + std::to_string(*limits.choice) + " out of range (" +
                                        std::to_string(choices.size()) + " available)");
    }
    bool variant_won = false;
    std::size_t winner_choice = 0;
    for (std::size_t c = 0; c < choices.size(); ++c) {
      if (limits.choice && c != *limits.choice) continue;
      for (SplitStrategy strategy : strategies) {
        ConfigResult cr;
        cr.config = {reduce, c, strategy, vec_size};
        try {
          VectorGraph vg = vectorize(gg, choices[c], strategy, vec_size, nullptr, limits.order_sort);
          cr.census = count_nodes(vg);
          const MemoryImage got = interpret_vector(vg, image);
          cr.valid = reduce ? max_relative_difference(expected, got) <= kReassociationTolerance
                            : bit_identical(expected, got);
          if (!cr.valid) cr.diagnostic = "oracle mismatch";
          if (cr.valid && (!have_winner || better(cr.census, result.report.best().census))) {
            have_winner = true;
            variant_won = true;
            winner_choice = c;
            result.report.winner = result.report.configs.size();
            result.graph = std::move(vg);
            result.config = cr.config;
          }
        } catch (const Error& e) {
          cr.valid = false;
          cr.diagnostic = e.what();
        }
        if (!cr.valid) diagnostics += describe(cr.config) + ": " + cr.diagnostic + "\n";
        result.report.configs.push_back(std::move(cr));
      }
    }
    if (variant_won) {
      result.scalar = std::move(graph);
      result.groups = std::move(gg);
      result.trace = {};
      vectorize(result.groups, choices[winner_choice], result.config.strategy, vec_size, &result.trace,
                limits.order_sort);
    }
  }
  if (!have_winner) fail(ErrorCode::OracleMismatch, "no valid configuration:\n" + diagnostics);
  return result;
}

}  // namespace vecgraph
