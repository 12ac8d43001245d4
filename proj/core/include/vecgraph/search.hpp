// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vecgraph/lowering.hpp"

namespace vecgraph {

struct PipelineConfig {
  bool use_reduction = false;
  std::size_t load_store_choice = 0;
  SplitStrategy strategy = SplitStrategy::Identity;
  std::size_t vec_size = 8;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

std::string describe(const PipelineConfig& config);

/// Node counts in four categories. Broadcasts count as loads and
/// reductions as operations.
struct Census {
  std::size_t loads = 0;
  std::size_t stores = 0;
  std::size_t operations = 0;
  std::size_t data_moves = 0;

  std::size_t total() const noexcept { return loads + stores + operations + data_moves; }
  friend bool operator==(const Census&, const Census&) = default;
};

Census count_nodes(const VectorGraph& graph);

struct ConfigResult {
  PipelineConfig config;
  Census census;
  bool valid = false;
  std::string diagnostic;  // why an invalid candidate was discarded
};

struct SearchReport {
  std::vector<ConfigResult> configs;  // evaluation order
  std::size_t winner = 0;             // index into configs
  std::uint64_t choices_available = 0;  // before c_max truncation, no reduction

  const ConfigResult& best() const { return configs.at(winner); }
};

/// Restricts the search; unset axes are explored fully.
struct SearchLimits {
  std::size_t c_max = 4096;
  std::optional<bool> reduction;
  std::optional<std::size_t> choice;
  std::optional<SplitStrategy> strategy;
  std::uint64_t oracle_seed = 0x5eed;
  ConstraintSort order_sort = ConstraintSort::Descending;
};

struct SearchResult {
  VectorGraph graph;          // winner
  PipelineConfig config;      // winner
  SearchReport report;
  ScalarGraph scalar;         // graph the winner was built from (deduped, maybe reduced)
  GroupGraph groups;          // its group graph
  VectorizeTrace trace;       // winner's split decisions
};

/// Greedy prospecting: dedup, then for reduction off/on (on only when a
/// path exists), every load/store choice and every split strategy, build
/// the vector graph and check it against the scalar interpreter on a fixed
/// random image (bit-exact without reduction, 1e-10 relative with it).
/// The valid graph with the fewest nodes wins; ties go to fewer data moves,
/// then to the earlier configuration. Throws Error(OracleMismatch) when no
/// candidate is valid.
SearchResult prospect(const ScalarGraph& graph, std::size_t vec_size, const SearchLimits& limits = {});

}  // namespace vecgraph
