// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "vecgraph/grouping.hpp"
#include "vecgraph/ordering.hpp"
#include "vecgraph/splitting.hpp"
#include "vecgraph/vector_ir.hpp"

namespace vecgraph {

/// How oversized operation groups are divided.
enum class SplitStrategy { Identity, Partitioning, Clustering };

std::string_view to_string(SplitStrategy strategy) noexcept;
std::optional<SplitStrategy> parse_split_strategy(std::string_view name) noexcept;

/// Per operation group: members, the score matrix (empty unless the group
/// was split by score) and the sub-groups chosen.
struct GroupTrace {
  GroupId group = 0;
  std::vector<NodeId> members;
  ScoreMatrix scores;
  SubGrouping subgroups;
};

struct VectorizeTrace {
  std::vector<GroupTrace> groups;
};

/// One end-to-end build of a vector graph for a fixed configuration:
///   1. one vector load per slot holding a loaded element, one broadcast per
///      constant;
///   2. operation and reduce groups from the leaves up: split, fix lane
///      order, realize operands with data moves, emit the vector op;
///   3. one store per slot holding a stored element, masked to those lanes.
VectorGraph vectorize(const GroupGraph& gg, const LoadStoreSplitChoice& choice, SplitStrategy strategy,
                      std::size_t vec_size, VectorizeTrace* trace = nullptr,
                      ConstraintSort sort = ConstraintSort::Descending);

}  // namespace vecgraph
