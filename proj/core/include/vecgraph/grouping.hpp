// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vecgraph/scalar_ir.hpp"

namespace vecgraph {

using GroupId = std::uint32_t;

/// Candidate vector instruction: scalar nodes sharing kind and key.
///   Set        keyed by constant
///   Load/Store keyed by array
///   Operation  keyed by (opcode, depth)
///   Reduce     keyed by (opcode, depth)
struct Group {
  GroupId id = 0;
  NodeKind kind = NodeKind::Load;
  Opcode opcode = Opcode::Add;
  ArrayId array = 0;
  std::size_t depth = 0;
  double constant = 0.0;
  std::vector<NodeId> members;  // ascending id
};

/// Groups of a scalar graph plus the edges between them. Holds its own copy
/// of the scalar graph so downstream stages can look members up.
class GroupGraph {
 public:
  GroupGraph() = default;
  explicit GroupGraph(ScalarGraph graph);

  const ScalarGraph& scalar() const noexcept { return scalar_; }
  std::span<const Group> groups() const noexcept { return groups_; }
  const Group& group(GroupId id) const { return groups_.at(id); }
  /// (from, to) pairs, sorted and unique.
  std::span<const std::pair<GroupId, GroupId>> edges() const noexcept { return edges_; }
  GroupId group_of(NodeId node) const;

 private:
  ScalarGraph scalar_;
  std::vector<Group> groups_;
  std::vector<std::pair<GroupId, GroupId>> edges_;
  std::vector<GroupId> group_of_;
};

GroupGraph build_group_graph(const ScalarGraph& graph);

}  // namespace vecgraph
