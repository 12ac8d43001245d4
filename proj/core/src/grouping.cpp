// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/grouping.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <tuple>

#include "vecgraph/error.hpp"

namespace vecgraph {
namespace {

// (kind, array-or-opcode, depth, constant bits); std::map order is the group order.
using GroupKey = std::tuple<int, int, std::size_t, std::uint64_t>;

GroupKey key_of(const ScalarGraph& graph, const ScalarNode& node) {
  const int kind = static_cast<int>(node.kind);
  switch (node.kind) {
    case NodeKind::Set:
      return {kind, 0, 0, std::bit_cast<std::uint64_t>(node.constant)};
    case NodeKind::Load:
    case NodeKind::Store:
      return {kind, static_cast<int>(node.array), 0, 0};
    case NodeKind::Operation:
    case NodeKind::Reduce:
      return {kind, static_cast<int>(node.opcode), graph.depth(node.id), 0};
  }
  return {};
}

}  // namespace

GroupGraph::GroupGraph(ScalarGraph graph) : scalar_(std::move(graph)) {
  std::map<GroupKey, std::vector<NodeId>> buckets;
  for (const ScalarNode& node : scalar_.nodes()) buckets[key_of(scalar_, node)].push_back(node.id);

  group_of_.assign(scalar_.max_id() + 1, 0);
  for (auto& [key, members] : buckets) {
    const ScalarNode& first = scalar_.node(members.front());
    Group g;
    g.id = static_cast<GroupId>(groups_.size());
    g.kind = first.kind;
    g.opcode = first.opcode;
    g.array = first.accesses_memory() ? first.array : 0;
    g.depth = (first.kind == NodeKind::Operation || first.kind == NodeKind::Reduce) ? std::get<2>(key) : 0;
    g.constant = first.kind == NodeKind::Set ? first.constant : 0.0;
    g.members = std::move(members);
    for (NodeId m : g.members) group_of_[m] = g.id;
    groups_.push_back(std::move(g));
  }
  for (const ScalarNode& node : scalar_.nodes()) {
    for (NodeId input : node.inputs) edges_.emplace_back(group_of_[input], group_of_[node.id]);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

GroupId GroupGraph::group_of(NodeId node) const {
  if (!scalar_.contains(node)) fail(ErrorCode::OutOfBounds, "node " + std::to_string(node) + " is not in the group graph");
  return group_of_[node];
}

GroupGraph build_group_graph(const ScalarGraph& graph) { return GroupGraph(graph); }

}  // namespace vecgraph
