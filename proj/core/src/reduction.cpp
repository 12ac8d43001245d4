// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/reduction.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "vecgraph/error.hpp"

namespace vecgraph {
namespace {

bool chain_node(const ScalarNode& node) {
  return node.kind == NodeKind::Operation && is_commutative(node.opcode) && node.inputs.size() == 2;
}

// The operand `node` extends into, if any.
std::optional<NodeId> chain_predecessor(const ScalarGraph& graph, const ScalarNode& node) {
  if (!chain_node(node)) return std::nullopt;
  std::optional<NodeId> candidates[2];
  for (std::size_t k = 0; k < 2; ++k) {
    const ScalarNode& input = graph.node(node.inputs[k]);
    const auto succ = graph.successors(input.id);
    if (chain_node(input) && input.opcode == node.opcode && succ.size() == 1 && succ[0] == node.id &&
        node.inputs[0] != node.inputs[1]) {
      candidates[k] = input.id;
    }
  }
  if (candidates[0] && candidates[1]) {
    const std::size_t d0 = graph.depth(*candidates[0]);
    const std::size_t d1 = graph.depth(*candidates[1]);
    if (d0 == d1) return std::nullopt;
    return d0 > d1 ? candidates[0] : candidates[1];
  }
  if (candidates[0]) {
    if (graph.depth(*candidates[0]) <= graph.depth(node.inputs[1])) return std::nullopt;
    return candidates[0];
  }
  if (candidates[1]) {
    if (graph.depth(*candidates[1]) <= graph.depth(node.inputs[0])) return std::nullopt;
    return candidates[1];
  }
  return std::nullopt;
}

void check_path(const ScalarGraph& graph, const ReductionPath& path) {
  auto stale = [](const std::string& why) { fail(ErrorCode::StaleHandle, "reduction path is stale: " + why); };
  if (path.nodes.size() < 2) stale("fewer than two nodes");
  for (std::size_t k = 0; k < path.nodes.size(); ++k) {
    const NodeId id = path.nodes[k];
    if (!graph.contains(id)) stale("node " + std::to_string(id) + " is gone");
    const ScalarNode& node = graph.node(id);
    if (!chain_node(node) || node.opcode != path.opcode) stale("node " + std::to_string(id) + " changed");
    if (k + 1 < path.nodes.size()) {
      const auto succ = graph.successors(id);
      if (succ.size() != 1 || succ[0] != path.nodes[k + 1]) {
        stale("node " + std::to_string(id) + " does not feed only the next node");
      }
      const ScalarNode& next = graph.node(path.nodes[k + 1]);
      if (next.inputs[0] == next.inputs[1]) stale("node " + std::to_string(next.id) + " squares its input");
    }
  }
}

}  // namespace

std::vector<ReductionPath> find_reduction_paths(const ScalarGraph& graph, std::size_t vec_size) {
  std::map<NodeId, NodeId> predecessor;
  std::vector<bool> is_predecessor(graph.max_id() + 1, false);
  for (const ScalarNode& node : graph.nodes()) {
    if (auto p = chain_predecessor(graph, node)) {
      predecessor[node.id] = *p;
      is_predecessor[*p] = true;
    }
  }
  std::vector<ReductionPath> paths;
  for (const ScalarNode& node : graph.nodes()) {
    if (!chain_node(node) || is_predecessor[node.id]) continue;
    ReductionPath path;
    path.opcode = node.opcode;
    for (NodeId cur = node.id;;) {
      path.nodes.push_back(cur);
      auto it = predecessor.find(cur);
      if (it == predecessor.end()) break;
      cur = it->second;
    }
    std::reverse(path.nodes.begin(), path.nodes.end());
    if (path.nodes.size() > vec_size) paths.push_back(std::move(path));
  }
  return paths;
}

std::vector<NodeId> path_operands(const ScalarGraph& graph, const ReductionPath& path) {
  std::vector<NodeId> operands;
  const ScalarNode& start = graph.node(path.nodes.front());
  operands.assign(start.inputs.begin(), start.inputs.end());
  for (std::size_t k = 1; k < path.nodes.size(); ++k) {
    const ScalarNode& node = graph.node(path.nodes[k]);
    operands.push_back(node.inputs[0] == path.nodes[k - 1] ? node.inputs[1] : node.inputs[0]);
  }
  return operands;
}

ScalarGraph apply_reduction(const ScalarGraph& graph, const ReductionPath& path, std::size_t vec_size) {
  if (vec_size < 2) fail(ErrorCode::Precondition, "reduction needs vec_size >= 2");
  check_path(graph, path);
  const std::vector<NodeId> operands = path_operands(graph, path);
  const NodeId tail = path.nodes.back();

  std::vector<ScalarNode> nodes;
  nodes.reserve(graph.size() + vec_size + 1);
  std::vector<bool> removed(graph.max_id() + 1, false);
  for (NodeId id : path.nodes) removed[id] = true;
  for (const ScalarNode& node : graph.nodes()) {
    if (!removed[node.id]) nodes.push_back(node);
  }

  NodeId next_id = graph.max_id() + 1;
  const std::size_t chains = std::min(vec_size, operands.size());
  std::vector<NodeId> tails;
  for (std::size_t c = 0; c < chains; ++c) {
    NodeId acc = operands[c];
    for (std::size_t j = c + vec_size; j < operands.size(); j += vec_size) {
      ScalarNode op;
      op.id = next_id++;
      op.kind = NodeKind::Operation;
      op.opcode = path.opcode;
      op.inputs = {acc, operands[j]};
      acc = op.id;
      nodes.push_back(std::move(op));
    }
    tails.push_back(acc);
  }
  ScalarNode reduce;
  reduce.id = next_id++;
  reduce.kind = NodeKind::Reduce;
  reduce.opcode = path.opcode;
  reduce.inputs = tails;
  const NodeId reduce_id = reduce.id;
  nodes.push_back(std::move(reduce));

  for (ScalarNode& node : nodes) {
    if (node.id == reduce_id) continue;
    for (NodeId& input : node.inputs) {
      if (input == tail) input = reduce_id;
    }
  }
  std::sort(nodes.begin(), nodes.end(), [](const ScalarNode& a, const ScalarNode& b) { return a.id < b.id; });
  return ScalarGraph(std::vector<ArrayDecl>(graph.arrays().begin(), graph.arrays().end()), std::move(nodes));
}

ScalarGraph apply_all_reductions(const ScalarGraph& graph, std::size_t vec_size) {
  ScalarGraph result = graph;
  // Paths are node-disjoint and rewriting one keeps every other id intact.
  for (const ReductionPath& path : find_reduction_paths(graph, vec_size)) {
    result = apply_reduction(result, path, vec_size);
  }
  return result;
}

}  // namespace vecgraph
