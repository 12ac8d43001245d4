// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "vecgraph/scalar_ir.hpp"

namespace vecgraph {

/// A serial chain of one commutative opcode: nodes[k] consumes nodes[k-1]
/// and nodes[k-1] has no other consumer.
struct ReductionPath {
  Opcode opcode = Opcode::Add;
  std::vector<NodeId> nodes;

  friend bool operator==(const ReductionPath&, const ReductionPath&) = default;
};

/// Maximal node-disjoint chains longer than vec_size, ordered by tail id.
///
/// A chain extends backwards from a node into the operand that is an
/// operation of the same opcode with no other consumer. When both operands
/// qualify, the strictly deeper one is taken; equal depths stop the chain,
/// since a balanced tree is not a serial accumulation.
std::vector<ReductionPath> find_reduction_paths(const ScalarGraph& graph, std::size_t vec_size);

/// Replaces the chain by vec_size round-robin partial chains joined by one
/// Reduce node that takes over the consumers of the chain's tail. Leaf
/// operand j (the start node's inputs, then each later node's off-chain
/// input) goes to partial chain j mod vec_size. New nodes get ids above
/// graph.max_id(). Throws Error(StaleHandle) if the path is not in `graph`.
ScalarGraph apply_reduction(const ScalarGraph& graph, const ReductionPath& path, std::size_t vec_size);

/// Finds all paths and rewrites each of them.
ScalarGraph apply_all_reductions(const ScalarGraph& graph, std::size_t vec_size);

/// Leaf operands of a path, in the order they are dealt to partial chains.
std::vector<NodeId> path_operands(const ScalarGraph& graph, const ReductionPath& path);

}  // namespace vecgraph
