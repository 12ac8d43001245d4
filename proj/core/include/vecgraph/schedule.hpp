// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vecgraph/rational.hpp"
#include "vecgraph/vector_ir.hpp"

namespace vecgraph {

/// Register benefit of issuing `id` next: +1 if its result is consumed,
/// minus 1/k for each producer with k consumers not yet done (`id` counts
/// as not done). Lower is better.
Rational sched_cost(const VectorGraph& graph, NodeId id, const std::vector<bool>& done);

/// Longest path, in edges, from each node to a node nothing depends on.
std::vector<std::size_t> inverse_depth(const VectorGraph& graph);

/// Weakly connected components (data and ordering edges), each sorted,
/// listed by smallest id.
std::vector<std::vector<NodeId>> components(const VectorGraph& graph);

/// Ready-list scheduling, one component after another: repeatedly issue
/// the ready node with the lowest cost, then the largest inverse depth,
/// then the lowest id.
std::vector<NodeId> schedule(const VectorGraph& graph);

/// Plain id order (a valid topological order of any VectorGraph).
std::vector<NodeId> id_order(const VectorGraph& graph);

/// Stack traffic of running `order` with `registers` vector registers.
/// Every consumed result needs a register from its definition to its last
/// use; operands are reloaded if spilled, dying operands are released
/// before the result is allocated, and a full register file evicts the
/// value used farthest in the future. Each first spill of a value and each
/// reload count one access. Throws if registers < max arity + 1.
std::size_t simulate_stack_accesses(const VectorGraph& graph, std::span<const NodeId> order, std::size_t registers);

}  // namespace vecgraph
