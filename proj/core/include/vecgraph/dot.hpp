// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>

#include "vecgraph/grouping.hpp"
#include "vecgraph/vector_ir.hpp"

namespace vecgraph {

// Graphviz renderings with deterministic bytes: nodes in ascending id,
// edges in input order.

/// Labels: "load[src0:3]", "store[dest:0]", "add", "set 1.5", and
/// "reduce:add" drawn as a diamond.
std::string to_dot(const ScalarGraph& graph);

/// One node per group labelled with its kind, key and member count.
std::string to_dot(const GroupGraph& graph);

/// Vector instructions; ordering-only edges are dashed.
std::string to_dot(const VectorGraph& graph);

/// The vector graph laid out in `order`, with a bold chain through it.
std::string schedule_to_dot(const VectorGraph& graph, std::span<const NodeId> order);

}  // namespace vecgraph
