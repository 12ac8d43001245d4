// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vecgraph/types.hpp"

namespace vecgraph {

/// Kinds of nodes in a scalar instruction graph. Reduce nodes only appear
/// after the reduction pass; they combine up to vec_size partial results.
enum class NodeKind : std::uint8_t { Set, Load, Operation, Reduce, Store };

std::string_view to_string(NodeKind kind) noexcept;

struct ScalarNode {
  NodeId id = 0;
  NodeKind kind = NodeKind::Set;
  Opcode opcode = Opcode::Add;  // Operation and Reduce
  ArrayId array = 0;            // Load and Store
  std::size_t index = 0;        // Load and Store
  double constant = 0.0;        // Set
  std::vector<NodeId> inputs;

  bool commutative() const noexcept {
    return (kind == NodeKind::Operation || kind == NodeKind::Reduce) &&
           is_commutative(opcode);
  }
  bool accesses_memory() const noexcept {
    return kind == NodeKind::Load || kind == NodeKind::Store;
  }
  bool produces_value() const noexcept { return kind != NodeKind::Store; }

  friend bool operator==(const ScalarNode&, const ScalarNode&) = default;
};

enum class TopoTieBreak { LowestId, HighestId };

/// Immutable DAG of scalar instructions for one fully unrolled kernel.
///
/// Node ids are unique but need not be dense: passes keep the ids of the
/// nodes they preserve and append new ones above max_id(). Nodes are stored
/// in ascending id order. Successor lists, depth from the Load/Set frontier
/// and a deterministic topological order are computed once at construction.
class ScalarGraph {
 public:
  ScalarGraph() = default;

  /// Validates the node list and throws vecgraph::Error on malformed input.
  ScalarGraph(std::vector<ArrayDecl> arrays, std::vector<ScalarNode> nodes);

  std::span<const ArrayDecl> arrays() const noexcept { return arrays_; }
  std::span<const ScalarNode> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  bool contains(NodeId id) const noexcept;
  const ScalarNode& node(NodeId id) const;
  /// Distinct consumers of `id`, ascending.
  std::span<const NodeId> successors(NodeId id) const;
  /// 0 for Load/Set; 1 + max over inputs otherwise.
  std::size_t depth(NodeId id) const;
  /// Kahn order preferring the lowest ready id.
  std::span<const NodeId> topological_order() const noexcept { return topo_; }
  std::vector<NodeId> topological_order(TopoTieBreak tie_break) const;

  /// Largest id in use; 0 for an empty graph.
  NodeId max_id() const noexcept { return nodes_.empty() ? 0 : nodes_.back().id; }
  std::size_t count(NodeKind kind) const noexcept;

 private:
  std::size_t position(NodeId id) const;

  std::vector<ArrayDecl> arrays_;
  std::vector<ScalarNode> nodes_;
  std::vector<std::int32_t> position_;  // id -> index into nodes_, -1 if absent
  std::vector<std::vector<NodeId>> successors_;
  std::vector<std::size_t> depth_;
  std::vector<NodeId> topo_;
};

/// Per-array buffers of doubles, indexed by ArrayId.
struct MemoryImage {
  std::vector<std::vector<double>> buffers;

  static MemoryImage zeros(std::span<const ArrayDecl> arrays);
  /// Uniform values in [lo, hi).
  static MemoryImage random(std::span<const ArrayDecl> arrays, std::uint64_t seed,
                            double lo = 1.0, double hi = 2.0);
  /// Integer-valued doubles in [lo, hi]; sums stay exact.
  static MemoryImage random_integers(std::span<const ArrayDecl> arrays,
                                     std::uint64_t seed, int lo = -64, int hi = 64);
};

/// Bitwise equality of every buffer element (NaN payloads included).
bool bit_identical(const MemoryImage& lhs, const MemoryImage& rhs) noexcept;

/// Largest |a-b| / max(|a|, tiny) over all elements; infinity on shape mismatch.
double max_relative_difference(const MemoryImage& lhs, const MemoryImage& rhs) noexcept;

/// Evaluates the graph. Loads read `memory`, stores write into the returned
/// copy, so the result does not depend on the evaluation order.
MemoryImage interpret_scalar(const ScalarGraph& graph, const MemoryImage& memory);
MemoryImage interpret_scalar(const ScalarGraph& graph, const MemoryImage& memory,
                             std::span<const NodeId> order);

/// Merges equivalent nodes (same kind, payload and inputs; input order
/// ignored for commutative opcodes). Each class keeps its lowest id.
ScalarGraph dedup(const ScalarGraph& graph);

/// A value in the kernel under construction: either a folded constant or a
/// node of the graph.
class Value {
 public:
  static Value constant(double c) { return Value(true, c, 0); }
  static Value node(NodeId id) { return Value(false, 0.0, id); }

  bool is_constant() const noexcept { return is_constant_; }
  double constant_value() const noexcept { return constant_; }
  NodeId node_id() const noexcept { return node_; }

 private:
  Value(bool is_constant, double c, NodeId id)
      : is_constant_(is_constant), constant_(c), node_(id) {}

  bool is_constant_;
  double constant_;
  NodeId node_;
};

/// Records the straight-line execution of a kernel as a scalar graph.
///
/// Local variables never become nodes. A load of an element stored earlier
/// in the kernel is forwarded to the stored value, only the last store to an
/// element survives, and `0 + x` folds to `x` so an accumulator initialised
/// to zero leaves no Set node behind.
class KernelBuilder {
 public:
  ArrayId declare_array(std::string name, ArrayRole role, std::size_t length);

  Value load(ArrayId array, std::size_t index);
  Value apply(Opcode op, Value operand);
  Value apply(Opcode op, Value lhs, Value rhs);
  void store(ArrayId array, std::size_t index, Value value);

  /// Drops overwritten stores and dead nodes, renumbers densely in build order.
  ScalarGraph finish() const;

  std::span<const ArrayDecl> arrays() const noexcept { return arrays_; }

 private:
  NodeId materialize(Value value);
  NodeId add(ScalarNode node);
  void check_access(ArrayId array, std::size_t index) const;

  std::vector<ArrayDecl> arrays_;
  std::vector<ScalarNode> nodes_;
  std::vector<bool> dead_;
  // Per array: node id of the live store for each element, or -1.
  std::vector<std::vector<std::int64_t>> live_store_;
};

std::string to_json(const ScalarGraph& graph);
ScalarGraph scalar_graph_from_json(std::string_view text);

}  // namespace vecgraph
