// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vecgraph/ordering.hpp"
#include "vecgraph/scalar_ir.hpp"

namespace vecgraph {

enum class VectorKind : std::uint8_t { Load, Store, Op, Broadcast, Permute, Extract, Merge, Reduce };

std::string_view to_string(VectorKind kind) noexcept;

/// One vector instruction.
///   Load      lanes [0, count) <- array[start + l]; a one-element load is a
///             broadcast of that element to every lane
///   Store     array[start + l] <- lane l for each l < count in lane_mask
///   Op        lane-wise opcode over one or two inputs
///   Broadcast every lane <- constant
///   Permute   lane l <- input lane pattern[l]
///   Extract   as Permute; lanes with pattern -1 are left undefined
///   Merge     lane l <- pattern[l] < vec ? in0[pattern[l]] : in1[pattern[l]-vec]
///   Reduce    every lane <- opcode folded over input lanes listed in pattern
/// Pattern entries of -1 leave a lane undefined. `after` lists ordering-only
/// predecessors (a store after the loads of the elements it overwrites).
struct VectorNode {
  NodeId id = 0;
  VectorKind kind = VectorKind::Op;
  Opcode opcode = Opcode::Add;
  ArrayId array = 0;
  std::size_t start = 0;
  std::size_t count = 0;
  std::uint64_t lane_mask = 0;
  double constant = 0.0;
  std::vector<int> pattern;
  std::vector<NodeId> inputs;
  std::vector<NodeId> after;

  bool is_data_move() const noexcept {
    return kind == VectorKind::Permute || kind == VectorKind::Extract || kind == VectorKind::Merge;
  }
  friend bool operator==(const VectorNode&, const VectorNode&) = default;
};

/// Vector instruction DAG with dense ids; every input id is smaller than its
/// consumer's, so id order is a topological order.
class VectorGraph {
 public:
  VectorGraph() = default;
  /// Validates shapes and references; throws vecgraph::Error.
  VectorGraph(std::size_t vec_size, std::vector<ArrayDecl> arrays, std::vector<VectorNode> nodes);

  std::size_t vec_size() const noexcept { return vec_size_; }
  std::span<const ArrayDecl> arrays() const noexcept { return arrays_; }
  std::span<const VectorNode> nodes() const noexcept { return nodes_; }
  const VectorNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  /// Distinct data consumers, ascending.
  std::span<const NodeId> successors(NodeId id) const { return successors_.at(id); }
  /// Distinct data producers, ascending.
  std::span<const NodeId> predecessors(NodeId id) const { return predecessors_.at(id); }
  /// Distinct nodes that must wait for `id` (data or ordering), ascending.
  std::span<const NodeId> dependents(NodeId id) const { return dependents_.at(id); }

  friend bool operator==(const VectorGraph& a, const VectorGraph& b) {
    return a.vec_size_ == b.vec_size_ && a.arrays_ == b.arrays_ && a.nodes_ == b.nodes_;
  }

 private:
  std::size_t vec_size_ = 0;
  std::vector<ArrayDecl> arrays_;
  std::vector<VectorNode> nodes_;
  std::vector<std::vector<NodeId>> successors_;
  std::vector<std::vector<NodeId>> predecessors_;
  std::vector<std::vector<NodeId>> dependents_;
};

/// Incremental construction with structural sharing: adding a node equal
/// (inputs and payload) to an existing one returns the existing id.
class VectorGraphBuilder {
 public:
  VectorGraphBuilder(std::size_t vec_size, std::vector<ArrayDecl> arrays);

  std::size_t vec_size() const noexcept { return vec_size_; }

  NodeId load(ArrayId array, std::size_t start, std::size_t count);
  NodeId store(ArrayId array, std::size_t start, std::size_t count, std::uint64_t lane_mask, NodeId value);
  NodeId op(Opcode opcode, std::vector<NodeId> inputs);
  NodeId broadcast(double constant);
  NodeId reduce(Opcode opcode, NodeId input, std::vector<int> lanes);
  NodeId permute(NodeId input, std::vector<int> pattern);
  NodeId extract(NodeId input, std::vector<int> pattern);
  NodeId merge(NodeId lhs, NodeId rhs, std::vector<int> pattern);

  /// Materializes a requirement; returns the vector that satisfies it.
  NodeId realize(const LaneRequirement& requirement);

  VectorGraph finish() &&;

 private:
  NodeId add(VectorNode node);

  std::size_t vec_size_;
  std::vector<ArrayDecl> arrays_;
  std::vector<VectorNode> nodes_;
  std::vector<std::vector<NodeId>> loads_of_array_;
  std::map<std::vector<std::uint64_t>, NodeId> index_;
};

/// Lane-accurate evaluation in id order, or in `order` (must be topological).
/// Memory is updated in place, so ordering edges matter. Throws
/// Error(InvariantViolation) when an undefined lane is stored or reduced.
MemoryImage interpret_vector(const VectorGraph& graph, const MemoryImage& memory);
MemoryImage interpret_vector(const VectorGraph& graph, const MemoryImage& memory, std::span<const NodeId> order);

/// True if `order` is a permutation of the ids respecting every dependency.
bool is_topological(const VectorGraph& graph, std::span<const NodeId> order);

/// Line-oriented text form; parse_vector_ir(to_text(g)) == g.
std::string to_text(const VectorGraph& graph);
VectorGraph parse_vector_ir(std::string_view text);

/// Each scalar node becomes one full-width vector node; element i of an
/// array becomes the vector at elements [i*vec, (i+1)*vec). Used to run the
/// scheduler on random instruction graphs.
VectorGraph lift_scalar_graph(const ScalarGraph& graph, std::size_t vec_size);

}  // namespace vecgraph
