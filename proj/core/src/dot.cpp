// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/dot.hpp"

#include <sstream>

namespace vecgraph {
namespace {

std::string scalar_label(const ScalarGraph& g, const ScalarNode& n) {
  switch (n.kind) {
    case NodeKind::Set: return "set " + format_double(n.constant);
    case NodeKind::Load:
    case NodeKind::Store:
      return std::string(to_string(n.kind)) + "[" + g.arrays()[n.array].name + ":" + std::to_string(n.index) + "]";
    case NodeKind::Operation: return std::string(to_string(n.opcode));
    case NodeKind::Reduce: return "reduce:" + std::string(to_string(n.opcode));
  }
  return "?";
}

std::string group_label(const GroupGraph& gg, const Group& g) {
  std::string key;
  switch (g.kind) {
    case NodeKind::Set: key = "set " + format_double(g.constant); break;
    case NodeKind::Load:
    case NodeKind::Store: key = std::string(to_string(g.kind)) + "[" + gg.scalar().arrays()[g.array].name + "]"; break;
    case NodeKind::Operation: key = std::string(to_string(g.opcode)) + "@" + std::to_string(g.depth); break;
    case NodeKind::Reduce: key = "reduce:" + std::string(to_string(g.opcode)) + "@" + std::to_string(g.depth); break;
  }
  return key + " x" + std::to_string(g.members.size());
}

std::string pattern_text(const std::vector<int>& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + (p[i] < 0 ? std::string("_") : std::to_string(p[i]));
  return out + "]";
}

std::string vector_label(const VectorGraph& g, const VectorNode& n) {
  switch (n.kind) {
    case VectorKind::Load:
    case VectorKind::Store:
      return std::string(to_string(n.kind)) + "[" + g.arrays()[n.array].name + ":" + std::to_string(n.start) + "+" +
             std::to_string(n.count) + "]";
    case VectorKind::Op: return std::string(to_string(n.opcode));
    case VectorKind::Broadcast: return "broadcast " + format_double(n.constant);
    case VectorKind::Permute:
    case VectorKind::Extract:
    case VectorKind::Merge: return std::string(to_string(n.kind)) + " " + pattern_text(n.pattern);
    case VectorKind::Reduce: return "reduce:" + std::string(to_string(n.opcode)) + " " + pattern_text(n.pattern);
  }
  return "?";
}

const char* vector_shape(const VectorNode& n) {
  if (n.kind == VectorKind::Reduce) return "diamond";
  if (n.is_data_move()) return "hexagon";
  return "box";
}

void vector_body(std::ostringstream& out, const VectorGraph& graph, bool with_position,
                 std::span<const NodeId> order) {
  std::vector<std::size_t> position(graph.size(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;
  for (const VectorNode& n : graph.nodes()) {
    out << "  n" << n.id << " [label=\"";
    if (with_position) out << position[n.id] << ": ";
    out << vector_label(graph, n) << "\", shape=" << vector_shape(n) << "];\n";
  }
  for (const VectorNode& n : graph.nodes()) {
    for (NodeId in : n.inputs) out << "  n" << in << " -> n" << n.id << ";\n";
    for (NodeId in : n.after) out << "  n" << in << " -> n" << n.id << " [style=dashed];\n";
  }
}

}  // namespace

std::string to_dot(const ScalarGraph& graph) {
  std::ostringstream out;
  out << "digraph scalar {\n";
  for (const ScalarNode& n : graph.nodes()) {
    out << "  n" << n.id << " [label=\"" << scalar_label(graph, n) << "\"";
    if (n.kind == NodeKind::Reduce) out << ", shape=diamond";
    out << "];\n";
  }
  for (const ScalarNode& n : graph.nodes()) {
    for (NodeId in : n.inputs) out << "  n" << in << " -> n" << n.id << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const GroupGraph& graph) {
  std::ostringstream out;
  out << "digraph groups {\n";
  for (const Group& g : graph.groups()) out << "  g" << g.id << " [label=\"" << group_label(graph, g) << "\", shape=box];\n";
  for (const auto& [from, to] : graph.edges()) out << "  g" << from << " -> g" << to << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const VectorGraph& graph) {
  std::ostringstream out;
  out << "digraph vector {\n";
  vector_body(out, graph, false, {});
  out << "}\n";
  return out.str();
}

std::string schedule_to_dot(const VectorGraph& graph, std::span<const NodeId> order) {
  std::ostringstream out;
  out << "digraph schedule {\n";
  vector_body(out, graph, true, order);
  for (std::size_t k = 1; k < order.size(); ++k) {
    out << "  n" << order[k - 1] << " -> n" << order[k] << " [style=bold, color=gray, constraint=false];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace vecgraph
