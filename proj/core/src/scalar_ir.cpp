// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/scalar_ir.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>

#include <nlohmann/json.hpp>

#include "vecgraph/error.hpp"
#include "vecgraph/random.hpp"

namespace vecgraph {

std::string_view to_string(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::Set: return "set";
    case NodeKind::Load: return "load";
    case NodeKind::Operation: return "operation";
    case NodeKind::Reduce: return "reduce";
    case NodeKind::Store: return "store";
  }
  return "?";
}

namespace {

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  for (NodeKind kind : {NodeKind::Set, NodeKind::Load, NodeKind::Operation,
                        NodeKind::Reduce, NodeKind::Store}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::string describe(const ScalarNode& node) {
  return std::string(to_string(node.kind)) + " node " + std::to_string(node.id);
}

void validate_node(const ScalarNode& node, std::span<const ArrayDecl> arrays) {
  auto expect_inputs = [&](std::size_t lo, std::size_t hi) {
    if (node.inputs.size() < lo || node.inputs.size() > hi) {
      fail(ErrorCode::InvalidKernel,
           describe(node) + " has " + std::to_string(node.inputs.size()) + " inputs");
    }
  };
  switch (node.kind) {
    case NodeKind::Set:
      expect_inputs(0, 0);
      break;
    case NodeKind::Load:
    case NodeKind::Store:
      expect_inputs(node.kind == NodeKind::Load ? 0 : 1, node.kind == NodeKind::Load ? 0 : 1);
      if (node.array >= arrays.size()) {
        fail(ErrorCode::InvalidKernel, describe(node) + " references an undeclared array");
      }
      if (node.index >= arrays[node.array].length) {
        fail(ErrorCode::OutOfBounds, describe(node) + " accesses " + arrays[node.array].name +
                                         "[" + std::to_string(node.index) + "]");
      }
      break;
    case NodeKind::Operation:
      expect_inputs(arity(node.opcode), arity(node.opcode));
      break;
    case NodeKind::Reduce:
      expect_inputs(1, std::numeric_limits<std::size_t>::max());
      if (!is_commutative(node.opcode)) {
        fail(ErrorCode::InvalidKernel, describe(node) + " reduces a non-commutative opcode");
      }
      break;
  }
}

template <typename Less>
std::vector<NodeId> kahn_order(std::span<const ScalarNode> nodes,
                               std::span<const std::int32_t> position,
                               const std::vector<std::vector<NodeId>>& successors) {
  std::vector<std::size_t> pending(nodes.size());
  std::priority_queue<NodeId, std::vector<NodeId>, Less> ready;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    // Count distinct producers so x*x is released once.
    std::vector<NodeId> inputs = nodes[i].inputs;
    std::sort(inputs.begin(), inputs.end());
    pending[i] = static_cast<std::size_t>(std::unique(inputs.begin(), inputs.end()) - inputs.begin());
    if (pending[i] == 0) ready.push(nodes[i].id);
  }
  std::vector<NodeId> order;
  order.reserve(nodes.size());
  while (!ready.empty()) {
    NodeId id = ready.top();
    ready.pop();
    order.push_back(id);
    for (NodeId succ : successors[static_cast<std::size_t>(position[id])]) {
      if (--pending[static_cast<std::size_t>(position[succ])] == 0) ready.push(succ);
    }
  }
  return order;
}

}  // namespace

ScalarGraph::ScalarGraph(std::vector<ArrayDecl> arrays, std::vector<ScalarNode> nodes)
    : arrays_(std::move(arrays)), nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const ScalarNode& a, const ScalarNode& b) { return a.id < b.id; });
  position_.assign(nodes_.empty() ? 0 : static_cast<std::size_t>(nodes_.back().id) + 1, -1);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i > 0 && nodes_[i - 1].id == nodes_[i].id) {
      fail(ErrorCode::InvalidKernel, "duplicate node id " + std::to_string(nodes_[i].id));
    }
    position_[nodes_[i].id] = static_cast<std::int32_t>(i);
  }

  successors_.assign(nodes_.size(), {});
  for (const ScalarNode& node : nodes_) {
    validate_node(node, arrays_);
    for (NodeId input : node.inputs) {
      if (!contains(input)) {
        fail(ErrorCode::InvalidKernel, describe(node) + " reads missing node " + std::to_string(input));
      }
      if (this->node(input).kind == NodeKind::Store) {
        fail(ErrorCode::InvalidKernel, describe(node) + " reads the result of a store");
      }
      successors_[position(input)].push_back(node.id);
    }
  }
  for (auto& succ : successors_) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }

  topo_ = kahn_order<std::greater<>>(nodes_, position_, successors_);
  if (topo_.size() != nodes_.size()) fail(ErrorCode::InvalidKernel, "scalar graph contains a cycle");

  depth_.assign(nodes_.size(), 0);
  for (NodeId id : topo_) {
    const ScalarNode& n = node(id);
    std::size_t d = 0;
    if (!n.inputs.empty()) {
      for (NodeId input : n.inputs) d = std::max(d, depth_[position(input)]);
      d += 1;
    }
    depth_[position(id)] = d;
  }
}

bool ScalarGraph::contains(NodeId id) const noexcept {
  return id < position_.size() && position_[id] >= 0;
}

std::size_t ScalarGraph::position(NodeId id) const {
  if (!contains(id)) fail(ErrorCode::StaleHandle, "no scalar node with id " + std::to_string(id));
  return static_cast<std::size_t>(position_[id]);
}

const ScalarNode& ScalarGraph::node(NodeId id) const { return nodes_[position(id)]; }

std::span<const NodeId> ScalarGraph::successors(NodeId id) const {
  return successors_[position(id)];
}

std::size_t ScalarGraph::depth(NodeId id) const { return depth_[position(id)]; }

std::vector<NodeId> ScalarGraph::topological_order(TopoTieBreak tie_break) const {
  if (tie_break == TopoTieBreak::LowestId) return topo_;
  return kahn_order<std::less<>>(nodes_, position_, successors_);
}

std::size_t ScalarGraph::count(NodeKind kind) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [kind](const ScalarNode& n) { return n.kind == kind; }));
}

// ---------------------------------------------------------------------------
// Memory images

MemoryImage MemoryImage::zeros(std::span<const ArrayDecl> arrays) {
  MemoryImage image;
  for (const ArrayDecl& decl : arrays) image.buffers.emplace_back(decl.length, 0.0);
  return image;
}

MemoryImage MemoryImage::random(std::span<const ArrayDecl> arrays, std::uint64_t seed,
                                double lo, double hi) {
  Rng rng(seed);
  MemoryImage image = zeros(arrays);
  for (auto& buffer : image.buffers) {
    for (double& v : buffer) v = rng.uniform(lo, hi);
  }
  return image;
}

MemoryImage MemoryImage::random_integers(std::span<const ArrayDecl> arrays,
                                         std::uint64_t seed, int lo, int hi) {
  Rng rng(seed);
  MemoryImage image = zeros(arrays);
  for (auto& buffer : image.buffers) {
    for (double& v : buffer) v = static_cast<double>(rng.uniform_int(lo, hi));
  }
  return image;
}

bool bit_identical(const MemoryImage& lhs, const MemoryImage& rhs) noexcept {
  if (lhs.buffers.size() != rhs.buffers.size()) return false;
  for (std::size_t a = 0; a < lhs.buffers.size(); ++a) {
    const auto& x = lhs.buffers[a];
    const auto& y = rhs.buffers[a];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::bit_cast<std::uint64_t>(x[i]) != std::bit_cast<std::uint64_t>(y[i])) return false;
    }
  }
  return true;
}

double max_relative_difference(const MemoryImage& lhs, const MemoryImage& rhs) noexcept {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (lhs.buffers.size() != rhs.buffers.size()) return kInf;
  double worst = 0.0;
  for (std::size_t a = 0; a < lhs.buffers.size(); ++a) {
    const auto& x = lhs.buffers[a];
    const auto& y = rhs.buffers[a];
    if (x.size() != y.size()) return kInf;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::bit_cast<std::uint64_t>(x[i]) == std::bit_cast<std::uint64_t>(y[i])) continue;
      const double scale = std::max({std::abs(x[i]), std::abs(y[i]), 1e-300});
      const double rel = std::abs(x[i] - y[i]) / scale;
      worst = std::max(worst, std::isnan(rel) ? kInf : rel);
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Interpreter

MemoryImage interpret_scalar(const ScalarGraph& graph, const MemoryImage& memory) {
  return interpret_scalar(graph, memory, graph.topological_order());
}

MemoryImage interpret_scalar(const ScalarGraph& graph, const MemoryImage& memory,
                             std::span<const NodeId> order) {
  if (order.size() != graph.size()) {
    fail(ErrorCode::Precondition, "evaluation order does not cover the graph");
  }
  if (memory.buffers.size() < graph.arrays().size()) {
    fail(ErrorCode::OutOfBounds, "memory image is missing array buffers");
  }
  MemoryImage result = memory;
  std::vector<double> values(static_cast<std::size_t>(graph.max_id()) + 1, 0.0);
  std::vector<bool> evaluated(values.size(), false);

  auto element = [&](const MemoryImage& image, const ScalarNode& node) -> const double& {
    const auto& buffer = image.buffers[node.array];
    if (node.index >= buffer.size()) {
      fail(ErrorCode::OutOfBounds, "memory access " + graph.arrays()[node.array].name + "[" +
                                       std::to_string(node.index) + "] out of range");
    }
    return buffer[node.index];
  };
  auto input = [&](NodeId id) {
    if (!evaluated[id]) fail(ErrorCode::Precondition, "evaluation order is not topological");
    return values[id];
  };

  for (NodeId id : order) {
    const ScalarNode& node = graph.node(id);
    double v = 0.0;
    switch (node.kind) {
      case NodeKind::Set:
        v = node.constant;
        break;
      case NodeKind::Load:
        v = element(memory, node);
        break;
      case NodeKind::Operation:
        v = node.inputs.size() == 1 ? evaluate(node.opcode, input(node.inputs[0]))
                                    : evaluate(node.opcode, input(node.inputs[0]), input(node.inputs[1]));
        break;
      case NodeKind::Reduce:
        v = input(node.inputs[0]);
        for (std::size_t i = 1; i < node.inputs.size(); ++i) {
          v = evaluate(node.opcode, v, input(node.inputs[i]));
        }
        break;
      case NodeKind::Store:
        element(memory, node);  // bounds check
        result.buffers[node.array][node.index] = input(node.inputs[0]);
        break;
    }
    values[id] = v;
    evaluated[id] = true;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Dedup

ScalarGraph dedup(const ScalarGraph& graph) {
  std::map<std::vector<std::uint64_t>, std::uint32_t> classes;
  std::vector<std::uint32_t> class_of(static_cast<std::size_t>(graph.max_id()) + 1, 0);
  std::vector<NodeId> representative;

  for (NodeId id : graph.topological_order()) {
    const ScalarNode& node = graph.node(id);
    std::vector<std::uint64_t> key{static_cast<std::uint64_t>(node.kind)};
    switch (node.kind) {
      case NodeKind::Set:
        key.push_back(std::bit_cast<std::uint64_t>(node.constant));
        break;
      case NodeKind::Load:
      case NodeKind::Store:
        key.push_back(node.array);
        key.push_back(node.index);
        break;
      case NodeKind::Operation:
      case NodeKind::Reduce:
        key.push_back(static_cast<std::uint64_t>(node.opcode));
        break;
    }
    std::vector<std::uint64_t> inputs;
    for (NodeId input : node.inputs) inputs.push_back(class_of[input]);
    if (node.commutative()) std::sort(inputs.begin(), inputs.end());
    key.insert(key.end(), inputs.begin(), inputs.end());

    auto [it, inserted] = classes.emplace(std::move(key), static_cast<std::uint32_t>(representative.size()));
    if (inserted) {
      representative.push_back(id);
    } else {
      representative[it->second] = std::min(representative[it->second], id);
    }
    class_of[id] = it->second;
  }

  std::vector<ScalarNode> nodes;
  nodes.reserve(representative.size());
  for (NodeId rep : representative) {
    ScalarNode node = graph.node(rep);
    for (NodeId& input : node.inputs) input = representative[class_of[input]];
    nodes.push_back(std::move(node));
  }
  std::vector<ArrayDecl> arrays(graph.arrays().begin(), graph.arrays().end());
  return ScalarGraph(std::move(arrays), std::move(nodes));
}

// ---------------------------------------------------------------------------
// Builder

ArrayId KernelBuilder::declare_array(std::string name, ArrayRole role, std::size_t length) {
  for (const ArrayDecl& decl : arrays_) {
    if (decl.name == name) fail(ErrorCode::InvalidKernel, "array '" + name + "' declared twice");
  }
  arrays_.push_back(ArrayDecl{std::move(name), role, length});
  live_store_.emplace_back(length, -1);
  return static_cast<ArrayId>(arrays_.size() - 1);
}

void KernelBuilder::check_access(ArrayId array, std::size_t index) const {
  if (array >= arrays_.size()) fail(ErrorCode::InvalidKernel, "undeclared array");
  if (index >= arrays_[array].length) {
    fail(ErrorCode::OutOfBounds, "access " + arrays_[array].name + "[" + std::to_string(index) +
                                     "] exceeds length " + std::to_string(arrays_[array].length));
  }
}

NodeId KernelBuilder::add(ScalarNode node) {
  node.id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(node));
  dead_.push_back(false);
  return nodes_.back().id;
}

NodeId KernelBuilder::materialize(Value value) {
  if (!value.is_constant()) return value.node_id();
  ScalarNode node;
  node.kind = NodeKind::Set;
  node.constant = value.constant_value();
  return add(std::move(node));
}

Value KernelBuilder::load(ArrayId array, std::size_t index) {
  check_access(array, index);
  if (std::int64_t store = live_store_[array][index]; store >= 0) {
    return Value::node(nodes_[static_cast<std::size_t>(store)].inputs[0]);
  }
  if (arrays_[array].role == ArrayRole::Output) {
    fail(ErrorCode::InvalidKernel, "output array '" + arrays_[array].name +
                                       "' is read before it is written; declare it inout");
  }
  ScalarNode node;
  node.kind = NodeKind::Load;
  node.array = array;
  node.index = index;
  return Value::node(add(std::move(node)));
}

Value KernelBuilder::apply(Opcode op, Value operand) {
  if (arity(op) != 1) fail(ErrorCode::InvalidKernel, "opcode needs two operands");
  ScalarNode node;
  node.kind = NodeKind::Operation;
  node.opcode = op;
  node.inputs = {materialize(operand)};
  return Value::node(add(std::move(node)));
}

Value KernelBuilder::apply(Opcode op, Value lhs, Value rhs) {
  if (arity(op) != 2) fail(ErrorCode::InvalidKernel, "opcode takes one operand");
  if (op == Opcode::Add) {
    if (lhs.is_constant() && lhs.constant_value() == 0.0) return rhs;
    if (rhs.is_constant() && rhs.constant_value() == 0.0) return lhs;
  }
  ScalarNode node;
  node.kind = NodeKind::Operation;
  node.opcode = op;
  NodeId a = materialize(lhs);
  NodeId b = materialize(rhs);
  node.inputs = {a, b};
  return Value::node(add(std::move(node)));
}

void KernelBuilder::store(ArrayId array, std::size_t index, Value value) {
  check_access(array, index);
  if (arrays_[array].role == ArrayRole::Input) {
    fail(ErrorCode::InvalidKernel, "store into input array '" + arrays_[array].name + "'");
  }
  if (std::int64_t previous = live_store_[array][index]; previous >= 0) {
    dead_[static_cast<std::size_t>(previous)] = true;
  }
  ScalarNode node;
  node.kind = NodeKind::Store;
  node.array = array;
  node.index = index;
  node.inputs = {materialize(value)};
  live_store_[array][index] = add(std::move(node));
}

ScalarGraph KernelBuilder::finish() const {
  std::vector<bool> live(nodes_.size(), false);
  // Inputs always precede their consumers, so one backward sweep suffices.
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    const ScalarNode& node = nodes_[i];
    if (node.kind == NodeKind::Store && !dead_[i]) live[i] = true;
    if (!live[i]) continue;
    for (NodeId input : node.inputs) live[input] = true;
  }
  std::vector<NodeId> renumber(nodes_.size(), 0);
  std::vector<ScalarNode> nodes;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!live[i]) continue;
    renumber[i] = static_cast<NodeId>(nodes.size());
    ScalarNode node = nodes_[i];
    node.id = renumber[i];
    for (NodeId& input : node.inputs) input = renumber[input];
    nodes.push_back(std::move(node));
  }
  return ScalarGraph(arrays_, std::move(nodes));
}

// ---------------------------------------------------------------------------
// JSON

std::string to_json(const ScalarGraph& graph) {
  using nlohmann::json;
  json doc;
  doc["arrays"] = json::array();
  for (const ArrayDecl& decl : graph.arrays()) {
    doc["arrays"].push_back({{"name", decl.name},
                             {"role", std::string(to_string(decl.role))},
                             {"length", decl.length}});
  }
  doc["nodes"] = json::array();
  for (const ScalarNode& node : graph.nodes()) {
    json entry;
    entry["id"] = node.id;
    entry["kind"] = std::string(to_string(node.kind));
    const bool has_opcode = node.kind == NodeKind::Operation || node.kind == NodeKind::Reduce;
    entry["opcode"] = has_opcode ? json(std::string(to_string(node.opcode))) : json(nullptr);
    entry["array"] = node.accesses_memory() ? json(graph.arrays()[node.array].name) : json(nullptr);
    entry["index"] = node.accesses_memory() ? json(node.index) : json(nullptr);
    if (node.kind == NodeKind::Set) entry["constant"] = node.constant;
    entry["inputs"] = node.inputs;
    doc["nodes"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

ScalarGraph scalar_graph_from_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("scalar graph JSON: ") + e.what());
  }
  try {
    std::vector<ArrayDecl> arrays;
    for (const json& entry : doc.at("arrays")) {
      auto role = parse_array_role(entry.at("role").get<std::string>());
      if (!role) fail(ErrorCode::Parse, "unknown array role");
      arrays.push_back({entry.at("name").get<std::string>(), *role, entry.at("length").get<std::size_t>()});
    }
    auto array_id = [&](const std::string& name) {
      for (std::size_t i = 0; i < arrays.size(); ++i) {
        if (arrays[i].name == name) return static_cast<ArrayId>(i);
      }
      fail(ErrorCode::Parse, "node references unknown array '" + name + "'");
    };
    std::vector<ScalarNode> nodes;
    for (const json& entry : doc.at("nodes")) {
      ScalarNode node;
      node.id = entry.at("id").get<NodeId>();
      auto kind = parse_node_kind(entry.at("kind").get<std::string>());
      if (!kind) fail(ErrorCode::Parse, "unknown node kind");
      node.kind = *kind;
      if (!entry.at("opcode").is_null()) {
        auto op = parse_opcode(entry.at("opcode").get<std::string>());
        if (!op) fail(ErrorCode::Parse, "unknown opcode");
        node.opcode = *op;
      }
      if (!entry.at("array").is_null()) node.array = array_id(entry.at("array").get<std::string>());
      if (!entry.at("index").is_null()) node.index = entry.at("index").get<std::size_t>();
      if (entry.contains("constant")) node.constant = entry.at("constant").get<double>();
      node.inputs = entry.at("inputs").get<std::vector<NodeId>>();
      nodes.push_back(std::move(node));
    }
    return ScalarGraph(std::move(arrays), std::move(nodes));
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("scalar graph JSON: ") + e.what());
  }
}

}  // namespace vecgraph
