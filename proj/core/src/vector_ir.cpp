// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/vector_ir.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>
#include <type_traits>

#include "vecgraph/error.hpp"

namespace vecgraph {

std::string_view to_string(VectorKind kind) noexcept {
  switch (kind) {
    case VectorKind::Load: return "load";
    case VectorKind::Store: return "store";
    case VectorKind::Op: return "op";
    case VectorKind::Broadcast: return "broadcast";
    case VectorKind::Permute: return "permute";
    case VectorKind::Extract: return "extract";
    case VectorKind::Merge: return "merge";
    case VectorKind::Reduce: return "reduce";
  }
  return "?";
}

namespace {

std::optional<VectorKind> parse_vector_kind(std::string_view s) {
  for (int k = 0; k <= static_cast<int>(VectorKind::Reduce); ++k) {
    if (to_string(static_cast<VectorKind>(k)) == s) return static_cast<VectorKind>(k);
  }
  return std::nullopt;
}

std::uint64_t full_mask(std::size_t count) {
  return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
}

[[noreturn]] void invalid(const VectorNode& node, const std::string& why) {
  fail(ErrorCode::InvalidKernel, "vector node " + std::to_string(node.id) + " (" +
                                     std::string(to_string(node.kind)) + "): " + why);
}

void validate(const VectorNode& node, std::size_t vec, std::span<const ArrayDecl> arrays) {
  auto inputs = [&](std::size_t n) {
    if (node.inputs.size() != n) invalid(node, "expects " + std::to_string(n) + " inputs");
  };
  auto pattern = [&](std::size_t size, int bound) {
    if (node.pattern.size() != size) invalid(node, "pattern has the wrong length");
    for (int p : node.pattern) {
      if (p < -1 || p >= bound) invalid(node, "pattern entry " + std::to_string(p) + " out of range");
    }
  };
  auto memory = [&] {
    if (node.array >= arrays.size()) invalid(node, "unknown array");
    if (node.count == 0 || node.count > vec) invalid(node, "count must be in [1, vec_size]");
    if (node.start + node.count > arrays[node.array].length) invalid(node, "access out of bounds");
  };
  const int v = static_cast<int>(vec);
  switch (node.kind) {
    case VectorKind::Load:
      inputs(0);
      memory();
      break;
    case VectorKind::Store:
      inputs(1);
      memory();
      if (arrays[node.array].role == ArrayRole::Input) invalid(node, "store into an input array");
      if (node.lane_mask == 0 || (node.lane_mask & ~full_mask(node.count)) != 0) invalid(node, "bad lane mask");
      break;
    case VectorKind::Op:
      inputs(arity(node.opcode));
      break;
    case VectorKind::Broadcast:
      inputs(0);
      break;
    case VectorKind::Permute:
    case VectorKind::Extract:
      inputs(1);
      pattern(vec, v);
      break;
    case VectorKind::Merge:
      inputs(2);
      pattern(vec, 2 * v);
      break;
    case VectorKind::Reduce: {
      inputs(1);
      if (!is_commutative(node.opcode)) invalid(node, "reduction opcode must be commutative");
      if (node.pattern.empty() || node.pattern.size() > vec) invalid(node, "reduce lane list size");
      std::vector<bool> seen(vec, false);
      for (int p : node.pattern) {
        if (p < 0 || p >= v || seen[static_cast<std::size_t>(p)]) invalid(node, "bad reduce lane list");
        seen[static_cast<std::size_t>(p)] = true;
      }
      break;
    }
  }
}

}  // namespace

VectorGraph::VectorGraph(std::size_t vec_size, std::vector<ArrayDecl> arrays, std::vector<VectorNode> nodes)
    : vec_size_(vec_size), arrays_(std::move(arrays)), nodes_(std::move(nodes)) {
  if (vec_size_ == 0 || vec_size_ > 64) fail(ErrorCode::Unsupported, "vec_size must be in [1, 64]");
  const std::size_t n = nodes_.size();
  successors_.resize(n);
  predecessors_.resize(n);
  dependents_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VectorNode& node = nodes_[i];
    if (node.id != i) fail(ErrorCode::InvalidKernel, "vector node ids must be dense and ordered");
    validate(node, vec_size_, arrays_);
    for (NodeId in : node.inputs) {
      if (in >= i) invalid(node, "input " + std::to_string(in) + " does not precede the node");
      predecessors_[i].push_back(in);
      successors_[in].push_back(node.id);
      dependents_[in].push_back(node.id);
    }
    for (NodeId in : node.after) {
      if (in >= i) invalid(node, "ordering predecessor " + std::to_string(in) + " does not precede the node");
      dependents_[in].push_back(node.id);
    }
  }
  for (auto* lists : {&successors_, &predecessors_, &dependents_}) {
    for (auto& list : *lists) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }
}

// ---------------------------------------------------------------------------

VectorGraphBuilder::VectorGraphBuilder(std::size_t vec_size, std::vector<ArrayDecl> arrays)
    : vec_size_(vec_size), arrays_(std::move(arrays)), loads_of_array_(arrays_.size()) {
  if (vec_size_ < 1 || vec_size_ > 64) fail(ErrorCode::Unsupported, "vec_size must be in [1, 64]");
}

NodeId VectorGraphBuilder::add(VectorNode node) {
  std::vector<std::uint64_t> key = {static_cast<std::uint64_t>(node.kind), static_cast<std::uint64_t>(node.opcode),
                                    node.array,  node.start, node.count, node.lane_mask,
                                    std::bit_cast<std::uint64_t>(node.constant), node.pattern.size()};
  for (int p : node.pattern) key.push_back(static_cast<std::uint64_t>(static_cast<std::int64_t>(p)));
  key.push_back(node.inputs.size());
  for (NodeId in : node.inputs) key.push_back(in);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  node.id = static_cast<NodeId>(nodes_.size());
  validate(node, vec_size_, arrays_);
  for (NodeId in : node.inputs) {
    if (in >= node.id) invalid(node, "input does not exist yet");
  }
  index_.emplace(std::move(key), node.id);
  nodes_.push_back(std::move(node));
  return nodes_.back().id;
}

NodeId VectorGraphBuilder::load(ArrayId array, std::size_t start, std::size_t count) {
  VectorNode node;
  node.kind = VectorKind::Load;
  node.array = array;
  node.start = start;
  node.count = count;
  const NodeId id = add(std::move(node));
  auto& loads = loads_of_array_.at(array);
  if (std::find(loads.begin(), loads.end(), id) == loads.end()) loads.push_back(id);
  return id;
}

NodeId VectorGraphBuilder::store(ArrayId array, std::size_t start, std::size_t count, std::uint64_t lane_mask,
                                 NodeId value) {
  VectorNode node;
  node.kind = VectorKind::Store;
  node.array = array;
  node.start = start;
  node.count = count;
  node.lane_mask = lane_mask;
  node.inputs = {value};
  // Write-after-read: every earlier load of an overlapping range goes first.
  for (NodeId l : loads_of_array_.at(array)) {
    const VectorNode& load = nodes_[l];
    if (load.start < start + count && start < load.start + load.count) node.after.push_back(l);
  }
  return add(std::move(node));
}

NodeId VectorGraphBuilder::op(Opcode opcode, std::vector<NodeId> inputs) {
  VectorNode node;
  node.kind = VectorKind::Op;
  node.opcode = opcode;
  node.inputs = std::move(inputs);
  return add(std::move(node));
}

NodeId VectorGraphBuilder::broadcast(double constant) {
  VectorNode node;
  node.kind = VectorKind::Broadcast;
  node.constant = constant;
  return add(std::move(node));
}

NodeId VectorGraphBuilder::reduce(Opcode opcode, NodeId input, std::vector<int> lanes) {
  VectorNode node;
  node.kind = VectorKind::Reduce;
  node.opcode = opcode;
  node.pattern = std::move(lanes);
  node.inputs = {input};
  return add(std::move(node));
}

NodeId VectorGraphBuilder::permute(NodeId input, std::vector<int> pattern) {
  VectorNode node;
  node.kind = VectorKind::Permute;
  node.pattern = std::move(pattern);
  node.inputs = {input};
  return add(std::move(node));
}

NodeId VectorGraphBuilder::extract(NodeId input, std::vector<int> pattern) {
  VectorNode node;
  node.kind = VectorKind::Extract;
  node.pattern = std::move(pattern);
  node.inputs = {input};
  return add(std::move(node));
}

NodeId VectorGraphBuilder::merge(NodeId lhs, NodeId rhs, std::vector<int> pattern) {
  VectorNode node;
  node.kind = VectorKind::Merge;
  node.pattern = std::move(pattern);
  node.inputs = {lhs, rhs};
  return add(std::move(node));
}

NodeId VectorGraphBuilder::realize(const LaneRequirement& requirement) {
  const MovePlan plan = plan_moves(requirement, vec_size_);
  if (plan.direct) return *plan.direct;
  if (plan.moves.empty()) fail(ErrorCode::Precondition, "cannot realize an empty lane requirement");
  std::vector<NodeId> results;
  for (const DataMove& move : plan.moves) {
    std::vector<NodeId> sources;
    for (const MoveSource& s : move.sources) sources.push_back(s.from_move ? results.at(s.index) : s.index);
    switch (move.kind) {
      case DataMoveKind::Permute: results.push_back(permute(sources[0], move.pattern)); break;
      case DataMoveKind::Extract: results.push_back(extract(sources[0], move.pattern)); break;
      case DataMoveKind::Merge: results.push_back(merge(sources[0], sources[1], move.pattern)); break;
    }
  }
  return results.back();
}

VectorGraph VectorGraphBuilder::finish() && {
  return VectorGraph(vec_size_, std::move(arrays_), std::move(nodes_));
}

// ---------------------------------------------------------------------------

bool is_topological(const VectorGraph& graph, std::span<const NodeId> order) {
  if (order.size() != graph.size()) return false;
  std::vector<std::size_t> position(graph.size(), graph.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k] >= graph.size() || position[order[k]] != graph.size()) return false;
    position[order[k]] = k;
  }
  for (const VectorNode& node : graph.nodes()) {
    for (NodeId d : graph.dependents(node.id)) {
      if (position[d] < position[node.id]) return false;
    }
  }
  return true;
}

MemoryImage interpret_vector(const VectorGraph& graph, const MemoryImage& memory) {
  std::vector<NodeId> order(graph.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<NodeId>(i);
  return interpret_vector(graph, memory, order);
}

MemoryImage interpret_vector(const VectorGraph& graph, const MemoryImage& memory, std::span<const NodeId> order) {
  if (!is_topological(graph, order)) fail(ErrorCode::Precondition, "evaluation order is not topological");
  if (memory.buffers.size() != graph.arrays().size()) fail(ErrorCode::Precondition, "memory image does not match arrays");
  for (std::size_t a = 0; a < graph.arrays().size(); ++a) {
    if (memory.buffers[a].size() != graph.arrays()[a].length) {
      fail(ErrorCode::Precondition, "buffer length differs for array '" + graph.arrays()[a].name + "'");
    }
  }
  const std::size_t vec = graph.vec_size();
  MemoryImage mem = memory;
  std::vector<std::vector<double>> lanes(graph.size(), std::vector<double>(vec, 0.0));
  std::vector<std::uint64_t> defined(graph.size(), 0);
  const std::uint64_t all = full_mask(vec);

  for (NodeId id : order) {
    const VectorNode& node = graph.node(id);
    std::vector<double>& out = lanes[id];
    std::uint64_t& def = defined[id];
    auto lane_defined = [&](NodeId src, std::size_t l) { return (defined[src] >> l) & 1u; };
    switch (node.kind) {
      case VectorKind::Load: {
        const auto& buf = mem.buffers[node.array];
        if (node.count == 1) {
          std::fill(out.begin(), out.end(), buf[node.start]);
          def = all;
        } else {
          for (std::size_t l = 0; l < node.count; ++l) out[l] = buf[node.start + l];
          def = full_mask(node.count);
        }
        break;
      }
      case VectorKind::Store: {
        const NodeId src = node.inputs[0];
        for (std::size_t l = 0; l < node.count; ++l) {
          if (!((node.lane_mask >> l) & 1u)) continue;
          if (!lane_defined(src, l)) {
            fail(ErrorCode::InvariantViolation, "store " + std::to_string(id) + " writes undefined lane " + std::to_string(l));
          }
          mem.buffers[node.array][node.start + l] = lanes[src][l];
        }
        break;
      }
      case VectorKind::Op: {
        def = all;
        for (NodeId in : node.inputs) def &= defined[in];
        for (std::size_t l = 0; l < vec; ++l) {
          out[l] = node.inputs.size() == 1 ? evaluate(node.opcode, lanes[node.inputs[0]][l])
                                           : evaluate(node.opcode, lanes[node.inputs[0]][l], lanes[node.inputs[1]][l]);
        }
        break;
      }
      case VectorKind::Broadcast:
        std::fill(out.begin(), out.end(), node.constant);
        def = all;
        break;
      case VectorKind::Permute:
      case VectorKind::Extract:
      case VectorKind::Merge: {
        def = 0;
        for (std::size_t l = 0; l < vec; ++l) {
          const int p = node.pattern[l];
          if (p < 0) continue;
          const auto up = static_cast<std::size_t>(p);
          const NodeId src = up < vec ? node.inputs[0] : node.inputs[1];
          const std::size_t sl = up < vec ? up : up - vec;
          out[l] = lanes[src][sl];
          if (lane_defined(src, sl)) def |= std::uint64_t{1} << l;
        }
        break;
      }
      case VectorKind::Reduce: {
        const NodeId src = node.inputs[0];
        double acc = 0.0;
        for (std::size_t k = 0; k < node.pattern.size(); ++k) {
          const auto l = static_cast<std::size_t>(node.pattern[k]);
          if (!lane_defined(src, l)) {
            fail(ErrorCode::InvariantViolation, "reduce " + std::to_string(id) + " reads undefined lane " + std::to_string(l));
          }
          acc = k == 0 ? lanes[src][l] : evaluate(node.opcode, acc, lanes[src][l]);
        }
        std::fill(out.begin(), out.end(), acc);
        def = all;
        break;
      }
    }
  }
  return mem;
}

// ---------------------------------------------------------------------------
// Text form:
//   vec_size 4
//   array src0 input 6
//   0 load array=0 start=0 count=4
//   3 op opcode=add <- 0 1
//   5 merge pattern=2,3,4,-1 <- 3 4
//   6 store array=2 start=0 count=4 mask=0xf <- 5 after 0

namespace {

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::string to_text(const VectorGraph& graph) {
  std::ostringstream out;
  out << "vec_size " << graph.vec_size() << "\n";
  for (const ArrayDecl& a : graph.arrays()) out << "array " << a.name << " " << to_string(a.role) << " " << a.length << "\n";
  for (const VectorNode& n : graph.nodes()) {
    out << n.id << " " << to_string(n.kind);
    switch (n.kind) {
      case VectorKind::Load:
        out << " array=" << n.array << " start=" << n.start << " count=" << n.count;
        break;
      case VectorKind::Store:
        out << " array=" << n.array << " start=" << n.start << " count=" << n.count << " mask=0x" << std::hex
            << n.lane_mask << std::dec;
        break;
      case VectorKind::Op:
        out << " opcode=" << to_string(n.opcode);
        break;
      case VectorKind::Broadcast:
        out << " constant=" << format_double(n.constant);
        break;
      case VectorKind::Permute:
      case VectorKind::Extract:
      case VectorKind::Merge:
        out << " pattern=" << join(n.pattern);
        break;
      case VectorKind::Reduce:
        out << " opcode=" << to_string(n.opcode) << " lanes=" << join(n.pattern);
        break;
    }
    if (!n.inputs.empty()) {
      out << " <-";
      for (NodeId in : n.inputs) out << " " << in;
    }
    if (!n.after.empty()) {
      out << " after";
      for (NodeId in : n.after) out << " " << in;
    }
    out << "\n";
  }
  return out.str();
}

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& why) {
  fail(ErrorCode::Parse, "vector IR line " + std::to_string(line) + ": " + why);
}

template <typename T>
T parse_number(std::string_view s, std::size_t line, int base = 10) {
  T value{};
  std::from_chars_result r;
  if constexpr (std::is_floating_point_v<T>) {
    r = std::from_chars(s.data(), s.data() + s.size(), value);
  } else {
    r = std::from_chars(s.data(), s.data() + s.size(), value, base);
  }
  auto [ptr, ec] = r;
  if (ec != std::errc{} || ptr != s.data() + s.size()) parse_error(line, "bad number '" + std::string(s) + "'");
  return value;
}

std::vector<int> parse_list(std::string_view s, std::size_t line) {
  std::vector<int> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    out.push_back(parse_number<int>(s.substr(0, comma), line));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

VectorGraph parse_vector_ir(std::string_view text) {
  std::size_t vec_size = 0;
  std::vector<ArrayDecl> arrays;
  std::vector<VectorNode> nodes;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream line(raw);
    std::vector<std::string> tok;
    for (std::string t; line >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "vec_size") {
      if (tok.size() != 2) parse_error(line_no, "expected 'vec_size N'");
      vec_size = parse_number<std::size_t>(tok[1], line_no);
      continue;
    }
    if (tok[0] == "array") {
      if (tok.size() != 4) parse_error(line_no, "expected 'array NAME ROLE LENGTH'");
      auto role = parse_array_role(tok[2]);
      if (!role) parse_error(line_no, "unknown role '" + tok[2] + "'");
      arrays.push_back({tok[1], *role, parse_number<std::size_t>(tok[3], line_no)});
      continue;
    }
    if (tok.size() < 2) parse_error(line_no, "expected 'id kind ...'");
    VectorNode node;
    node.id = parse_number<NodeId>(tok[0], line_no);
    auto kind = parse_vector_kind(tok[1]);
    if (!kind) parse_error(line_no, "unknown vector kind '" + tok[1] + "'");
    node.kind = *kind;
    enum { Args, Inputs, After } mode = Args;
    for (std::size_t i = 2; i < tok.size(); ++i) {
      const std::string& t = tok[i];
      if (t == "<-") { mode = Inputs; continue; }
      if (t == "after") { mode = After; continue; }
      if (mode == Inputs) { node.inputs.push_back(parse_number<NodeId>(t, line_no)); continue; }
      if (mode == After) { node.after.push_back(parse_number<NodeId>(t, line_no)); continue; }
      const auto eq = t.find('=');
      if (eq == std::string::npos) parse_error(line_no, "expected key=value, got '" + t + "'");
      const std::string_view key = std::string_view(t).substr(0, eq);
      const std::string_view value = std::string_view(t).substr(eq + 1);
      if (key == "array") node.array = parse_number<ArrayId>(value, line_no);
      else if (key == "start") node.start = parse_number<std::size_t>(value, line_no);
      else if (key == "count") node.count = parse_number<std::size_t>(value, line_no);
      else if (key == "mask") {
        if (value.substr(0, 2) != "0x") parse_error(line_no, "mask must be hexadecimal");
        node.lane_mask = parse_number<std::uint64_t>(value.substr(2), line_no, 16);
      } else if (key == "opcode") {
        auto op = parse_opcode(value);
        if (!op) parse_error(line_no, "unknown opcode '" + std::string(value) + "'");
        node.opcode = *op;
      } else if (key == "constant") node.constant = parse_number<double>(value, line_no);
      else if (key == "pattern" || key == "lanes") node.pattern = parse_list(value, line_no);
      else parse_error(line_no, "unknown key '" + std::string(key) + "'");
    }
    nodes.push_back(std::move(node));
  }
  return VectorGraph(vec_size, std::move(arrays), std::move(nodes));
}

// ---------------------------------------------------------------------------

VectorGraph lift_scalar_graph(const ScalarGraph& graph, std::size_t vec_size) {
  std::vector<ArrayDecl> arrays(graph.arrays().begin(), graph.arrays().end());
  for (ArrayDecl& a : arrays) a.length *= vec_size;
  VectorGraphBuilder builder(vec_size, arrays);
  std::vector<NodeId> lifted(graph.max_id() + 1, 0);
  const std::uint64_t mask = full_mask(vec_size);
  for (NodeId id : graph.topological_order()) {
    const ScalarNode& n = graph.node(id);
    switch (n.kind) {
      case NodeKind::Set: lifted[id] = builder.broadcast(n.constant); break;
      case NodeKind::Load: lifted[id] = builder.load(n.array, n.index * vec_size, vec_size); break;
      case NodeKind::Store: lifted[id] = builder.store(n.array, n.index * vec_size, vec_size, mask, lifted[n.inputs[0]]); break;
      case NodeKind::Operation: {
        std::vector<NodeId> inputs;
        for (NodeId in : n.inputs) inputs.push_back(lifted[in]);
        lifted[id] = builder.op(n.opcode, std::move(inputs));
        break;
      }
      case NodeKind::Reduce: {
        NodeId acc = lifted[n.inputs[0]];
        for (std::size_t k = 1; k < n.inputs.size(); ++k) acc = builder.op(n.opcode, {acc, lifted[n.inputs[k]]});
        lifted[id] = acc;
        break;
      }
    }
  }
  return std::move(builder).finish();
}

}  // namespace vecgraph
