// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/schedule.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "vecgraph/error.hpp"

namespace vecgraph {

Rational sched_cost(const VectorGraph& graph, NodeId id, const std::vector<bool>& done) {
  Rational cost(graph.successors(id).empty() ? 0 : 1);
  for (NodeId p : graph.predecessors(id)) {
    std::int64_t counter = 0;
    for (NodeId sp : graph.successors(p)) counter += (sp == id || !done[sp]);
    cost -= Rational(1, counter);
  }
  return cost;
}

std::vector<std::size_t> inverse_depth(const VectorGraph& graph) {
  std::vector<std::size_t> depth(graph.size(), 0);
  // Dependents always have larger ids.
  for (std::size_t i = graph.size(); i-- > 0;) {
    for (NodeId d : graph.dependents(static_cast<NodeId>(i))) depth[i] = std::max(depth[i], depth[d] + 1);
  }
  return depth;
}

std::vector<std::vector<NodeId>> components(const VectorGraph& graph) {
  std::vector<NodeId> parent(graph.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const VectorNode& n : graph.nodes()) {
    for (NodeId d : graph.dependents(n.id)) {
      const NodeId a = find(n.id), b = find(d);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<NodeId>> out;
  std::vector<std::size_t> slot(graph.size(), std::numeric_limits<std::size_t>::max());
  for (const VectorNode& n : graph.nodes()) {
    const NodeId root = find(n.id);
    if (slot[root] == std::numeric_limits<std::size_t>::max()) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(n.id);
  }
  return out;
}

std::vector<NodeId> schedule(const VectorGraph& graph) {
  const std::vector<std::size_t> invdepth = inverse_depth(graph);
  std::vector<std::size_t> waiting(graph.size(), 0);
  for (const VectorNode& n : graph.nodes()) {
    for (NodeId d : graph.dependents(n.id)) ++waiting[d];
  }
  std::vector<bool> done(graph.size(), false);
  std::vector<NodeId> order;
  order.reserve(graph.size());
  for (const auto& component : components(graph)) {
    std::vector<NodeId> ready;
    for (NodeId id : component) {
      if (waiting[id] == 0) ready.push_back(id);
    }
    while (!ready.empty()) {
      std::size_t best = 0;
      Rational best_cost = sched_cost(graph, ready[0], done);
      for (std::size_t k = 1; k < ready.size(); ++k) {
        const Rational c = sched_cost(graph, ready[k], done);
        const NodeId a = ready[k], b = ready[best];
        if (c < best_cost || (c == best_cost && (invdepth[a] > invdepth[b] || (invdepth[a] == invdepth[b] && a < b)))) {
          best = k;
          best_cost = c;
        }
      }
      const NodeId next = ready[best];
      ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(best));
      done[next] = true;
      order.push_back(next);
      for (NodeId d : graph.dependents(next)) {
        if (--waiting[d] == 0) ready.push_back(d);
      }
    }
  }
  return order;
}

std::vector<NodeId> id_order(const VectorGraph& graph) {
  std::vector<NodeId> order(graph.size());
  std::iota(order.begin(), order.end(), 0u);
  return order;
}

std::size_t simulate_stack_accesses(const VectorGraph& graph, std::span<const NodeId> order, std::size_t registers) {
  if (!is_topological(graph, order)) fail(ErrorCode::Precondition, "order is not topological");
  std::size_t max_arity = 0;
  for (const VectorNode& n : graph.nodes()) max_arity = std::max(max_arity, graph.predecessors(n.id).size());
  if (registers < max_arity + 1) {
    fail(ErrorCode::Precondition, "need at least " + std::to_string(max_arity + 1) + " registers, got " +
                                      std::to_string(registers));
  }
  constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();
  // uses[v]: positions in `order` that read v, ascending.
  std::vector<std::vector<std::size_t>> uses(graph.size());
  for (std::size_t t = 0; t < order.size(); ++t) {
    for (NodeId p : graph.predecessors(order[t])) uses[p].push_back(t);
  }
  std::vector<std::size_t> cursor(graph.size(), 0);
  auto next_use = [&](NodeId v) { return cursor[v] < uses[v].size() ? uses[v][cursor[v]] : kNever; };

  std::vector<bool> in_register(graph.size(), false), on_stack(graph.size(), false);
  std::vector<NodeId> live;  // values currently in registers
  std::size_t accesses = 0;

  auto make_room = [&](std::span<const NodeId> pinned) {
    if (live.size() < registers) return;
    std::size_t victim = live.size();
    std::size_t farthest = 0;
    for (std::size_t k = 0; k < live.size(); ++k) {
      if (std::find(pinned.begin(), pinned.end(), live[k]) != pinned.end()) continue;
      const std::size_t u = next_use(live[k]);
      if (victim == live.size() || u > farthest || (u == farthest && live[k] < live[victim])) {
        victim = k;
        farthest = u;
      }
    }
    if (victim == live.size()) fail(ErrorCode::InvariantViolation, "register file exhausted by operands");
    const NodeId v = live[victim];
    if (!on_stack[v]) {
      on_stack[v] = true;
      ++accesses;
    }
    in_register[v] = false;
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(victim));
  };

  for (std::size_t t = 0; t < order.size(); ++t) {
    const NodeId id = order[t];
    const auto preds = graph.predecessors(id);
    for (NodeId p : preds) {
      if (in_register[p]) continue;
      make_room(preds);
      ++accesses;  // reload
      in_register[p] = true;
      live.push_back(p);
    }
    for (NodeId p : preds) ++cursor[p];
    for (NodeId p : preds) {
      if (next_use(p) == kNever && in_register[p]) {
        in_register[p] = false;
        live.erase(std::find(live.begin(), live.end(), p));
      }
    }
    if (!graph.successors(id).empty()) {
      make_room({});
      in_register[id] = true;
      live.push_back(id);
    }
  }
  return accesses;
}

}  // namespace vecgraph
