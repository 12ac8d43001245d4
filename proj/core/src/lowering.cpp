// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/lowering.hpp"

#include <algorithm>
#include <map>

#include "vecgraph/error.hpp"

namespace vecgraph {

std::string_view to_string(SplitStrategy strategy) noexcept {
  switch (strategy) {
    case SplitStrategy::Identity: return "identity";
    case SplitStrategy::Partitioning: return "partitioning";
    case SplitStrategy::Clustering: return "clustering";
  }
  return "?";
}

std::optional<SplitStrategy> parse_split_strategy(std::string_view name) noexcept {
  for (SplitStrategy s : {SplitStrategy::Identity, SplitStrategy::Partitioning, SplitStrategy::Clustering}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

namespace {

class Lowering {
 public:
  Lowering(const GroupGraph& gg, const LoadStoreSplitChoice& choice, SplitStrategy strategy, std::size_t vec,
           VectorizeTrace* trace, ConstraintSort sort)
      : gg_(gg),
        g_(gg.scalar()),
        choice_(choice),
        strategy_(strategy),
        vec_(vec),
        trace_(trace),
        sort_(sort),
        builder_(vec, std::vector<ArrayDecl>(g_.arrays().begin(), g_.arrays().end())),
        loc_(g_.max_id() + 1) {}

  VectorGraph run() {
    std::vector<GroupId> compute;
    for (const Group& group : gg_.groups()) {
      switch (group.kind) {
        case NodeKind::Set: lower_set(group); break;
        case NodeKind::Load: lower_load(group); break;
        case NodeKind::Operation:
        case NodeKind::Reduce: compute.push_back(group.id); break;
        case NodeKind::Store: break;
      }
    }
    std::stable_sort(compute.begin(), compute.end(),
                     [&](GroupId a, GroupId b) { return gg_.group(a).depth < gg_.group(b).depth; });
    for (GroupId id : compute) {
      const Group& group = gg_.group(id);
      if (group.kind == NodeKind::Operation) lower_operation(group);
      else lower_reduce(group);
    }
    for (const Group& group : gg_.groups()) {
      if (group.kind == NodeKind::Store) lower_store(group);
    }
    return std::move(builder_).finish();
  }

 private:
  const LaneSource& location(NodeId id) const {
    if (!loc_[id]) fail(ErrorCode::Precondition, "value of scalar node " + std::to_string(id) + " is not placed yet");
    return *loc_[id];
  }

  std::uint64_t slot_key(ArrayId array, std::size_t slot) const {
    return (static_cast<std::uint64_t>(array) << 32) | slot;
  }

  void lower_set(const Group& group) {
    const NodeId v = builder_.broadcast(group.constant);
    for (NodeId m : group.members) loc_[m] = LaneSource{v, 0, true};
  }

  void lower_load(const Group& group) {
    const ArraySplit& split = choice_.split(group.array);
    std::map<std::size_t, NodeId> vectors;
    for (NodeId m : group.members) vectors.emplace(split.slot_of(g_.node(m).index), 0);
    for (auto& [s, v] : vectors) v = builder_.load(group.array, split.slots[s].start, split.slots[s].count);
    for (NodeId m : group.members) {
      const std::size_t index = g_.node(m).index;
      const std::size_t s = split.slot_of(index);
      const Slot& slot = split.slots[s];
      loc_[m] = LaneSource{vectors[s], static_cast<std::uint32_t>(index - slot.start), slot.count == 1};
    }
  }

  ScoreMember score_member(NodeId m) const {
    const ScalarNode& node = g_.node(m);
    ScoreMember sm;
    for (std::size_t k = 0; k < node.inputs.size() && k < 2; ++k) sm.sources[k] = location(node.inputs[k]).vector;
    for (NodeId s : g_.successors(m)) {
      const Group& dest = gg_.group(gg_.group_of(s));
      sm.destinations.push_back({dest.id, dest.kind == NodeKind::Store, dest.members.size()});
    }
    std::sort(sm.destinations.begin(), sm.destinations.end());
    sm.destinations.erase(std::unique(sm.destinations.begin(), sm.destinations.end()), sm.destinations.end());
    return sm;
  }

  void lower_operation(const Group& group) {
    const std::size_t n = group.members.size();
    GroupTrace gt;
    gt.group = group.id;
    gt.members = group.members;
    if (n <= vec_ || strategy_ == SplitStrategy::Identity) {
      gt.subgroups = split_identity(n, vec_);
    } else {
      std::vector<ScoreMember> members;
      members.reserve(n);
      for (NodeId m : group.members) members.push_back(score_member(m));
      gt.scores = compute_score_matrix(members, vec_);
      gt.subgroups = strategy_ == SplitStrategy::Partitioning ? split_by_partitioning(gt.scores, vec_)
                                                              : split_by_clustering(gt.scores, vec_);
    }
    for (const auto& sub : gt.subgroups) lower_subgroup(group, sub);
    if (trace_) trace_->groups.push_back(std::move(gt));
  }

  void lower_subgroup(const Group& group, const std::vector<std::size_t>& sub) {
    OrderingContext ctx;
    ctx.vec_size = vec_;
    for (std::size_t idx : sub) {
      const NodeId m = group.members[idx];
      OrderingMember om;
      for (NodeId in : g_.node(m).inputs) om.operands.push_back(location(in));
      for (NodeId s : g_.successors(m)) {
        const ScalarNode& store = g_.node(s);
        if (store.kind != NodeKind::Store) continue;
        const ArraySplit& split = choice_.split(store.array);
        const std::size_t slot = split.slot_of(store.index);
        om.stores.push_back({slot_key(store.array, slot),
                             static_cast<std::uint32_t>(store.index - split.slots[slot].start)});
      }
      ctx.members.push_back(std::move(om));
    }
    const LaneAssignment lanes = fix_order(ctx, sort_);
    const std::size_t arity_ = vecgraph::arity(group.opcode);
    std::vector<NodeId> operands;
    for (std::size_t k = 0; k < arity_; ++k) {
      LaneRequirement req(vec_);
      for (std::size_t i = 0; i < sub.size(); ++i) req[lanes[i]] = ctx.members[i].operands[k];
      operands.push_back(builder_.realize(req));
    }
    const NodeId v = builder_.op(group.opcode, std::move(operands));
    for (std::size_t i = 0; i < sub.size(); ++i) loc_[group.members[sub[i]]] = LaneSource{v, lanes[i], false};
  }

  void lower_reduce(const Group& group) {
    for (NodeId m : group.members) {
      const ScalarNode& node = g_.node(m);
      if (node.inputs.size() > vec_) fail(ErrorCode::Unsupported, "reduction wider than vec_size");
      LaneRequirement req(vec_);
      std::vector<int> lanes;
      for (NodeId in : node.inputs) {
        const LaneSource& src = location(in);
        std::size_t lane = src.lane;
        if (src.splat || req[lane]) {
          lane = static_cast<std::size_t>(std::find(req.begin(), req.end(), std::nullopt) - req.begin());
        }
        req[lane] = src;
        lanes.push_back(static_cast<int>(lane));
      }
      const NodeId v = builder_.realize(req);
      loc_[m] = LaneSource{builder_.reduce(node.opcode, v, std::move(lanes)), 0, true};
    }
  }

  void lower_store(const Group& group) {
    const ArraySplit& split = choice_.split(group.array);
    std::map<std::size_t, std::vector<NodeId>> by_slot;
    for (NodeId m : group.members) by_slot[split.slot_of(g_.node(m).index)].push_back(m);
    for (const auto& [s, members] : by_slot) {
      const Slot& slot = split.slots[s];
      LaneRequirement req(vec_);
      std::uint64_t mask = 0;
      for (NodeId m : members) {
        const std::size_t lane = g_.node(m).index - slot.start;
        req[lane] = location(g_.node(m).inputs[0]);
        mask |= std::uint64_t{1} << lane;
      }
      builder_.store(group.array, slot.start, slot.count, mask, builder_.realize(req));
    }
  }

  const GroupGraph& gg_;
  const ScalarGraph& g_;
  const LoadStoreSplitChoice& choice_;
  SplitStrategy strategy_;
  std::size_t vec_;
  VectorizeTrace* trace_;
  ConstraintSort sort_;
  VectorGraphBuilder builder_;
  std::vector<std::optional<LaneSource>> loc_;
};

}  // namespace

VectorGraph vectorize(const GroupGraph& gg, const LoadStoreSplitChoice& choice, SplitStrategy strategy,
                      std::size_t vec_size, VectorizeTrace* trace, ConstraintSort sort) {
  if (vec_size < 2) fail(ErrorCode::Unsupported, "vec_size must be at least 2");
  return Lowering(gg, choice, strategy, vec_size, trace, sort).run();
}

}  // namespace vecgraph
