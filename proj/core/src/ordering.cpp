// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/ordering.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "vecgraph/error.hpp"

namespace vecgraph {

MovePlan plan_moves(const LaneRequirement& requirement, std::size_t vec_size) {
  if (requirement.size() != vec_size) fail(ErrorCode::Precondition, "lane requirement width differs from vec_size");
  std::vector<std::uint32_t> sources;
  for (const auto& lane : requirement) {
    if (lane && std::find(sources.begin(), sources.end(), lane->vector) == sources.end()) {
      sources.push_back(lane->vector);
    }
  }
  MovePlan plan;
  if (sources.empty()) return plan;

  if (sources.size() == 1) {
    bool aligned = true;
    for (std::size_t l = 0; l < vec_size; ++l) {
      const auto& src = requirement[l];
      if (src && !src->splat && src->lane != l) aligned = false;
    }
    if (aligned) {
      plan.direct = sources[0];
      return plan;
    }
    DataMove permute{DataMoveKind::Permute, {{false, sources[0]}}, std::vector<int>(vec_size, -1)};
    for (std::size_t l = 0; l < vec_size; ++l) {
      if (const auto& src = requirement[l]) permute.pattern[l] = src->splat ? static_cast<int>(l) : static_cast<int>(src->lane);
    }
    plan.moves.push_back(std::move(permute));
    return plan;
  }

  // Chain of merges: step k folds source k+1 into the running result.
  auto lane_in = [&](std::size_t l, const LaneSource& src) {
    return static_cast<int>(src.splat ? l : src.lane);
  };
  const auto vec = static_cast<int>(vec_size);
  for (std::size_t k = 1; k < sources.size(); ++k) {
    DataMove merge{DataMoveKind::Merge, {}, std::vector<int>(vec_size, -1)};
    merge.sources.push_back(k == 1 ? MoveSource{false, sources[0]}
                                   : MoveSource{true, static_cast<std::uint32_t>(plan.moves.size() - 1)});
    merge.sources.push_back({false, sources[k]});
    for (std::size_t l = 0; l < vec_size; ++l) {
      const auto& src = requirement[l];
      if (!src) continue;
      const auto pos = static_cast<std::size_t>(
          std::find(sources.begin(), sources.end(), src->vector) - sources.begin());
      if (pos == k) {
        merge.pattern[l] = vec + lane_in(l, *src);
      } else if (pos < k) {
        // Already in place in the running result (or in sources[0] for the first merge).
        merge.pattern[l] = k == 1 ? lane_in(l, *src) : static_cast<int>(l);
      }
    }
    plan.moves.push_back(std::move(merge));
  }
  return plan;
}

std::size_t count_moves(const LaneRequirement& requirement, std::size_t vec_size) {
  return plan_moves(requirement, vec_size).moves.size();
}

// ---------------------------------------------------------------------------

namespace {

// constraining[k]: operand position k is read from exactly one non-splat
// vector, so its lanes decide whether a Permute is needed.
std::vector<bool> constraining_operands(const OrderingContext& context) {
  std::size_t arity = 0;
  for (const OrderingMember& m : context.members) arity = std::max(arity, m.operands.size());
  std::vector<bool> out(arity, false);
  for (std::size_t k = 0; k < arity; ++k) {
    std::optional<std::uint32_t> only;
    bool single = true;
    for (const OrderingMember& m : context.members) {
      if (k >= m.operands.size() || m.operands[k].splat) continue;
      if (only && *only != m.operands[k].vector) single = false;
      only = m.operands[k].vector;
    }
    out[k] = single && only.has_value();
  }
  return out;
}

std::vector<std::uint32_t> wanted_lanes(const OrderingMember& member, const std::vector<bool>& constraining) {
  std::vector<std::uint32_t> positions;
  for (std::size_t k = 0; k < member.operands.size(); ++k) {
    if (constraining[k]) positions.push_back(member.operands[k].lane);
  }
  for (const StoreLane& s : member.stores) positions.push_back(s.lane);
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  return positions;
}

// A lane source: operand position (false, k) or stored vector (true, slot).
using SourceKey = std::pair<bool, std::uint64_t>;

// Sources of `member` that would line up if it sat at `lane`, ignoring those
// already needing a move: one move serves any number of its lanes.
std::size_t votes(const OrderingMember& member, const std::vector<bool>& constraining,
                  const std::set<SourceKey>& broken, std::uint32_t lane) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < member.operands.size(); ++k) {
    n += constraining[k] && member.operands[k].lane == lane && !broken.count({false, k});
  }
  for (const StoreLane& s : member.stores) n += s.lane == lane && !broken.count({true, s.slot});
  return n;
}

void mark_broken(const OrderingMember& member, const std::vector<bool>& constraining, std::uint32_t lane,
                 std::set<SourceKey>& broken) {
  for (std::size_t k = 0; k < member.operands.size(); ++k) {
    if (constraining[k] && member.operands[k].lane != lane) broken.insert({false, k});
  }
  for (const StoreLane& s : member.stores) {
    if (s.lane != lane) broken.insert({true, s.slot});
  }
}

}  // namespace

std::vector<std::uint32_t> dependent_positions(const OrderingContext& context, std::size_t m) {
  return wanted_lanes(context.members.at(m), constraining_operands(context));
}

LaneAssignment fix_order(const OrderingContext& context, ConstraintSort sort) {
  const std::size_t n = context.members.size();
  const std::size_t vec = context.vec_size;
  if (n > vec) fail(ErrorCode::Precondition, "sub-group larger than vec_size");

  struct Node {
    std::size_t member;
    std::uint32_t lane;
    std::size_t conflicts = 0;
  };
  const std::vector<bool> constraining = constraining_operands(context);
  std::vector<std::vector<std::uint32_t>> dep(n);
  std::vector<Node> nodes;
  std::vector<std::size_t> wanting(vec, 0);  // members wanting each lane
  for (std::size_t m = 0; m < n; ++m) {
    dep[m] = wanted_lanes(context.members[m], constraining);
    for (std::uint32_t lane : dep[m]) {
      if (lane >= vec) fail(ErrorCode::Precondition, "dependent lane out of range");
      nodes.push_back({m, lane});
      ++wanting[lane];
    }
  }
  for (Node& node : nodes) {
    node.conflicts = (dep[node.member].size() - 1) + (wanting[node.lane] - 1);
  }
  std::stable_sort(nodes.begin(), nodes.end(), [sort](const Node& a, const Node& b) {
    if (a.conflicts != b.conflicts) {
      return sort == ConstraintSort::Descending ? a.conflicts > b.conflicts : a.conflicts < b.conflicts;
    }
    return a.member != b.member ? a.member < b.member : a.lane < b.lane;
  });

  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  LaneAssignment lane_of(n, kUnset);
  std::vector<bool> used(vec, false);
  // Members whose wanted lanes are all one lane never need a move for it.
  for (const Node& node : nodes) {
    const bool need_extract_anyway = dep[node.member].size() >= 2;
    if (need_extract_anyway || lane_of[node.member] != kUnset || used[node.lane]) continue;
    lane_of[node.member] = node.lane;
    used[node.lane] = true;
  }
  // Remaining members, in constraint order, then those with no wishes.
  std::vector<std::size_t> remaining;
  for (const Node& node : nodes) {
    if (lane_of[node.member] == kUnset &&
        std::find(remaining.begin(), remaining.end(), node.member) == remaining.end()) {
      remaining.push_back(node.member);
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    if (dep[m].empty()) remaining.push_back(m);
  }
  // Of the sources a member cannot all satisfy, the ones already needing a
  // move are given up first.
  std::set<SourceKey> broken;
  for (std::size_t m : remaining) {
    std::uint32_t pick = kUnset;
    std::size_t best_votes = 0;
    for (std::uint32_t lane : dep[m]) {
      if (used[lane]) continue;
      const std::size_t v = votes(context.members[m], constraining, broken, lane);
      if (pick == kUnset || v > best_votes) {
        pick = lane;
        best_votes = v;
      }
    }
    if (pick == kUnset) {
      pick = static_cast<std::uint32_t>(std::find(used.begin(), used.end(), false) - used.begin());
    }
    lane_of[m] = pick;
    used[pick] = true;
    mark_broken(context.members[m], constraining, pick, broken);
  }
  return lane_of;
}

std::size_t count_extracts(const OrderingContext& context, const LaneAssignment& assignment) {
  const std::size_t vec = context.vec_size;
  std::size_t arity = 0;
  for (const OrderingMember& m : context.members) arity = std::max(arity, m.operands.size());
  std::size_t moves = 0;
  for (std::size_t k = 0; k < arity; ++k) {
    LaneRequirement req(vec);
    for (std::size_t m = 0; m < context.members.size(); ++m) {
      if (k < context.members[m].operands.size()) req[assignment[m]] = context.members[m].operands[k];
    }
    moves += count_moves(req, vec);
  }
  std::map<std::uint64_t, bool> misaligned;
  for (std::size_t m = 0; m < context.members.size(); ++m) {
    for (const StoreLane& s : context.members[m].stores) misaligned[s.slot] |= s.lane != assignment[m];
  }
  for (const auto& [slot, bad] : misaligned) moves += bad;
  return moves;
}

std::size_t brute_force_min_extracts(const OrderingContext& context) {
  const std::size_t n = context.members.size();
  const std::size_t vec = context.vec_size;
  std::vector<std::uint32_t> lanes(vec);
  std::iota(lanes.begin(), lanes.end(), 0u);
  std::size_t best = ~std::size_t{0};
  // Every injection is a prefix of some permutation; duplicates are harmless.
  do {
    LaneAssignment a(lanes.begin(), lanes.begin() + static_cast<std::ptrdiff_t>(n));
    best = std::min(best, count_extracts(context, a));
  } while (std::next_permutation(lanes.begin(), lanes.end()));
  return best;
}

}  // namespace vecgraph
