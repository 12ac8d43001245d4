// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace vecgraph {

/// Where a scalar value lives: a lane of a vector. A splat vector holds the
/// value in every lane (broadcast constants, reduction results).
struct LaneSource {
  std::uint32_t vector = 0;
  std::uint32_t lane = 0;
  bool splat = false;

  friend bool operator==(const LaneSource&, const LaneSource&) = default;
};

/// Desired contents of a vector, lane by lane; nullopt lanes are don't-care.
using LaneRequirement = std::vector<std::optional<LaneSource>>;

enum class DataMoveKind { Permute, Extract, Merge };

/// Operand of a planned move: an existing vector or an earlier move's result.
struct MoveSource {
  bool from_move = false;
  std::uint32_t index = 0;

  friend bool operator==(const MoveSource&, const MoveSource&) = default;
};

/// Permute/Extract: pattern[l] is a lane of sources[0].
/// Merge: pattern[l] < vec_size selects sources[0], otherwise sources[1].
/// -1 leaves the lane undefined.
struct DataMove {
  DataMoveKind kind = DataMoveKind::Permute;
  std::vector<MoveSource> sources;
  std::vector<int> pattern;
};

/// How to build a requirement: either reuse an existing vector as is, or
/// run `moves` and take the last result.
struct MovePlan {
  std::optional<std::uint32_t> direct;
  std::vector<DataMove> moves;
};

/// Canonical lowering. Sources are taken in order of first use:
///   one source, aligned or splat   -> direct, no move
///   one source, misaligned         -> one Permute
///   two sources                    -> one Merge
///   k sources                      -> k-1 chained Merges
/// A requirement with no lanes yields an empty plan with no direct vector.
MovePlan plan_moves(const LaneRequirement& requirement, std::size_t vec_size);

std::size_t count_moves(const LaneRequirement& requirement, std::size_t vec_size);

// ---------------------------------------------------------------------------
// Lane order of one operation sub-group.

struct StoreLane {
  std::uint64_t slot = 0;  // any key unique per stored vector
  std::uint32_t lane = 0;

  friend bool operator==(const StoreLane&, const StoreLane&) = default;
};

struct OrderingMember {
  std::vector<LaneSource> operands;  // placed inputs, in operand order
  std::vector<StoreLane> stores;     // fixed lanes of consuming stores
};

struct OrderingContext {
  std::size_t vec_size = 0;
  std::vector<OrderingMember> members;  // at most vec_size
};

/// lane[m] for member m; injective into [0, vec_size).
using LaneAssignment = std::vector<std::uint32_t>;

enum class ConstraintSort { Descending, Ascending };

/// Lane positions member `m` would like: the lanes of its stores and of
/// its operands at positions read from a single non-splat vector, ascending
/// and unique. Positions gathered from two or more vectors need a Merge
/// whatever the order, so their lanes constrain nothing.
std::vector<std::uint32_t> dependent_positions(const OrderingContext& context, std::size_t m);

/// Order fixing. Every (member, wanted lane) pair is a constraint node; two
/// nodes conflict when they are the same member at different lanes or
/// different members at the same lane. Nodes are visited by conflict count
/// (Descending by default, then member, then lane). Members wanting a single
/// lane take it if still free; the others then take the free lane most of
/// their constraining operands and stores agree on, or the lowest free lane.
LaneAssignment fix_order(const OrderingContext& context, ConstraintSort sort = ConstraintSort::Descending);

/// Moves implied by an assignment: one plan per operand position plus one
/// per stored vector whose lanes do not line up.
std::size_t count_extracts(const OrderingContext& context, const LaneAssignment& assignment);

/// Exhaustive minimum of count_extracts over all injective assignments.
/// Intended for small vec_size (tests and acceptance).
std::size_t brute_force_min_extracts(const OrderingContext& context);

}  // namespace vecgraph
