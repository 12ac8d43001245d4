// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vecgraph/grouping.hpp"

namespace vecgraph {

/// A contiguous run of elements loaded or stored by one vector instruction.
struct Slot {
  std::size_t start = 0;
  std::size_t count = 0;

  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Slots of one array. They tile the dense span of accessed indices
/// [lo, lo + span) in ascending order; at most one slot is partial.
struct ArraySplit {
  ArrayId array = 0;
  std::size_t lo = 0;
  std::size_t span = 0;
  std::vector<Slot> slots;

  /// Index of the slot holding `index`; throws if outside the span.
  std::size_t slot_of(std::size_t index) const;

  friend bool operator==(const ArraySplit&, const ArraySplit&) = default;
};

/// One way of dividing every accessed array. Loads and stores of an array
/// share its slots.
struct LoadStoreSplitChoice {
  std::vector<ArraySplit> arrays;  // ascending array id, accessed arrays only

  const ArraySplit& split(ArrayId array) const;

  friend bool operator==(const LoadStoreSplitChoice&, const LoadStoreSplitChoice&) = default;
};

/// Accessed index span (lo, length) of every array touched by a Load or
/// Store, ascending array id.
struct AccessSpan {
  ArrayId array = 0;
  std::size_t lo = 0;
  std::size_t span = 0;
};
std::vector<AccessSpan> access_spans(const GroupGraph& gg);

/// Number of vectors needed for `span` elements.
std::size_t vectors_for(std::size_t span, std::size_t vec_size);

/// The split of one array whose partial slot sits at `partial_position`
/// (ignored when the span is a multiple of vec_size).
ArraySplit make_array_split(const AccessSpan& access, std::size_t vec_size, std::size_t partial_position);

/// Product of the per-array choice counts, saturating at UINT64_MAX.
std::uint64_t count_load_store_splits(const GroupGraph& gg, std::size_t vec_size);

/// All choices in lexicographic order (first array most significant), at
/// most c_max of them. An empty group graph yields one empty choice.
std::vector<LoadStoreSplitChoice> enumerate_load_store_splits(const GroupGraph& gg, std::size_t vec_size,
                                                              std::size_t c_max = 4096);

// ---------------------------------------------------------------------------
// Score matrix

/// Destination group of an operation, as seen by the score computation.
struct ScoreDestination {
  GroupId group = 0;
  bool is_store = false;
  std::size_t size = 0;  // members in the destination group

  friend auto operator<=>(const ScoreDestination&, const ScoreDestination&) = default;
};

/// What the score of one group member depends on: the vector holding each
/// operand (nullopt for a missing operand) and its destination groups.
struct ScoreMember {
  std::array<std::optional<std::uint64_t>, 2> sources;
  std::vector<ScoreDestination> destinations;  // sorted by group, unique
};

/// d(A, B) for two members of one group; `same` selects the diagonal rule.
double score_entry(const ScoreMember& a, const ScoreMember& b, bool same, std::size_t vec_size);

class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  explicit ScoreMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) { values_[i * n_ + j] = v; }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

ScoreMatrix compute_score_matrix(std::span<const ScoreMember> members, std::size_t vec_size);

// ---------------------------------------------------------------------------
// Operation group splits. Elements are matrix indices; index order is node
// id order, so "lowest index" is the id tie-break. Every result has
// ceil(n / vec_size) sub-groups of at most vec_size elements, each sorted,
// listed by smallest element.

using SubGrouping = std::vector<std::vector<std::size_t>>;

std::size_t subgroup_count(std::size_t n, std::size_t vec_size);

/// Consecutive chunks of vec_size elements.
SubGrouping split_identity(std::size_t n, std::size_t vec_size);

/// Recursive bisection seeded by the least related pair.
SubGrouping split_by_partitioning(const ScoreMatrix& scores, std::size_t vec_size);

/// V seeds chosen to be mutually unrelated, then greedy growth.
SubGrouping split_by_clustering(const ScoreMatrix& scores, std::size_t vec_size);

/// Sum of d(i, j) over unordered pairs i != j in the same sub-group.
double intra_score(const ScoreMatrix& scores, const SubGrouping& grouping);

}  // namespace vecgraph
