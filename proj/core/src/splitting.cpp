// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/splitting.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "vecgraph/error.hpp"

namespace vecgraph {

std::size_t ArraySplit::slot_of(std::size_t index) const {
  if (index < lo || index >= lo + span) {
    fail(ErrorCode::OutOfBounds, "index " + std::to_string(index) + " outside the split span");
  }
  // Slots are few; a linear scan beats bookkeeping.
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (index < slots[s].start + slots[s].count) return s;
  }
  fail(ErrorCode::InvariantViolation, "slots do not cover their span");
}

const ArraySplit& LoadStoreSplitChoice::split(ArrayId array) const {
  for (const ArraySplit& a : arrays) {
    if (a.array == array) return a;
  }
  fail(ErrorCode::Precondition, "array " + std::to_string(array) + " has no split");
}

std::vector<AccessSpan> access_spans(const GroupGraph& gg) {
  std::map<ArrayId, std::pair<std::size_t, std::size_t>> range;
  for (const ScalarNode& node : gg.scalar().nodes()) {
    if (!node.accesses_memory()) continue;
    auto [it, inserted] = range.try_emplace(node.array, node.index, node.index);
    if (!inserted) {
      it->second.first = std::min(it->second.first, node.index);
      it->second.second = std::max(it->second.second, node.index);
    }
  }
  std::vector<AccessSpan> spans;
  for (const auto& [array, r] : range) spans.push_back({array, r.first, r.second - r.first + 1});
  return spans;
}

std::size_t vectors_for(std::size_t span, std::size_t vec_size) { return (span + vec_size - 1) / vec_size; }

ArraySplit make_array_split(const AccessSpan& access, std::size_t vec_size, std::size_t partial_position) {
  ArraySplit split{access.array, access.lo, access.span, {}};
  const std::size_t full = access.span / vec_size;
  const std::size_t rest = access.span % vec_size;
  std::size_t start = access.lo;
  for (std::size_t v = 0; v < full + (rest != 0); ++v) {
    const std::size_t count = (rest != 0 && v == partial_position) ? rest : vec_size;
    split.slots.push_back({start, count});
    start += count;
  }
  return split;
}

std::uint64_t count_load_store_splits(const GroupGraph& gg, std::size_t vec_size) {
  std::uint64_t total = 1;
  for (const AccessSpan& s : access_spans(gg)) {
    const std::uint64_t choices = s.span % vec_size == 0 ? 1 : vectors_for(s.span, vec_size);
    if (total > std::numeric_limits<std::uint64_t>::max() / choices) return std::numeric_limits<std::uint64_t>::max();
    total *= choices;
  }
  return total;
}

std::vector<LoadStoreSplitChoice> enumerate_load_store_splits(const GroupGraph& gg, std::size_t vec_size,
                                                              std::size_t c_max) {
  if (vec_size == 0) fail(ErrorCode::Precondition, "vec_size must be positive");
  const std::vector<AccessSpan> spans = access_spans(gg);
  std::vector<std::size_t> radix;
  for (const AccessSpan& s : spans) radix.push_back(s.span % vec_size == 0 ? 1 : vectors_for(s.span, vec_size));

  std::vector<LoadStoreSplitChoice> choices;
  std::vector<std::size_t> digit(spans.size(), 0);
  while (choices.size() < c_max) {
    LoadStoreSplitChoice choice;
    for (std::size_t a = 0; a < spans.size(); ++a) choice.arrays.push_back(make_array_split(spans[a], vec_size, digit[a]));
    choices.push_back(std::move(choice));
    // Mixed-radix increment, last array least significant.
    std::size_t a = spans.size();
    while (a > 0) {
      --a;
      if (++digit[a] < radix[a]) break;
      digit[a] = 0;
      if (a == 0) return choices;
    }
    if (spans.empty()) break;
  }
  return choices;
}

// ---------------------------------------------------------------------------

double score_entry(const ScoreMember& a, const ScoreMember& b, bool same, std::size_t vec_size) {
  double score = 0.0;
  if (!same) {
    for (std::size_t k = 0; k < 2; ++k) {
      if (a.sources[k] && b.sources[k] && *a.sources[k] == *b.sources[k]) score += 1.0;
    }
  } else {
    score += static_cast<double>(a.sources[0].has_value()) + static_cast<double>(a.sources[1].has_value());
  }
  // Both lists are sorted by group: walk the intersection.
  auto ia = a.destinations.begin();
  auto ib = b.destinations.begin();
  while (ia != a.destinations.end() && ib != b.destinations.end()) {
    if (ia->group < ib->group) {
      ++ia;
    } else if (ib->group < ia->group) {
      ++ib;
    } else {
      if (ia->is_store || ia->size <= vec_size) {
        score += 1.0;
      } else {
        score += 1.0 / static_cast<double>(ia->size);
      }
      ++ia;
      ++ib;
    }
  }
  return score;
}

ScoreMatrix compute_score_matrix(std::span<const ScoreMember> members, std::size_t vec_size) {
  ScoreMatrix d(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i; j < members.size(); ++j) {
      const double s = score_entry(members[i], members[j], i == j, vec_size);
      d.set(i, j, s);
      d.set(j, i, s);
    }
  }
  return d;
}

// ---------------------------------------------------------------------------

std::size_t subgroup_count(std::size_t n, std::size_t vec_size) { return vectors_for(n, vec_size); }

namespace {

void normalize(SubGrouping& grouping) {
  for (auto& g : grouping) std::sort(g.begin(), g.end());
  std::sort(grouping.begin(), grouping.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

// Lowest-scoring pair among `elements` (ascending), ties to the lowest pair.
std::pair<std::size_t, std::size_t> find_min_pair(const ScoreMatrix& d, const std::vector<std::size_t>& elements) {
  std::pair<std::size_t, std::size_t> best{elements[0], elements[1]};
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < elements.size(); ++a) {
    for (std::size_t b = a + 1; b < elements.size(); ++b) {
      const double s = d(elements[a], elements[b]);
      if (s < best_score) {
        best_score = s;
        best = {elements[a], elements[b]};
      }
    }
  }
  return best;
}

double sum_to(const ScoreMatrix& d, std::size_t element, const std::vector<std::size_t>& group) {
  double s = 0.0;
  for (std::size_t x : group) s += d(element, x);
  return s;
}

}  // namespace

SubGrouping split_identity(std::size_t n, std::size_t vec_size) {
  SubGrouping grouping(subgroup_count(n, vec_size));
  for (std::size_t i = 0; i < n; ++i) grouping[i / vec_size].push_back(i);
  return grouping;
}

SubGrouping split_by_partitioning(const ScoreMatrix& d, std::size_t vec_size) {
  const std::size_t n = d.size();
  if (n <= vec_size) return n == 0 ? SubGrouping{} : split_identity(n, vec_size);
  const std::size_t target = subgroup_count(n, vec_size);

  std::vector<std::vector<std::size_t>> wip;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  wip.push_back(std::move(all));
  SubGrouping final_partitions;

  while (final_partitions.size() != target) {
    std::vector<std::size_t> p = std::move(wip.back());
    wip.pop_back();
    if (p.size() <= vec_size) {
      final_partitions.push_back(std::move(p));
      continue;
    }
    // Side capacities in whole vectors; see the splitting notes in README.
    const std::size_t vecs = vectors_for(p.size(), vec_size);
    const std::size_t size_max_p1 = ((vecs + 1) / 2) * vec_size;
    const std::size_t size_max_p2 = (vecs / 2) * vec_size;

    auto [i, j] = find_min_pair(d, p);
    std::vector<std::size_t> p1{i}, p2{j};
    std::erase(p, i);
    std::erase(p, j);
    while (!p.empty()) {
      if (p1.size() == size_max_p1) {
        p2.push_back(p.front());
        p.erase(p.begin());
      } else if (p2.size() == size_max_p2) {
        p1.push_back(p.front());
        p.erase(p.begin());
      } else {
        std::size_t best = 0;
        double best_key = -std::numeric_limits<double>::infinity();
        double score1 = 0.0, score2 = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
          const double s1 = sum_to(d, p[k], p1);
          const double s2 = sum_to(d, p[k], p2);
          if (std::max(s1, s2) > best_key) {
            best_key = std::max(s1, s2);
            best = k;
            score1 = s1;
            score2 = s2;
          }
        }
        const std::size_t element = p[best];
        p.erase(p.begin() + static_cast<std::ptrdiff_t>(best));
        const bool to_p1 = score1 >= score2 ||
                           (score1 == score2 && size_max_p1 - p1.size() >= size_max_p2 - p2.size());
        (to_p1 ? p1 : p2).push_back(element);
      }
    }
    wip.push_back(std::move(p1));
    wip.push_back(std::move(p2));
  }
  normalize(final_partitions);
  return final_partitions;
}

SubGrouping split_by_clustering(const ScoreMatrix& d, std::size_t vec_size) {
  const std::size_t n = d.size();
  if (n <= vec_size) return n == 0 ? SubGrouping{} : split_identity(n, vec_size);
  const std::size_t v_count = subgroup_count(n, vec_size);

  std::vector<std::size_t> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = i;
  SubGrouping sub(v_count);
  auto [i, j] = find_min_pair(d, e);
  sub[0].push_back(i);
  sub[1].push_back(j);
  std::erase(e, i);
  std::erase(e, j);

  for (std::size_t v = 2; v < v_count; ++v) {
    std::size_t worst = 0;
    double worst_score = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < e.size(); ++k) {
      double score = 0.0;
      for (std::size_t u = 0; u < v; ++u) score += d(sub[u][0], e[k]);
      if (score < worst_score) {
        worst_score = score;
        worst = k;
      }
    }
    sub[v].push_back(e[worst]);
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(worst));
  }

  while (!e.empty()) {
    std::size_t best_idx = 0, best_sub = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < v_count; ++v) {
      if (sub[v].size() >= vec_size) continue;
      for (std::size_t k = 0; k < e.size(); ++k) {
        const double score = sum_to(d, e[k], sub[v]);
        if (score > best_score) {
          best_score = score;
          best_idx = k;
          best_sub = v;
        }
      }
    }
    sub[best_sub].push_back(e[best_idx]);
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(best_idx));
  }
  normalize(sub);
  return sub;
}

double intra_score(const ScoreMatrix& d, const SubGrouping& grouping) {
  double total = 0.0;
  for (const auto& g : grouping) {
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = a + 1; b < g.size(); ++b) total += d(g[a], g[b]);
    }
  }
  return total;
}

}  // namespace vecgraph
