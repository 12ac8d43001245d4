// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "support.hpp"
#include "vecgraph/corpus.hpp"
#include "vecgraph/error.hpp"
#include "vecgraph/lowering.hpp"
#include "vecgraph/random.hpp"
#include "vecgraph/splitting.hpp"

using namespace vecgraph;

namespace {

// Best intra score over all divisions of n elements into sub-groups of at
// most vec (exhaustive, small n only).
double brute_force_best(const ScoreMatrix& d, std::size_t vec) {
  const std::size_t n = d.size();
  const std::size_t k = subgroup_count(n, vec);
  std::vector<std::size_t> label(n, 0);
  double best = -1.0;
  std::function<void(std::size_t, std::vector<std::size_t>&)> go = [&](std::size_t i, std::vector<std::size_t>& fill) {
    if (i == n) {
      SubGrouping g(k);
      for (std::size_t e = 0; e < n; ++e) g[label[e]].push_back(e);
      best = std::max(best, intra_score(d, g));
      return;
    }
    for (std::size_t s = 0; s < k; ++s) {
      if (fill[s] == vec) continue;
      ++fill[s];
      label[i] = s;
      go(i + 1, fill);
      --fill[s];
      if (fill[s] == 0) break;  // empty sub-groups are interchangeable
    }
  };
  std::vector<std::size_t> fill(k, 0);
  go(0, fill);
  return best;
}

void check_shape(const SubGrouping& g, std::size_t n, std::size_t vec) {
  CHECK(g.size() == subgroup_count(n, vec));
  std::vector<std::size_t> all;
  for (const auto& s : g) {
    CHECK(!s.empty());
    CHECK(s.size() <= vec);
    CHECK(std::is_sorted(s.begin(), s.end()));
    all.insert(all.end(), s.begin(), s.end());
  }
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expect(n);
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(all == expect);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i - 1].front() < g[i].front());
}

ScoreMatrix random_matrix(std::size_t n, Rng& rng) {
  ScoreMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.set(i, i, static_cast<double>(rng.uniform_int(0, 2)));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = static_cast<double>(rng.uniform_int(0, 3)) / 2.0;
      d.set(i, j, v);
      d.set(j, i, v);
    }
  }
  return d;
}

}  // namespace

TEST_SUITE("splitting") {

TEST_CASE("array splits place the partial slot") {
  const AccessSpan span{0, 0, 6};
  CHECK(vectors_for(6, 4) == 2);
  CHECK(vectors_for(8, 4) == 2);
  CHECK(vectors_for(1, 4) == 1);
  const ArraySplit front = make_array_split(span, 4, 0);
  CHECK(front.slots == std::vector<Slot>{{0, 2}, {2, 4}});
  const ArraySplit back = make_array_split(span, 4, 1);
  CHECK(back.slots == std::vector<Slot>{{0, 4}, {4, 2}});
  CHECK(back.slot_of(5) == 1);
  CHECK(front.slot_of(1) == 0);
  CHECK_THROWS_AS(back.slot_of(6), Error);
  // Divisible spans ignore the position.
  CHECK(make_array_split({0, 2, 8}, 4, 1) == make_array_split({0, 2, 8}, 4, 0));
  CHECK(make_array_split({0, 2, 8}, 4, 0).slots == std::vector<Slot>{{2, 4}, {6, 4}});
}

TEST_CASE("load/store choices multiply across arrays") {
  const GroupGraph ka = build_group_graph(corpus::make_kernel(corpus::ka(6)));
  CHECK(access_spans(ka).size() == 3);
  CHECK(count_load_store_splits(ka, 4) == 8);
  CHECK(count_load_store_splits(ka, 2) == 1);
  CHECK(count_load_store_splits(ka, 8) == 1);

  for (std::size_t size : {5u, 9u, 13u}) {
    for (std::size_t vec : {2u, 4u, 8u}) {
      const GroupGraph gg = build_group_graph(corpus::make_kernel({"", corpus::Signature::NN_N, size, Opcode::Add}));
      std::uint64_t expect = 1;
      for (const AccessSpan& a : access_spans(gg)) expect *= a.span % vec ? vectors_for(a.span, vec) : 1;
      CHECK(count_load_store_splits(gg, vec) == expect);
      const auto all = enumerate_load_store_splits(gg, vec);
      CHECK(all.size() == expect);
      for (std::size_t i = 1; i < all.size(); ++i) CHECK(!(all[i] == all[i - 1]));
      CHECK(enumerate_load_store_splits(gg, vec, 2).size() == std::min<std::uint64_t>(2, expect));
      for (const auto& choice : all) {
        for (const ArraySplit& s : choice.arrays) {
          std::size_t covered = 0;
          std::size_t partial = 0;
          for (const Slot& slot : s.slots) {
            CHECK(slot.start == s.lo + covered);
            CHECK(slot.count <= vec);
            partial += slot.count < vec;
            covered += slot.count;
          }
          CHECK(covered == s.span);
          CHECK(partial <= 1);
        }
      }
    }
  }
  CHECK(enumerate_load_store_splits(build_group_graph(ScalarGraph{}), 4).size() == 1);
}

TEST_CASE("score entries") {
  ScoreMember a;
  ScoreMember b;
  a.sources = {1u, 2u};
  b.sources = {1u, 2u};
  a.destinations = b.destinations = {{7, true, 2}};
  CHECK(score_entry(a, b, false, 4) == 3.0);  // both sources and a store in common

  ScoreMember c;
  c.sources = {3u, std::nullopt};
  c.destinations = {{8, false, 2}};
  CHECK(score_entry(a, c, false, 4) == 0.0);

  ScoreMember e;
  ScoreMember f;
  e.sources = {1u, 5u};
  f.sources = {1u, 6u};
  e.destinations = f.destinations = {{3, false, 8}, {9, true, 8}};
  CHECK(score_entry(e, f, false, 4) == 2.125);  // one source, 1/8 for the large group, 1 for the store
  CHECK(score_entry(e, f, false, 8) == 3.0);    // the group fits a vector

  CHECK(score_entry(c, c, true, 4) == 1.0 + 1.0);  // one source present, plus own destination
  ScoreMember none;
  CHECK(score_entry(none, none, true, 4) == 0.0);
}

TEST_CASE("score matrices are symmetric") {
  std::vector<ScoreMember> members(5);
  for (std::size_t i = 0; i < members.size(); ++i) {
    members[i].sources = {i % 2, i % 3};
    members[i].destinations = {{static_cast<GroupId>(i % 2), false, 6}};
  }
  const ScoreMatrix d = compute_score_matrix(members, 4);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(d(i, j) == d(j, i));
      CHECK(d(i, j) == score_entry(members[i], members[j], i == j, 4));
    }
  }
}

TEST_CASE("identity split") {
  CHECK(split_identity(10, 4) == SubGrouping{{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9}});
  CHECK(split_identity(0, 4).empty());
  CHECK(intra_score(ScoreMatrix(3), split_identity(3, 4)) == 0.0);
}

TEST_CASE("an all-zero matrix still splits into full sub-groups") {
  for (auto split : {split_by_partitioning, split_by_clustering}) {
    const SubGrouping g = split(ScoreMatrix(8), 4);
    check_shape(g, 8, 4);
    CHECK(g[0].size() == 4);
    CHECK(g[1].size() == 4);
  }
}

TEST_CASE("hidden blocks are recovered") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = 7; i > 0; --i) std::swap(perm[i], perm[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)))]);
    ScoreMatrix d(8);
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 8; ++j) d.set(perm[i], perm[j], (i < 4) == (j < 4) ? 2.0 : 0.0);
    }
    const double best = brute_force_best(d, 4);
    CHECK(best == 2.0 * 12);
    for (auto split : {split_by_partitioning, split_by_clustering}) {
      const SubGrouping g = split(d, 4);
      check_shape(g, 8, 4);
      CHECK(intra_score(d, g) == best);
    }
  }
}

TEST_CASE("splits are well formed and never beat the optimum") {
  Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 9));
    const std::size_t vec = trial % 2 ? 4 : 2;
    if (vec == 2 && n > 8) continue;
    const ScoreMatrix d = random_matrix(n, rng);
    const double best = brute_force_best(d, vec);
    for (auto split : {split_by_partitioning, split_by_clustering}) {
      const SubGrouping g = split(d, vec);
      check_shape(g, n, vec);
      CHECK(intra_score(d, g) <= best);
    }
  }
}

TEST_CASE("the KA operation group split is stable") {
  const GroupGraph gg = build_group_graph(corpus::make_kernel(corpus::ka(6)));
  const auto choices = enumerate_load_store_splits(gg, 4);
  std::ostringstream text;
  for (std::size_t c = 0; c < choices.size(); ++c) {
    for (SplitStrategy s : {SplitStrategy::Partitioning, SplitStrategy::Clustering}) {
      VectorizeTrace trace;
      vectorize(gg, choices[c], s, 4, &trace);
      for (const GroupTrace& t : trace.groups) {
        if (t.scores.size() == 0) continue;
        text << "choice " << c << " " << to_string(s) << " group " << t.group << "\n";
        for (std::size_t i = 0; i < t.scores.size(); ++i) {
          for (std::size_t j = 0; j < t.scores.size(); ++j) text << (j ? " " : "") << t.scores(i, j);
          text << "\n";
        }
        for (const auto& sub : t.subgroups) {
          text << "  {";
          for (std::size_t k = 0; k < sub.size(); ++k) text << (k ? " " : "") << t.members[sub[k]];
          text << "}\n";
        }
      }
    }
  }
  CHECK(!text.str().empty());
  CHECK(vgtest::matches_golden("ka_split_vec4.txt", text.str()));
}

}  // TEST_SUITE
