// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>
#include <sstream>

#include "support.hpp"
#include "vecgraph/corpus.hpp"
#include "vecgraph/error.hpp"
#include "vecgraph/search.hpp"

using namespace vecgraph;

TEST_SUITE("search") {

TEST_CASE("NN_N of size 8 at vec 4 needs two vectors per array and no moves") {
  const SearchResult r = prospect(corpus::make_kernel({"", corpus::Signature::NN_N, 8, Opcode::Add}), 4);
  CHECK(r.report.best().census == Census{4, 2, 2, 0});
  CHECK(r.report.choices_available == 1);
  CHECK(!r.config.use_reduction);
}

TEST_CASE("KA explores every load/store choice") {
  const SearchResult r = prospect(corpus::make_kernel(corpus::ka(6)), 4);
  CHECK(r.report.choices_available == 8);
  CHECK(r.report.configs.size() >= 8);
  std::set<std::size_t> choices;
  for (const ConfigResult& c : r.report.configs) choices.insert(c.config.load_store_choice);
  CHECK(choices.size() == 8);
}

TEST_CASE("KA needs data moves except under the split that lines its lanes up") {
  const SearchResult r = prospect(corpus::make_kernel(corpus::ka(6)), 4);
  std::ostringstream table;
  std::size_t with_moves = 0;
  for (const ConfigResult& c : r.report.configs) {
    table << describe(c.config) << " " << c.census.loads << "/" << c.census.stores << "/" << c.census.operations
          << "/" << c.census.data_moves << "\n";
    with_moves += c.census.data_moves > 0;
  }
  CHECK(with_moves > 0);
  CHECK(r.report.best().census.data_moves == 0);
  CHECK(vgtest::matches_golden("ka_configs_vec4.txt", table.str()));
}

TEST_CASE("KB at vec 4 wins with the reduction") {
  const SearchResult r = prospect(corpus::make_kernel(corpus::kb(6)), 4);
  CHECK(r.config.use_reduction);
  std::size_t reduces = 0;
  for (const VectorNode& n : r.graph.nodes()) reduces += n.kind == VectorKind::Reduce;
  CHECK(reduces == 1);
}

TEST_CASE("the winner is the smallest valid graph, ties to fewer moves then earlier") {
  for (corpus::Signature sig : corpus::all_signatures()) {
    const SearchResult r = prospect(corpus::make_kernel({"", sig, 14, Opcode::Add}), 4);
    const ConfigResult& w = r.report.best();
    CHECK(w.valid);
    CHECK(w.config == r.config);
    CHECK(count_nodes(r.graph) == w.census);
    for (std::size_t i = 0; i < r.report.configs.size(); ++i) {
      const ConfigResult& c = r.report.configs[i];
      if (!c.valid) continue;
      CHECK(c.census.total() >= w.census.total());
      if (c.census.total() == w.census.total()) {
        CHECK(c.census.data_moves >= w.census.data_moves);
        if (c.census.data_moves == w.census.data_moves) CHECK(i >= r.report.winner);
      }
    }
  }
}

TEST_CASE("narrowing the search never finds a smaller graph") {
  for (corpus::Signature sig : corpus::all_signatures()) {
    const ScalarGraph g = corpus::make_kernel({"", sig, 10, Opcode::Mul});
    const std::size_t full = prospect(g, 4).report.best().census.total();
    SearchLimits only_identity;
    only_identity.strategy = SplitStrategy::Identity;
    const SearchResult narrow = prospect(g, 4, only_identity);
    CHECK(narrow.report.best().census.total() >= full);
    for (const ConfigResult& c : narrow.report.configs) CHECK(c.config.strategy == SplitStrategy::Identity);
    SearchLimits first_choice;
    first_choice.choice = 0;
    first_choice.reduction = false;
    const SearchResult one = prospect(g, 4, first_choice);
    CHECK(one.report.best().census.total() >= full);
    for (const ConfigResult& c : one.report.configs) {
      CHECK(c.config.load_store_choice == 0);
      CHECK(!c.config.use_reduction);
    }
  }
}

TEST_CASE("the search is deterministic") {
  const ScalarGraph g = corpus::make_kernel({"", corpus::Signature::rNN_1, 21, Opcode::Add});
  const SearchResult a = prospect(g, 8);
  const SearchResult b = prospect(g, 8);
  CHECK(a.graph == b.graph);
  CHECK(a.report.winner == b.report.winner);
  CHECK(a.report.configs.size() == b.report.configs.size());
}

TEST_CASE("limits and edge cases") {
  const ScalarGraph g = corpus::make_kernel(corpus::ka(6));
  SearchLimits bad;
  bad.choice = 99;
  CHECK_THROWS_AS(prospect(g, 4, bad), Error);
  CHECK_THROWS_AS(prospect(g, 1), Error);
  SearchLimits capped;
  capped.c_max = 3;
  CHECK(prospect(g, 4, capped).report.choices_available == 8);
  for (const ConfigResult& c : prospect(g, 4, capped).report.configs) CHECK(c.config.load_store_choice < 3);
  CHECK(count_nodes(VectorGraph{}).total() == 0);
  CHECK(describe({true, 3, SplitStrategy::Clustering, 8}) == "reduction=on choice=3 split=clustering vec=8");
}

}  // TEST_SUITE
