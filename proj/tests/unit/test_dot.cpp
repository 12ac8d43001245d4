// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <iterator>
#include <regex>

#include "vecgraph/corpus.hpp"
#include "vecgraph/dot.hpp"
#include "vecgraph/reduction.hpp"
#include "vecgraph/schedule.hpp"
#include "vecgraph/search.hpp"

using namespace vecgraph;

namespace {

std::size_t matches(const std::string& text, const char* pattern) {
  const std::regex re(pattern);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST_SUITE("dot") {

TEST_CASE("empty graphs render as an empty digraph") {
  CHECK(to_dot(ScalarGraph{}) == "digraph scalar {\n}\n");
  CHECK(to_dot(GroupGraph{}) == "digraph groups {\n}\n");
  CHECK(to_dot(VectorGraph{}) == "digraph vector {\n}\n");
  CHECK(schedule_to_dot(VectorGraph{}, {}) == "digraph schedule {\n}\n");
}

TEST_CASE("scalar rendering of KA") {
  const ScalarGraph g = corpus::make_kernel(corpus::ka(6));
  const std::string dot = to_dot(g);
  CHECK(matches(dot, R"(\n  n\d+ \[)") == 24);
  CHECK(matches(dot, "->") == 18);
  CHECK(matches(dot, R"(label="load\[src0:)") == 6);
  CHECK(matches(dot, R"(label="store\[dest:)") == 6);
  CHECK(matches(dot, R"(label="add")") == 6);
  CHECK(dot.find(R"(n0 [label="load[src0:2]"])") != std::string::npos);  // s(0) = 2
}

TEST_CASE("reduce nodes are diamonds") {
  const ScalarGraph g = apply_all_reductions(dedup(corpus::make_kernel(corpus::kb(12))), 4);
  const std::string dot = to_dot(g);
  CHECK(matches(dot, R"(label="reduce:add", shape=diamond)") == 1);
}

TEST_CASE("one node per group") {
  for (corpus::Signature sig : corpus::all_signatures()) {
    const GroupGraph gg = build_group_graph(corpus::make_kernel({"", sig, 9, Opcode::Add}));
    const std::string dot = to_dot(gg);
    CHECK(matches(dot, R"(\n  g\d+ \[)") == gg.groups().size());
    CHECK(matches(dot, "->") == gg.edges().size());
  }
}

TEST_CASE("vector and schedule rendering") {
  const SearchResult r = prospect(corpus::make_kernel({"", corpus::Signature::rNN_N, 12, Opcode::Add}), 4);
  const std::string dot = to_dot(r.graph);
  std::size_t edges = 0, ordering = 0, moves = 0;
  for (const VectorNode& n : r.graph.nodes()) {
    edges += n.inputs.size();
    ordering += n.after.size();
    moves += n.is_data_move();
  }
  CHECK(matches(dot, R"(\n  n\d+ \[)") == r.graph.size());
  CHECK(matches(dot, "->") == edges + ordering);
  CHECK(matches(dot, "style=dashed") == ordering);
  CHECK(matches(dot, "hexagon") == moves);

  const auto order = schedule(r.graph);
  const std::string sched = schedule_to_dot(r.graph, order);
  CHECK(matches(sched, "style=bold") == order.size() - 1);
  CHECK(schedule_to_dot(r.graph, order) == sched);
}

}  // TEST_SUITE
