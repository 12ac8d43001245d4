// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "vecgraph/corpus.hpp"
#include "vecgraph/grouping.hpp"
#include "vecgraph/reduction.hpp"

using namespace vecgraph;

TEST_SUITE("grouping") {

TEST_CASE("KA forms four groups of six") {
  const GroupGraph gg = build_group_graph(corpus::make_kernel(corpus::ka(6)));
  REQUIRE(gg.groups().size() == 4);
  for (const Group& g : gg.groups()) CHECK(g.members.size() == 6);
  CHECK(gg.edges().size() == 3);
}

TEST_CASE("KB splits its serial chain into one group per depth") {
  const GroupGraph gg = build_group_graph(dedup(corpus::make_kernel(corpus::kb(6))));
  // two load groups, six products of depth 1, five chain adds at depths 2..6, one store
  CHECK(gg.groups().size() == 9);
  std::size_t singletons = 0;
  for (const Group& g : gg.groups()) singletons += g.members.size() == 1;
  CHECK(singletons == 6);
}

TEST_CASE("constants group by value") {
  KernelBuilder b;
  const ArrayId in = b.declare_array("in", ArrayRole::Input, 3);
  const ArrayId out = b.declare_array("out", ArrayRole::Output, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    b.store(out, i, b.apply(Opcode::Mul, b.load(in, i), Value::constant(i == 2 ? 3.0 : 2.0)));
  }
  auto set_sizes = [](const ScalarGraph& g) {
    std::multiset<std::size_t> sizes;
    const GroupGraph gg = build_group_graph(g);
    for (const Group& group : gg.groups()) {
      if (group.kind == NodeKind::Set) sizes.insert(group.members.size());
    }
    return sizes;
  };
  const ScalarGraph g = b.finish();
  CHECK(set_sizes(g) == std::multiset<std::size_t>{1, 2});  // each use materializes its constant
  CHECK(set_sizes(dedup(g)) == std::multiset<std::size_t>{1, 1});
}

TEST_CASE("groups partition the graph and edges mirror data flow") {
  for (corpus::Signature sig : corpus::all_signatures()) {
    const ScalarGraph g = apply_all_reductions(dedup(corpus::make_kernel({"", sig, 11, Opcode::Add})), 4);
    const GroupGraph gg = build_group_graph(g);
    CHECK(gg.scalar().size() == g.size());
    std::set<NodeId> covered;
    for (const Group& group : gg.groups()) {
      CHECK(std::is_sorted(group.members.begin(), group.members.end()));
      for (NodeId id : group.members) {
        CHECK(covered.insert(id).second);
        CHECK(gg.group_of(id) == group.id);
        const ScalarNode& n = g.node(id);
        CHECK(n.kind == group.kind);
        switch (n.kind) {
          case NodeKind::Load:
          case NodeKind::Store: CHECK(n.array == group.array); break;
          case NodeKind::Operation:
          case NodeKind::Reduce:
            CHECK(n.opcode == group.opcode);
            CHECK(g.depth(id) == group.depth);
            break;
          case NodeKind::Set: CHECK(n.constant == group.constant); break;
        }
      }
    }
    CHECK(covered.size() == g.size());

    std::set<std::pair<GroupId, GroupId>> expect;
    for (const ScalarNode& n : g.nodes()) {
      for (NodeId in : n.inputs) expect.insert({gg.group_of(in), gg.group_of(n.id)});
    }
    CHECK(std::set<std::pair<GroupId, GroupId>>(gg.edges().begin(), gg.edges().end()) == expect);
    CHECK(std::is_sorted(gg.edges().begin(), gg.edges().end()));
  }
}

TEST_CASE("empty graph") {
  const GroupGraph gg = build_group_graph(ScalarGraph{});
  CHECK(gg.groups().empty());
  CHECK(gg.edges().empty());
}

}  // TEST_SUITE
