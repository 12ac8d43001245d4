// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "vecgraph/corpus.hpp"
#include "vecgraph/error.hpp"
#include "vecgraph/kernel_text.hpp"
#include "vecgraph/reduction.hpp"

using namespace vecgraph;

namespace {

const ScalarNode* only_reduce(const ScalarGraph& g) {
  const ScalarNode* found = nullptr;
  for (const ScalarNode& n : g.nodes()) {
    if (n.kind == NodeKind::Reduce) {
      REQUIRE(found == nullptr);
      found = &n;
    }
  }
  return found;
}

// Leaves under `root`, walking through nodes created by the rewrite.
std::set<NodeId> leaves_under(const ScalarGraph& g, NodeId root, NodeId first_new) {
  std::set<NodeId> out;
  std::function<void(NodeId)> walk = [&](NodeId id) {
    if (id < first_new) {
      out.insert(id);
      return;
    }
    for (NodeId in : g.node(id).inputs) walk(in);
  };
  walk(root);
  return out;
}

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("KB holds one chain that stops at the balanced first add") {
  const ScalarGraph g = dedup(corpus::make_kernel(corpus::kb(6)));
  const auto paths = find_reduction_paths(g, 4);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].opcode == Opcode::Add);
  CHECK(paths[0].nodes.size() == 5);
  const auto operands = path_operands(g, paths[0]);
  CHECK(operands.size() == 6);
  for (NodeId id : operands) CHECK(g.node(id).kind == NodeKind::Operation);
  CHECK(find_reduction_paths(g, 5).empty());  // chain must be longer than vec_size
}

TEST_CASE("a chain is serial and single-consumer") {
  const ScalarGraph g = dedup(corpus::make_kernel(corpus::kb(20)));
  for (const ReductionPath& path : find_reduction_paths(g, 4)) {
    for (std::size_t k = 1; k < path.nodes.size(); ++k) {
      const ScalarNode& node = g.node(path.nodes[k]);
      CHECK(std::count(node.inputs.begin(), node.inputs.end(), path.nodes[k - 1]) == 1);
      CHECK(g.successors(path.nodes[k - 1]).size() == 1);
      CHECK(node.opcode == path.opcode);
    }
  }
}

TEST_CASE("rewriting deals operands round-robin into disjoint partial chains") {
  for (std::size_t vec : {2u, 4u, 8u}) {
    const ScalarGraph g = dedup(corpus::make_kernel(corpus::kb(24)));
    const auto paths = find_reduction_paths(g, vec);
    REQUIRE(paths.size() == 1);
    const auto operands = path_operands(g, paths[0]);
    const ScalarGraph r = apply_reduction(g, paths[0], vec);
    const ScalarNode* reduce = only_reduce(r);
    REQUIRE(reduce != nullptr);
    REQUIRE(reduce->inputs.size() == vec);
    std::set<NodeId> seen;
    for (std::size_t c = 0; c < vec; ++c) {
      std::set<NodeId> expect;
      for (std::size_t j = c; j < operands.size(); j += vec) expect.insert(operands[j]);
      const auto got = leaves_under(r, reduce->inputs[c], g.max_id() + 1);
      CHECK(got == expect);
      for (NodeId id : got) CHECK(seen.insert(id).second);
    }
    // The store that read the tail now reads the Reduce node.
    for (const ScalarNode& n : r.nodes()) {
      if (n.kind == NodeKind::Store) CHECK(n.inputs[0] == reduce->id);
    }
  }
}

TEST_CASE("rewriting preserves results") {
  for (corpus::Signature sig : corpus::all_signatures()) {
    for (Opcode op : {Opcode::Add, Opcode::Mul}) {
      const corpus::KernelSpec spec{"", sig, 23, op};
      CAPTURE(spec.display_name());
      const ScalarGraph g = dedup(corpus::make_kernel(spec));
      const ScalarGraph r = apply_all_reductions(g, 4);
      // Small integers keep sums exact, so reassociation is invisible.
      const MemoryImage ints = MemoryImage::random_integers(g.arrays(), 11, -3, 3);
      if (op == Opcode::Add) CHECK(bit_identical(interpret_scalar(g, ints), interpret_scalar(r, ints)));
      const MemoryImage mem = MemoryImage::random(g.arrays(), 12);
      CHECK(max_relative_difference(interpret_scalar(g, mem), interpret_scalar(r, mem)) <= 1e-10);
      // Long partial chains qualify again, but no original node remains on one.
      for (const ReductionPath& path : find_reduction_paths(r, 4)) {
        for (NodeId id : path.nodes) CHECK(id > g.max_id());
      }
    }
  }
}

TEST_CASE("subtraction chains are not reductions") {
  const ScalarGraph g = build_graph(parse_kernel_description(
      "size 8\narray a input size\narray o output 1\nx = a[0]\nfor i in 1..8 { x -= a[i] }\no[0] = x\n"));
  CHECK(find_reduction_paths(g, 2).empty());
}

TEST_CASE("preconditions") {
  const ScalarGraph g = dedup(corpus::make_kernel(corpus::kb(12)));
  const auto paths = find_reduction_paths(g, 4);
  REQUIRE(!paths.empty());
  CHECK_THROWS_AS(apply_reduction(g, paths[0], 1), Error);
  ReductionPath stale = paths[0];
  stale.nodes.push_back(g.max_id() + 5);
  try {
    apply_reduction(g, stale, 4);
    FAIL("stale path accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StaleHandle);
  }
}

}  // TEST_SUITE
