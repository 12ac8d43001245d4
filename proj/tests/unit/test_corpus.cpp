// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>


#include "support.hpp"
#include "vecgraph/corpus.hpp"
#include "vecgraph/error.hpp"
#include "vecgraph/random.hpp"

using namespace vecgraph;

TEST_SUITE("corpus") {

TEST_CASE("index helpers") {
  CHECK(corpus::shift_index(0, 6) == 2);
  CHECK(corpus::shift_index(5, 6) == 1);
  CHECK(corpus::random_index(0, 128) == 85);  // 0x55 is the low byte of the mask
  CHECK(corpus::random_index(1, 128) == 84);
  CHECK(corpus::random_index(3, 7) == (3u ^ 0x55555555u) % 7);
  CHECK_THROWS_AS(corpus::shift_index(6, 6), Error);
  CHECK_THROWS_AS(corpus::random_index(0, 0), Error);
}

TEST_CASE("signature names round trip") {
  CHECK(corpus::all_signatures().size() == 10);
  for (corpus::Signature s : corpus::all_signatures()) CHECK(corpus::parse_signature(corpus::to_string(s)) == s);
  CHECK(!corpus::parse_signature("NN_X").has_value());
  CHECK(corpus::ka().display_name() == "KA");
  CHECK((corpus::KernelSpec{"", corpus::Signature::rN1_1, 12, Opcode::Mul}).display_name() == "rN1_1_mul_12");
}

TEST_CASE("NN_N of size 8 unrolls to 16 loads, 8 operations and 8 stores") {
  const ScalarGraph g = corpus::make_kernel({"", corpus::Signature::NN_N, 8, Opcode::Add});
  CHECK(g.count(NodeKind::Load) == 16);
  CHECK(g.count(NodeKind::Operation) == 8);
  CHECK(g.count(NodeKind::Store) == 8);
}

TEST_CASE("every signature computes its loop") {
  for (corpus::Signature sig : corpus::all_signatures()) {
    for (Opcode op : {Opcode::Add, Opcode::Mul}) {
      for (std::size_t size : {1u, 2u, 6u, 13u, 32u}) {
        const corpus::KernelSpec spec{"", sig, size, op};
        CAPTURE(spec.display_name());
        const ScalarGraph g = corpus::make_kernel(spec);
        const MemoryImage mem = MemoryImage::random(g.arrays(), size * 7 + 1);
        CHECK(bit_identical(interpret_scalar(g, mem), vgtest::reference_run(spec, mem)));
      }
    }
  }
}

TEST_CASE("PredX node counts follow the link rule") {
  for (unsigned x : {1u, 2u, 4u, 10u}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const corpus::PredXSpec spec{x, 200, seed};
      CAPTURE(x);
      CAPTURE(seed);
      // Replay the documented draw sequence: k, then jumps until k links or
      // the index would go negative.
      Rng rng(seed);
      std::vector<std::size_t> links(spec.size, 0);
      std::vector<bool> read(spec.size, false);
      for (std::size_t v = 0; v < spec.size; ++v) {
        const auto k = rng.uniform_int(1, x);
        std::int64_t p = static_cast<std::int64_t>(v);
        for (std::int64_t t = 0; t < k; ++t) {
          p -= rng.uniform_int(spec.min_jump, spec.max_jump);
          if (p < 0) break;
          ++links[v];
          read[static_cast<std::size_t>(p)] = true;
        }
      }
      std::size_t loads = 0, ops = 0, stores = 0;
      for (std::size_t v = 0; v < spec.size; ++v) {
        loads += links[v] == 0;
        ops += links[v] == 0 ? 0 : (links[v] == 1 ? 1 : links[v] - 1);
        stores += !read[v];
      }
      const ScalarGraph g = corpus::make_predx(spec);
      CHECK(g.count(NodeKind::Load) == loads);
      CHECK(g.count(NodeKind::Operation) == ops);
      CHECK(g.count(NodeKind::Store) == stores);
      CHECK(g.count(NodeKind::Set) == 0);
      for (const ScalarNode& n : g.nodes()) {
        if (n.kind == NodeKind::Operation) CHECK((n.opcode == Opcode::Add || n.opcode == Opcode::Neg));
      }
    }
  }
}

TEST_CASE("PredX is a function of its spec") {
  const corpus::PredXSpec spec{4, 100, 9};
  CHECK(to_json(corpus::make_predx(spec)) == to_json(corpus::make_predx(spec)));
  CHECK(to_json(corpus::make_predx(spec)) != to_json(corpus::make_predx({4, 100, 10})));
  CHECK(vgtest::matches_golden("predx4_100_s1.json", to_json(corpus::make_predx({4, 100, 1}))));
}

TEST_CASE("PredX jumps never read a later variable") {
  // Topological order by construction: ids follow variable order.
  const ScalarGraph g = corpus::make_predx({10, 300, 4});
  for (const ScalarNode& n : g.nodes()) {
    for (NodeId in : n.inputs) CHECK(in < n.id);
  }
}

TEST_CASE("invalid specs") {
  CHECK_THROWS_AS(corpus::make_kernel({"", corpus::Signature::NN_N, 0, Opcode::Add}), Error);
  CHECK_THROWS_AS(corpus::make_kernel({"", corpus::Signature::NN_N, 4, Opcode::Neg}), Error);
  CHECK_THROWS_AS(corpus::make_predx({0, 10, 1}), Error);
  CHECK_THROWS_AS(corpus::make_predx({4, 10, 1, 5, 4}), Error);
}

}  // TEST_SUITE
