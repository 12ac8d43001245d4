// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "vecgraph/scalar_ir.hpp"

namespace vecgraph::corpus {

/// (x + 2) mod n.
std::size_t shift_index(std::size_t x, std::size_t n);
/// (x xor 0x55555555) mod n. Not a permutation in general.
std::size_t random_index(std::size_t x, std::size_t n);

/// The ten two-input, one-output custom kernels. Names encode
/// (src0, src1) -> dest, e.g. rNN_1 is dest += op(src0[r(i)], src1[i]).
enum class Signature {
  NN_N, NN_1, N1_N, N1_1, rNN_N, NN_rN, rNN_1, rN1_N, rN1_1, sNsN_N
};

std::span<const Signature> all_signatures() noexcept;
std::string_view to_string(Signature signature) noexcept;
std::optional<Signature> parse_signature(std::string_view name) noexcept;

struct KernelSpec {
  std::string name;  // empty: derived from signature, op and size
  Signature signature = Signature::NN_N;
  std::size_t size = 8;
  Opcode op = Opcode::Add;

  std::string display_name() const;
};

/// The two running examples: KA is sNsN_N with add, KB is NN_1 with add.
KernelSpec ka(std::size_t size = 6);
KernelSpec kb(std::size_t size = 6);

/// Kernel-description text for the spec; make_kernel parses and unrolls it.
std::string kernel_description(const KernelSpec& spec);
ScalarGraph make_kernel(const KernelSpec& spec);

struct PredXSpec {
  unsigned max_predecessors = 4;
  std::size_t size = 100;
  std::uint64_t seed = 1;
  unsigned min_jump = 1;
  unsigned max_jump = 10;
};

/// Random straight-line program. Variable v draws k in [1, X] and links to
/// v - j1, v - j1 - j2, ... (jumps uniform in [min_jump, max_jump]) until k
/// links are made or the index would go negative. A variable with no links
/// is a load of in[...]; with one link it negates it; with more it sums them.
/// Variables nobody reads are stored to out[...].
ScalarGraph make_predx(const PredXSpec& spec);

}  // namespace vecgraph::corpus
