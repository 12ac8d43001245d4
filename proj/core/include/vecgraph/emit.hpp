// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "vecgraph/vector_ir.hpp"

namespace vecgraph {

/// Instruction vocabulary of emitted source.
///   Avx512   <immintrin.h> intrinsics on __m512d; vec_size must be 8
///   Generic  plain C: a small inline-function prelude over a struct of
///            vec_size doubles, any vec_size
enum class Target { Avx512, Generic };

std::string_view to_string(Target target) noexcept;
std::optional<Target> parse_target(std::string_view name) noexcept;

/// Avx512 when vec_size is 8, Generic otherwise.
Target default_target(std::size_t vec_size) noexcept;

/// `<kernel>_<vec_size>.c`
std::string emitted_file_name(std::string_view kernel, std::size_t vec_size);

/// A translation unit with one extern function named after the kernel and
/// vec_size, taking one pointer per array in declaration order (const for
/// inputs). One statement per vector node, in `order`. Throws
/// Error(Unsupported) for Avx512 with vec_size != 8.
std::string emit_intrinsics(const VectorGraph& graph, std::span<const NodeId> order, std::string_view kernel,
                            Target target);

/// C identifier derived from a kernel name.
std::string c_identifier(std::string_view name);

}  // namespace vecgraph
