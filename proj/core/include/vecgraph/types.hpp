// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vecgraph {

using NodeId = std::uint32_t;
using ArrayId = std::uint32_t;

/// Arithmetic operators available to scalar and vector operations.
/// Neg is the only unary operator.
enum class Opcode : std::uint8_t { Add, Sub, Mul, Div, Neg };

bool is_commutative(Opcode op) noexcept;
std::size_t arity(Opcode op) noexcept;
std::string_view to_string(Opcode op) noexcept;
std::optional<Opcode> parse_opcode(std::string_view text) noexcept;

/// Evaluates `op`; `rhs` is ignored for unary operators.
double evaluate(Opcode op, double lhs, double rhs = 0.0) noexcept;

enum class ArrayRole : std::uint8_t { Input, Output, InOut };

std::string_view to_string(ArrayRole role) noexcept;
std::optional<ArrayRole> parse_array_role(std::string_view text) noexcept;

struct ArrayDecl {
  std::string name;
  ArrayRole role = ArrayRole::Input;
  std::size_t length = 0;

  friend bool operator==(const ArrayDecl&, const ArrayDecl&) = default;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace vecgraph
