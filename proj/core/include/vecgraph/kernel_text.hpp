// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vecgraph/scalar_ir.hpp"

namespace vecgraph {

// Kernel description format
// -------------------------
// A small declarative language for static kernels. Example:
//
//   kernel KB
//   size 6
//   array src0 input size
//   array src1 input size
//   array dest output 1
//   x = 0
//   for i {
//     x += src0[i] + src1[i]
//   }
//   dest[0] = x
//
// Statements are separated by newlines or ';'. `for i { ... }` iterates
// i over [0, size); `for i in 2..5 { ... }` over [2, 5). Index expressions
// are integer arithmetic over loop variables, `size` and literals with
// + - * %, plus s(e) = (e+2) mod size and r(e) = (e xor 0x55555555) mod
// size. Value expressions use + - * / and unary minus over numbers, local
// variables and array elements. Compound assignments (+= -= *= /=) are
// desugared into a read, an operation and a write. '#' starts a comment.

struct IndexExpr;
struct ValueExpr;
struct Statement;

using IndexExprPtr = std::shared_ptr<const IndexExpr>;
using ValueExprPtr = std::shared_ptr<const ValueExpr>;
using StatementPtr = std::shared_ptr<const Statement>;

struct IndexExpr {
  enum class Kind { Literal, Variable, Shift, Random, Binary } kind = Kind::Literal;
  std::int64_t literal = 0;
  std::string name;  // Variable ("size" included)
  char op = '+';     // Binary: + - * %
  IndexExprPtr lhs, rhs;
};

struct ValueExpr {
  enum class Kind { Number, Local, Element, Binary, Negate } kind = Kind::Number;
  double number = 0.0;
  std::string name;  // Local or Element array name
  IndexExprPtr index;
  Opcode op = Opcode::Add;
  ValueExprPtr lhs, rhs;
};

struct Statement {
  enum class Kind { Assign, Loop } kind = Kind::Assign;
  // Assign
  std::string target;
  IndexExprPtr target_index;  // null for a local variable
  std::optional<Opcode> compound;
  ValueExprPtr value;
  // Loop
  std::string variable;
  IndexExprPtr from, to;  // null means 0 and size
  std::vector<StatementPtr> body;
  int line = 0;
};

struct ArraySpec {
  std::string name;
  ArrayRole role = ArrayRole::Input;
  std::optional<std::size_t> length;  // nullopt means `size`
};

struct KernelDescription {
  std::string name = "kernel";
  std::size_t size = 0;
  std::vector<ArraySpec> arrays;
  std::vector<StatementPtr> body;
};

/// Throws Error(Parse) on syntax errors and Error(InvalidKernel) when the
/// size is not a positive integer literal.
KernelDescription parse_kernel_description(std::string_view text);

/// Unrolls the description into a scalar graph. Throws on out-of-bounds
/// indices, undefined variables and unknown arrays.
ScalarGraph build_graph(const KernelDescription& kernel);

}  // namespace vecgraph
