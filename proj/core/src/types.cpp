// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/types.hpp"

#include <array>
#include <charconv>

#include "vecgraph/error.hpp"

namespace vecgraph {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::InvalidKernel: return "invalid kernel";
    case ErrorCode::OutOfBounds: return "index out of bounds";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Precondition: return "precondition violated";
    case ErrorCode::StaleHandle: return "stale handle";
    case ErrorCode::InvariantViolation: return "invariant violation";
    case ErrorCode::OracleMismatch: return "oracle mismatch";
  }
  return "unknown error";
}

bool is_commutative(Opcode op) noexcept {
  return op == Opcode::Add || op == Opcode::Mul;
}

std::size_t arity(Opcode op) noexcept { return op == Opcode::Neg ? 1 : 2; }

std::string_view to_string(Opcode op) noexcept {
  switch (op) {
    case Opcode::Add: return "add";
    case Opcode::Sub: return "sub";
    case Opcode::Mul: return "mul";
    case Opcode::Div: return "div";
    case Opcode::Neg: return "neg";
  }
  return "?";
}

std::optional<Opcode> parse_opcode(std::string_view text) noexcept {
  for (Opcode op : {Opcode::Add, Opcode::Sub, Opcode::Mul, Opcode::Div, Opcode::Neg}) {
    if (text == to_string(op)) return op;
  }
  return std::nullopt;
}

double evaluate(Opcode op, double lhs, double rhs) noexcept {
  switch (op) {
    case Opcode::Add: return lhs + rhs;
    case Opcode::Sub: return lhs - rhs;
    case Opcode::Mul: return lhs * rhs;
    case Opcode::Div: return lhs / rhs;
    case Opcode::Neg: return -lhs;
  }
  return lhs;
}

std::string_view to_string(ArrayRole role) noexcept {
  switch (role) {
    case ArrayRole::Input: return "input";
    case ArrayRole::Output: return "output";
    case ArrayRole::InOut: return "inout";
  }
  return "?";
}

std::optional<ArrayRole> parse_array_role(std::string_view text) noexcept {
  for (ArrayRole role : {ArrayRole::Input, ArrayRole::Output, ArrayRole::InOut}) {
    if (text == to_string(role)) return role;
  }
  return std::nullopt;
}

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buffer.data(), end);
}

}  // namespace vecgraph
