// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/kernel_text.hpp"

#include <cctype>
#include <charconv>
#include <map>

#include "vecgraph/corpus.hpp"
#include "vecgraph/error.hpp"

namespace vecgraph {
namespace {

struct Token {
  enum class Kind { Identifier, Integer, Number, Symbol, Newline, End } kind = Kind::End;
  std::string text;
  int line = 1;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind kind, std::string t) { tokens.push_back({kind, std::move(t), line}); };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '\n' || c == ';') {
      push(Token::Kind::Newline, std::string(1, c));
      if (c == '\n') ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      push(Token::Kind::Identifier, std::string(text.substr(i, j - i)));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i;
      bool real = false;
      while (j < text.size()) {
        const char d = text[j];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          ++j;
        } else if (d == '.' && !(j + 1 < text.size() && text[j + 1] == '.')) {
          real = true;
          ++j;
        } else if ((d == 'e' || d == 'E') && j + 1 < text.size()) {
          real = true;
          ++j;
          if (text[j] == '+' || text[j] == '-') ++j;
        } else {
          break;
        }
      }
      push(real ? Token::Kind::Number : Token::Kind::Integer, std::string(text.substr(i, j - i)));
      i = j;
    } else {
      static constexpr std::string_view kTwoChar[] = {"+=", "-=", "*=", "/=", ".."};
      bool matched = false;
      for (std::string_view sym : kTwoChar) {
        if (text.substr(i, 2) == sym) {
          push(Token::Kind::Symbol, std::string(sym));
          i += 2;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (std::string_view("+-*/%=[](){}").find(c) == std::string_view::npos) {
        fail(ErrorCode::Parse, "line " + std::to_string(line) + ": unexpected character '" +
                                   std::string(1, c) + "'");
      }
      push(Token::Kind::Symbol, std::string(1, c));
      ++i;
    }
  }
  tokens.push_back({Token::Kind::End, "", line});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  KernelDescription parse() {
    KernelDescription kernel;
    bool have_size = false;
    skip_newlines();
    while (peek().kind != Token::Kind::End) {
      const Token& t = peek();
      if (t.kind == Token::Kind::Identifier && t.text == "kernel") {
        next();
        kernel.name = expect(Token::Kind::Identifier, "kernel name").text;
      } else if (t.kind == Token::Kind::Identifier && t.text == "size" &&
                 peek(1).kind != Token::Kind::Symbol) {
        next();
        const Token& value = next();
        if (value.kind != Token::Kind::Integer) {
          fail(ErrorCode::InvalidKernel, "line " + std::to_string(value.line) +
                                             ": kernel size must be a static integer, got '" +
                                             value.text + "'");
        }
        kernel.size = parse_integer(value);
        if (kernel.size == 0) fail(ErrorCode::InvalidKernel, "kernel size must be positive");
        have_size = true;
      } else if (t.kind == Token::Kind::Identifier && t.text == "array") {
        next();
        ArraySpec spec;
        spec.name = expect(Token::Kind::Identifier, "array name").text;
        const Token& role = expect(Token::Kind::Identifier, "array role");
        auto parsed = parse_array_role(role.text);
        if (!parsed) error(role, "unknown array role '" + role.text + "'");
        spec.role = *parsed;
        const Token& length = next();
        if (length.kind == Token::Kind::Integer) {
          spec.length = parse_integer(length);
        } else if (length.kind == Token::Kind::Identifier && length.text == "size") {
          spec.length = std::nullopt;
        } else {
          fail(ErrorCode::InvalidKernel, "line " + std::to_string(length.line) +
                                             ": array length must be a static integer or 'size'");
        }
        kernel.arrays.push_back(std::move(spec));
      } else {
        kernel.body.push_back(statement());
      }
      end_of_statement();
    }
    if (!have_size) fail(ErrorCode::InvalidKernel, "kernel description has no 'size' line");
    return kernel;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(std::string_view symbol) {
    if (peek().kind == Token::Kind::Symbol && peek().text == symbol) {
      next();
      return true;
    }
    return false;
  }
  [[noreturn]] void error(const Token& at, const std::string& message) const {
    fail(ErrorCode::Parse, "line " + std::to_string(at.line) + ": " + message);
  }
  const Token& expect(Token::Kind kind, std::string_view what) {
    if (peek().kind != kind) error(peek(), "expected " + std::string(what) + ", got '" + peek().text + "'");
    return next();
  }
  void expect_symbol(std::string_view symbol) {
    if (!accept(symbol)) error(peek(), "expected '" + std::string(symbol) + "', got '" + peek().text + "'");
  }
  void skip_newlines() {
    while (peek().kind == Token::Kind::Newline) next();
  }
  void end_of_statement() {
    if (peek().kind == Token::Kind::End) return;
    if (peek().kind == Token::Kind::Symbol && peek().text == "}") return;
    if (peek().kind != Token::Kind::Newline) error(peek(), "unexpected '" + peek().text + "'");
    skip_newlines();
  }
  std::size_t parse_integer(const Token& t) const {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) error(t, "bad integer '" + t.text + "'");
    return value;
  }

  StatementPtr statement() {
    auto stmt = std::make_shared<Statement>();
    const Token& head = expect(Token::Kind::Identifier, "statement");
    stmt->line = head.line;
    if (head.text == "for") {
      stmt->kind = Statement::Kind::Loop;
      stmt->variable = expect(Token::Kind::Identifier, "loop variable").text;
      if (peek().kind == Token::Kind::Identifier && peek().text == "in") {
        next();
        stmt->from = index_expr();
        expect_symbol("..");
        stmt->to = index_expr();
      }
      skip_newlines();
      expect_symbol("{");
      skip_newlines();
      while (!accept("}")) {
        if (peek().kind == Token::Kind::End) error(peek(), "unterminated loop body");
        stmt->body.push_back(statement());
        end_of_statement();
      }
      return stmt;
    }
    stmt->kind = Statement::Kind::Assign;
    stmt->target = head.text;
    if (accept("[")) {
      stmt->target_index = index_expr();
      expect_symbol("]");
    }
    const Token& op = next();
    if (op.kind != Token::Kind::Symbol) error(op, "expected assignment operator");
    if (op.text == "+=") stmt->compound = Opcode::Add;
    else if (op.text == "-=") stmt->compound = Opcode::Sub;
    else if (op.text == "*=") stmt->compound = Opcode::Mul;
    else if (op.text == "/=") stmt->compound = Opcode::Div;
    else if (op.text != "=") error(op, "unknown assignment operator '" + op.text + "'");
    stmt->value = value_expr();
    return stmt;
  }

  ValueExprPtr binary_value(Opcode op, ValueExprPtr lhs, ValueExprPtr rhs) {
    auto e = std::make_shared<ValueExpr>();
    e->kind = ValueExpr::Kind::Binary;
    e->op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
  }

  ValueExprPtr value_expr() {
    ValueExprPtr lhs = value_term();
    for (;;) {
      if (accept("+")) lhs = binary_value(Opcode::Add, lhs, value_term());
      else if (accept("-")) lhs = binary_value(Opcode::Sub, lhs, value_term());
      else return lhs;
    }
  }
  ValueExprPtr value_term() {
    ValueExprPtr lhs = value_unary();
    for (;;) {
      if (accept("*")) lhs = binary_value(Opcode::Mul, lhs, value_unary());
      else if (accept("/")) lhs = binary_value(Opcode::Div, lhs, value_unary());
      else if (peek().kind == Token::Kind::Symbol && peek().text == "%") error(peek(), "unknown operator '%' in value expression");
      else return lhs;
    }
  }
  ValueExprPtr value_unary() {
    if (accept("-")) {
      auto e = std::make_shared<ValueExpr>();
      e->kind = ValueExpr::Kind::Negate;
      e->lhs = value_unary();
      return e;
    }
    return value_primary();
  }
  ValueExprPtr value_primary() {
    auto e = std::make_shared<ValueExpr>();
    const Token& t = next();
    if (t.kind == Token::Kind::Integer || t.kind == Token::Kind::Number) {
      e->kind = ValueExpr::Kind::Number;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), e->number);
      if (ec != std::errc{}) error(t, "bad number '" + t.text + "'");
      return e;
    }
    if (t.kind == Token::Kind::Identifier) {
      e->name = t.text;
      if (accept("[")) {
        e->kind = ValueExpr::Kind::Element;
        e->index = index_expr();
        expect_symbol("]");
      } else {
        e->kind = ValueExpr::Kind::Local;
      }
      return e;
    }
    if (t.kind == Token::Kind::Symbol && t.text == "(") {
      ValueExprPtr inner = value_expr();
      expect_symbol(")");
      return inner;
    }
    error(t, "unexpected '" + t.text + "' in expression");
  }

  IndexExprPtr binary_index(char op, IndexExprPtr lhs, IndexExprPtr rhs) {
    auto e = std::make_shared<IndexExpr>();
    e->kind = IndexExpr::Kind::Binary;
    e->op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
  }
  IndexExprPtr index_expr() {
    IndexExprPtr lhs = index_term();
    for (;;) {
      if (accept("+")) lhs = binary_index('+', lhs, index_term());
      else if (accept("-")) lhs = binary_index('-', lhs, index_term());
      else return lhs;
    }
  }
  IndexExprPtr index_term() {
    IndexExprPtr lhs = index_primary();
    for (;;) {
      if (accept("*")) lhs = binary_index('*', lhs, index_primary());
      else if (accept("%")) lhs = binary_index('%', lhs, index_primary());
      else return lhs;
    }
  }
  IndexExprPtr index_primary() {
    auto e = std::make_shared<IndexExpr>();
    const Token& t = next();
    if (t.kind == Token::Kind::Integer) {
      e->kind = IndexExpr::Kind::Literal;
      e->literal = static_cast<std::int64_t>(parse_integer(t));
      return e;
    }
    if (t.kind == Token::Kind::Identifier) {
      if ((t.text == "s" || t.text == "r") && accept("(")) {
        e->kind = t.text == "s" ? IndexExpr::Kind::Shift : IndexExpr::Kind::Random;
        e->lhs = index_expr();
        expect_symbol(")");
        return e;
      }
      if (peek().kind == Token::Kind::Symbol && peek().text == "(") {
        error(t, "unknown index function '" + t.text + "'");
      }
      e->kind = IndexExpr::Kind::Variable;
      e->name = t.text;
      return e;
    }
    if (t.kind == Token::Kind::Symbol && t.text == "(") {
      IndexExprPtr inner = index_expr();
      expect_symbol(")");
      return inner;
    }
    error(t, "unexpected '" + t.text + "' in index expression");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

class Unroller {
 public:
  explicit Unroller(const KernelDescription& kernel) : kernel_(kernel) {
    for (const ArraySpec& spec : kernel.arrays) {
      arrays_[spec.name] = builder_.declare_array(spec.name, spec.role, spec.length.value_or(kernel.size));
    }
  }

  ScalarGraph run() {
    for (const StatementPtr& stmt : kernel_.body) execute(*stmt);
    return builder_.finish();
  }

 private:
  [[noreturn]] void error(const Statement& at, ErrorCode code, const std::string& message) const {
    fail(code, "line " + std::to_string(at.line) + ": " + message);
  }

  std::int64_t eval_index(const IndexExpr& e, const Statement& at) const {
    const auto n = static_cast<std::int64_t>(kernel_.size);
    switch (e.kind) {
      case IndexExpr::Kind::Literal:
        return e.literal;
      case IndexExpr::Kind::Variable: {
        if (e.name == "size") return n;
        auto it = loop_vars_.find(e.name);
        if (it == loop_vars_.end()) error(at, ErrorCode::InvalidKernel, "unknown index variable '" + e.name + "'");
        return it->second;
      }
      case IndexExpr::Kind::Shift:
      case IndexExpr::Kind::Random: {
        const std::int64_t x = eval_index(*e.lhs, at);
        if (x < 0 || x >= n) {
          error(at, ErrorCode::OutOfBounds, "index function argument " + std::to_string(x) + " outside [0, size)");
        }
        const auto ux = static_cast<std::size_t>(x);
        const auto un = static_cast<std::size_t>(n);
        return static_cast<std::int64_t>(e.kind == IndexExpr::Kind::Shift ? corpus::shift_index(ux, un)
                                                                          : corpus::random_index(ux, un));
      }
      case IndexExpr::Kind::Binary: {
        const std::int64_t a = eval_index(*e.lhs, at);
        const std::int64_t b = eval_index(*e.rhs, at);
        switch (e.op) {
          case '+': return a + b;
          case '-': return a - b;
          case '*': return a * b;
          case '%':
            if (b == 0) error(at, ErrorCode::InvalidKernel, "modulo by zero in index expression");
            return a % b;
        }
      }
    }
    error(at, ErrorCode::InvalidKernel, "malformed index expression");
  }

  ArrayId array(const std::string& name, const Statement& at) const {
    auto it = arrays_.find(name);
    if (it == arrays_.end()) error(at, ErrorCode::InvalidKernel, "unknown array '" + name + "'");
    return it->second;
  }

  std::size_t element(const IndexExpr& e, const std::string& name, const Statement& at) const {
    const std::int64_t index = eval_index(e, at);
    if (index < 0) {
      error(at, ErrorCode::OutOfBounds, "negative index " + std::to_string(index) + " into '" + name + "'");
    }
    return static_cast<std::size_t>(index);
  }

  Value eval_value(const ValueExpr& e, const Statement& at) {
    switch (e.kind) {
      case ValueExpr::Kind::Number:
        return Value::constant(e.number);
      case ValueExpr::Kind::Local: {
        if (auto it = locals_.find(e.name); it != locals_.end()) return it->second;
        if (auto it = loop_vars_.find(e.name); it != loop_vars_.end()) {
          return Value::constant(static_cast<double>(it->second));
        }
        error(at, ErrorCode::InvalidKernel, "variable '" + e.name + "' used before assignment");
      }
      case ValueExpr::Kind::Element:
        return builder_.load(array(e.name, at), element(*e.index, e.name, at));
      case ValueExpr::Kind::Binary: {
        Value lhs = eval_value(*e.lhs, at);
        Value rhs = eval_value(*e.rhs, at);
        return builder_.apply(e.op, lhs, rhs);
      }
      case ValueExpr::Kind::Negate:
        return builder_.apply(Opcode::Neg, eval_value(*e.lhs, at));
    }
    error(at, ErrorCode::InvalidKernel, "malformed value expression");
  }

  void execute(const Statement& stmt) {
    if (stmt.kind == Statement::Kind::Loop) {
      if (loop_vars_.count(stmt.variable) || stmt.variable == "size") {
        error(stmt, ErrorCode::InvalidKernel, "loop variable '" + stmt.variable + "' shadows a name in scope");
      }
      const std::int64_t from = stmt.from ? eval_index(*stmt.from, stmt) : 0;
      const std::int64_t to = stmt.to ? eval_index(*stmt.to, stmt) : static_cast<std::int64_t>(kernel_.size);
      for (std::int64_t i = from; i < to; ++i) {
        loop_vars_[stmt.variable] = i;
        for (const StatementPtr& inner : stmt.body) execute(*inner);
      }
      loop_vars_.erase(stmt.variable);
      return;
    }
    Value value = eval_value(*stmt.value, stmt);
    if (stmt.target_index) {
      const ArrayId id = array(stmt.target, stmt);
      const std::size_t index = element(*stmt.target_index, stmt.target, stmt);
      if (stmt.compound) value = builder_.apply(*stmt.compound, builder_.load(id, index), value);
      builder_.store(id, index, value);
      return;
    }
    if (arrays_.count(stmt.target)) {
      error(stmt, ErrorCode::InvalidKernel, "array '" + stmt.target + "' assigned without an index");
    }
    if (stmt.compound) {
      auto it = locals_.find(stmt.target);
      if (it == locals_.end()) {
        error(stmt, ErrorCode::InvalidKernel, "variable '" + stmt.target + "' used before assignment");
      }
      value = builder_.apply(*stmt.compound, it->second, value);
    }
    locals_.insert_or_assign(stmt.target, value);
  }

  const KernelDescription& kernel_;
  KernelBuilder builder_;
  std::map<std::string, ArrayId> arrays_;
  std::map<std::string, Value> locals_;
  std::map<std::string, std::int64_t> loop_vars_;
};

}  // namespace

KernelDescription parse_kernel_description(std::string_view text) {
  return Parser(tokenize(text)).parse();
}

ScalarGraph build_graph(const KernelDescription& kernel) {
  if (kernel.size == 0) fail(ErrorCode::InvalidKernel, "kernel size must be a positive static integer");
  return Unroller(kernel).run();
}

}  // namespace vecgraph
