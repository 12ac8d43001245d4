// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/corpus.hpp"

#include <algorithm>

#include <array>
#include <sstream>

#include "vecgraph/error.hpp"
#include "vecgraph/kernel_text.hpp"
#include "vecgraph/random.hpp"

namespace vecgraph::corpus {
namespace {

constexpr std::array kSignatures = {
    Signature::NN_N,  Signature::NN_1,  Signature::N1_N,  Signature::N1_1,  Signature::rNN_N,
    Signature::NN_rN, Signature::rNN_1, Signature::rN1_N, Signature::rN1_1, Signature::sNsN_N,
};

struct Shape {
  const char* src0;    // index expression of src0
  const char* src1;    // index expression of src1, or nullptr for a scalar input
  const char* dest;    // index expression of dest, or nullptr for a scalar output
  bool accumulate;     // dest[...] += instead of =
};

Shape shape(Signature signature) {
  switch (signature) {
    case Signature::NN_N: return {"i", "i", "i", false};
    case Signature::NN_1: return {"i", "i", nullptr, true};
    case Signature::N1_N: return {"i", nullptr, "i", false};
    case Signature::N1_1: return {"i", nullptr, nullptr, true};
    case Signature::rNN_N: return {"r(i)", "i", "i", false};
    case Signature::NN_rN: return {"i", "i", "r(i)", true};
    case Signature::rNN_1: return {"r(i)", "i", nullptr, true};
    case Signature::rN1_N: return {"r(i)", nullptr, "i", false};
    case Signature::rN1_1: return {"r(i)", nullptr, nullptr, true};
    case Signature::sNsN_N: return {"s(i)", "s(i)", "i", false};
  }
  fail(ErrorCode::InvalidKernel, "unknown kernel signature");
}

char op_symbol(Opcode op) {
  switch (op) {
    case Opcode::Add: return '+';
    case Opcode::Sub: return '-';
    case Opcode::Mul: return '*';
    case Opcode::Div: return '/';
    case Opcode::Neg: break;
  }
  fail(ErrorCode::InvalidKernel, "kernel op must be binary");
}

}  // namespace

std::size_t shift_index(std::size_t x, std::size_t n) {
  if (n == 0 || x >= n) fail(ErrorCode::OutOfBounds, "shift_index requires 0 <= x < n");
  return (x + 2) % n;
}

std::size_t random_index(std::size_t x, std::size_t n) {
  if (n == 0 || x >= n) fail(ErrorCode::OutOfBounds, "random_index requires 0 <= x < n");
  return (x ^ 0x55555555u) % n;
}

std::span<const Signature> all_signatures() noexcept { return kSignatures; }

std::string_view to_string(Signature signature) noexcept {
  switch (signature) {
    case Signature::NN_N: return "NN_N";
    case Signature::NN_1: return "NN_1";
    case Signature::N1_N: return "N1_N";
    case Signature::N1_1: return "N1_1";
    case Signature::rNN_N: return "rNN_N";
    case Signature::NN_rN: return "NN_rN";
    case Signature::rNN_1: return "rNN_1";
    case Signature::rN1_N: return "rN1_N";
    case Signature::rN1_1: return "rN1_1";
    case Signature::sNsN_N: return "sNsN_N";
  }
  return "?";
}

std::optional<Signature> parse_signature(std::string_view name) noexcept {
  for (Signature s : kSignatures) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string KernelSpec::display_name() const {
  if (!name.empty()) return name;
  return std::string(to_string(signature)) + "_" + std::string(vecgraph::to_string(op)) + "_" +
         std::to_string(size);
}

KernelSpec ka(std::size_t size) { return {"KA", Signature::sNsN_N, size, Opcode::Add}; }
KernelSpec kb(std::size_t size) { return {"KB", Signature::NN_1, size, Opcode::Add}; }

std::string kernel_description(const KernelSpec& spec) {
  const Shape s = shape(spec.signature);
  const char op = op_symbol(spec.op);
  std::ostringstream out;
  out << "kernel " << spec.display_name() << "\n";
  out << "size " << spec.size << "\n";
  out << "array src0 input size\n";
  out << "array src1 input " << (s.src1 ? "size" : "1") << "\n";
  if (!s.dest) {
    out << "array dest output 1\n";
  } else {
    out << "array dest " << (s.accumulate ? "inout" : "output") << " size\n";
  }
  const std::string rhs = std::string("src0[") + s.src0 + "] " + op + " src1[" + (s.src1 ? s.src1 : "0") + "]";
  if (!s.dest) {
    // Scalar results accumulate in a local, stored once at the end.
    out << "x = 0\n";
    out << "for i {\n  x += " << rhs << "\n}\n";
    out << "dest[0] = x\n";
  } else {
    out << "for i {\n  dest[" << s.dest << "] " << (s.accumulate ? "+=" : "=") << " " << rhs << "\n}\n";
  }
  return out.str();
}

ScalarGraph make_kernel(const KernelSpec& spec) {
  if (spec.size == 0) fail(ErrorCode::InvalidKernel, "kernel size must be positive");
  return build_graph(parse_kernel_description(kernel_description(spec)));
}

ScalarGraph make_predx(const PredXSpec& spec) {
  if (spec.max_predecessors == 0 || spec.size == 0) {
    fail(ErrorCode::InvalidKernel, "PredX needs X >= 1 and size >= 1");
  }
  if (spec.min_jump == 0 || spec.min_jump > spec.max_jump) {
    fail(ErrorCode::InvalidKernel, "PredX jump range must satisfy 1 <= min <= max");
  }
  Rng rng(spec.seed);
  std::vector<std::vector<std::size_t>> preds(spec.size);
  std::vector<bool> read(spec.size, false);
  for (std::size_t v = 0; v < spec.size; ++v) {
    const auto k = rng.uniform_int(1, spec.max_predecessors);
    std::int64_t p = static_cast<std::int64_t>(v);
    for (std::int64_t t = 0; t < k; ++t) {
      p -= static_cast<std::int64_t>(rng.uniform_int(spec.min_jump, spec.max_jump));
      if (p < 0) break;
      preds[v].push_back(static_cast<std::size_t>(p));
      read[static_cast<std::size_t>(p)] = true;
    }
    // Operands are summed in ascending variable order, as source text lists them.
    std::reverse(preds[v].begin(), preds[v].end());
  }
  std::size_t loads = 0, stores = 0;
  for (std::size_t v = 0; v < spec.size; ++v) {
    loads += preds[v].empty();
    stores += !read[v];
  }

  KernelBuilder builder;
  const ArrayId in = builder.declare_array("in", ArrayRole::Input, std::max<std::size_t>(loads, 1));
  const ArrayId out = builder.declare_array("out", ArrayRole::Output, std::max<std::size_t>(stores, 1));
  std::vector<Value> values;
  values.reserve(spec.size);
  std::size_t next_load = 0, next_store = 0;
  for (std::size_t v = 0; v < spec.size; ++v) {
    Value value = Value::constant(0.0);
    if (preds[v].empty()) {
      value = builder.load(in, next_load++);
    } else if (preds[v].size() == 1) {
      value = builder.apply(Opcode::Neg, values[preds[v][0]]);
    } else {
      value = values[preds[v][0]];
      for (std::size_t t = 1; t < preds[v].size(); ++t) {
        value = builder.apply(Opcode::Add, value, values[preds[v][t]]);
      }
    }
    values.push_back(value);
    if (!read[v]) builder.store(out, next_store++, value);
  }
  return builder.finish();
}

}  // namespace vecgraph::corpus
