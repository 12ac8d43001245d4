// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/emit.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "vecgraph/error.hpp"

namespace vecgraph {

std::string_view to_string(Target target) noexcept {
  return target == Target::Avx512 ? "avx512" : "generic";
}

std::optional<Target> parse_target(std::string_view name) noexcept {
  if (name == "avx512") return Target::Avx512;
  if (name == "generic") return Target::Generic;
  return std::nullopt;
}

Target default_target(std::size_t vec_size) noexcept { return vec_size == 8 ? Target::Avx512 : Target::Generic; }

std::string emitted_file_name(std::string_view kernel, std::size_t vec_size) {
  return c_identifier(kernel) + "_" + std::to_string(vec_size) + ".c";
}

std::string c_identifier(std::string_view name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out.insert(out.begin(), 'k');
  return out;
}

namespace {

std::string c_double(double v) {
  if (std::isnan(v)) return "__builtin_nan(\"\")";
  if (std::isinf(v)) return v > 0 ? "__builtin_inf()" : "(-__builtin_inf())";
  std::string s = format_double(v);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string hex(std::uint64_t v) {
  std::ostringstream out;
  out << "0x" << std::hex << v;
  return out.str();
}

std::string int_list(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

// _mm512_set_epi64 takes the highest lane first; undefined lanes read lane 0.
std::string avx_index(const std::vector<int>& pattern) {
  std::string out = "_mm512_set_epi64(";
  for (std::size_t i = pattern.size(); i-- > 0;) {
    out += std::to_string(pattern[i] < 0 ? 0 : pattern[i]);
    if (i) out += ",";
  }
  return out + ")";
}

std::uint64_t defined_lanes(const std::vector<int>& pattern) {
  std::uint64_t mask = 0;
  for (std::size_t l = 0; l < pattern.size(); ++l) {
    if (pattern[l] >= 0) mask |= std::uint64_t{1} << l;
  }
  return mask;
}

const char* generic_prelude() {
  return R"(typedef struct { double v[VG_VEC]; } vg_vec;

static inline vg_vec vg_load(const double* p, int count) {
  vg_vec r;
  for (int l = 0; l < VG_VEC; ++l) r.v[l] = count == 1 ? p[0] : (l < count ? p[l] : 0.0);
  return r;
}
static inline void vg_store(double* p, vg_vec x, unsigned long long mask) {
  for (int l = 0; l < VG_VEC; ++l) if ((mask >> l) & 1u) p[l] = x.v[l];
}
static inline vg_vec vg_set1(double c) {
  vg_vec r;
  for (int l = 0; l < VG_VEC; ++l) r.v[l] = c;
  return r;
}
#define VG_BINARY(name, op) \
  static inline vg_vec name(vg_vec a, vg_vec b) { \
    vg_vec r; \
    for (int l = 0; l < VG_VEC; ++l) r.v[l] = a.v[l] op b.v[l]; \
    return r; \
  }
VG_BINARY(vg_add, +)
VG_BINARY(vg_sub, -)
VG_BINARY(vg_mul, *)
VG_BINARY(vg_div, /)
static inline vg_vec vg_neg(vg_vec a) {
  vg_vec r;
  for (int l = 0; l < VG_VEC; ++l) r.v[l] = -a.v[l];
  return r;
}
static inline vg_vec vg_permute(vg_vec a, const int* idx) {
  vg_vec r;
  for (int l = 0; l < VG_VEC; ++l) r.v[l] = idx[l] < 0 ? 0.0 : a.v[idx[l]];
  return r;
}
static inline vg_vec vg_merge(vg_vec a, vg_vec b, const int* idx) {
  vg_vec r;
  for (int l = 0; l < VG_VEC; ++l) r.v[l] = idx[l] < 0 ? 0.0 : (idx[l] < VG_VEC ? a.v[idx[l]] : b.v[idx[l] - VG_VEC]);
  return r;
}
static inline double vg_reduce_add(vg_vec a, const int* lanes, int n) {
  double acc = a.v[lanes[0]];
  for (int k = 1; k < n; ++k) acc += a.v[lanes[k]];
  return acc;
}
static inline double vg_reduce_mul(vg_vec a, const int* lanes, int n) {
  double acc = a.v[lanes[0]];
  for (int k = 1; k < n; ++k) acc *= a.v[lanes[k]];
  return acc;
}
)";
}

std::string generic_statement(const VectorGraph& g, const VectorNode& n) {
  const std::string array =
      n.kind == VectorKind::Load || n.kind == VectorKind::Store ? c_identifier(g.arrays()[n.array].name) : "";
  auto in = [&](std::size_t k) { return "v" + std::to_string(n.inputs[k]); };
  const std::string lhs = "  vg_vec v" + std::to_string(n.id) + " = ";
  switch (n.kind) {
    case VectorKind::Load:
      return lhs + "vg_load(&" + array + "[" + std::to_string(n.start) + "], " + std::to_string(n.count) + ");";
    case VectorKind::Store:
      return "  vg_store(&" + array + "[" + std::to_string(n.start) + "], " + in(0) + ", " + hex(n.lane_mask) + "ull);";
    case VectorKind::Op:
      if (n.inputs.size() == 1) return lhs + "vg_" + std::string(to_string(n.opcode)) + "(" + in(0) + ");";
      return lhs + "vg_" + std::string(to_string(n.opcode)) + "(" + in(0) + ", " + in(1) + ");";
    case VectorKind::Broadcast:
      return lhs + "vg_set1(" + c_double(n.constant) + ");";
    case VectorKind::Permute:
    case VectorKind::Extract:
      return lhs + "vg_permute(" + in(0) + ", (const int[]){" + int_list(n.pattern) + "});";
    case VectorKind::Merge:
      return lhs + "vg_merge(" + in(0) + ", " + in(1) + ", (const int[]){" + int_list(n.pattern) + "});";
    case VectorKind::Reduce:
      return lhs + "vg_set1(vg_reduce_" + std::string(to_string(n.opcode)) + "(" + in(0) + ", (const int[]){" +
             int_list(n.pattern) + "}, " + std::to_string(n.pattern.size()) + "));";
  }
  return {};
}

std::string avx_statement(const VectorGraph& g, const VectorNode& n) {
  const std::string array =
      n.kind == VectorKind::Load || n.kind == VectorKind::Store ? c_identifier(g.arrays()[n.array].name) : "";
  auto in = [&](std::size_t k) { return "v" + std::to_string(n.inputs[k]); };
  const std::string address = "&" + array + "[" + std::to_string(n.start) + "]";
  const std::string lhs = "  __m512d v" + std::to_string(n.id) + " = ";
  switch (n.kind) {
    case VectorKind::Load:
      if (n.count == 1) return lhs + "_mm512_set1_pd(" + array + "[" + std::to_string(n.start) + "]);";
      if (n.count == 8) return lhs + "_mm512_loadu_pd(" + address + ");";
      return lhs + "_mm512_maskz_loadu_pd((__mmask8)" + hex((1u << n.count) - 1) + ", " + address + ");";
    case VectorKind::Store:
      if (n.count == 8 && n.lane_mask == 0xff) return "  _mm512_storeu_pd(" + address + ", " + in(0) + ");";
      return "  _mm512_mask_storeu_pd(" + address + ", (__mmask8)" + hex(n.lane_mask) + ", " + in(0) + ");";
    case VectorKind::Op:
      if (n.opcode == Opcode::Neg) return lhs + "_mm512_xor_pd(" + in(0) + ", _mm512_set1_pd(-0.0));";
      return lhs + "_mm512_" + std::string(to_string(n.opcode)) + "_pd(" + in(0) + ", " + in(1) + ");";
    case VectorKind::Broadcast:
      return lhs + "_mm512_set1_pd(" + c_double(n.constant) + ");";
    case VectorKind::Permute:
      return lhs + "_mm512_permutexvar_pd(" + avx_index(n.pattern) + ", " + in(0) + ");";
    case VectorKind::Extract:
      return lhs + "_mm512_maskz_permutexvar_pd((__mmask8)" + hex(defined_lanes(n.pattern)) + ", " +
             avx_index(n.pattern) + ", " + in(0) + ");";
    case VectorKind::Merge:
      return lhs + "_mm512_permutex2var_pd(" + in(0) + ", " + avx_index(n.pattern) + ", " + in(1) + ");";
    case VectorKind::Reduce: {
      std::uint64_t mask = 0;
      for (int l : n.pattern) mask |= std::uint64_t{1} << l;
      return lhs + "_mm512_set1_pd(_mm512_mask_reduce_" + std::string(to_string(n.opcode)) + "_pd((__mmask8)" +
             hex(mask) + ", " + in(0) + "));";
    }
  }
  return {};
}

}  // namespace

std::string emit_intrinsics(const VectorGraph& graph, std::span<const NodeId> order, std::string_view kernel,
                            Target target) {
  const std::size_t vec = graph.vec_size();
  if (target == Target::Avx512 && vec != 8) {
    fail(ErrorCode::Unsupported, "the avx512 target holds 8 doubles per vector, not " + std::to_string(vec));
  }
  if (!is_topological(graph, order)) fail(ErrorCode::Precondition, "emission order is not topological");
  const std::string function = c_identifier(kernel) + "_" + std::to_string(vec);
  std::ostringstream out;
  out << "/* " << function << ": " << graph.size() << " vector instructions, " << vec << " doubles per vector. */\n";
  if (target == Target::Avx512) {
    out << "#include <immintrin.h>\n\n";
  } else {
    out << "#ifndef VG_VEC\n#define VG_VEC " << vec << "\n#endif\n\n" << generic_prelude() << "\n";
  }
  out << "void " << function << "(";
  for (std::size_t a = 0; a < graph.arrays().size(); ++a) {
    const ArrayDecl& decl = graph.arrays()[a];
    out << (a ? ", " : "") << (decl.role == ArrayRole::Input ? "const double* " : "double* ") << c_identifier(decl.name);
  }
  if (graph.arrays().empty()) out << "void";
  out << ") {\n";
  for (NodeId id : order) {
    const VectorNode& n = graph.node(id);
    out << (target == Target::Avx512 ? avx_statement(graph, n) : generic_statement(graph, n)) << "\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace vecgraph
