// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vecgraph/corpus.hpp"
#include "vecgraph/scalar_ir.hpp"

namespace vgtest {

// Straight loops over the ten corpus signatures, written without the graph
// builder or the kernel text. Arrays are src0, src1, dest in that order.
inline vecgraph::MemoryImage reference_run(const vecgraph::corpus::KernelSpec& spec,
                                           const vecgraph::MemoryImage& in) {
  using vecgraph::corpus::Signature;
  vecgraph::MemoryImage out = in;
  const std::size_t n = spec.size;
  const auto& a = in.buffers[0];
  const auto& b = in.buffers[1];
  auto& dest = out.buffers[2];
  auto op = [&](double x, double y) { return spec.op == vecgraph::Opcode::Add ? x + y : x * y; };
  auto s = [&](std::size_t i) { return (i + 2) % n; };
  auto r = [&](std::size_t i) { return static_cast<std::size_t>((std::uint64_t{i} ^ 0x55555555u) % n); };
  double x = 0.0;
  switch (spec.signature) {
    case Signature::NN_N: for (std::size_t i = 0; i < n; ++i) dest[i] = op(a[i], b[i]); break;
    case Signature::NN_1: for (std::size_t i = 0; i < n; ++i) x += op(a[i], b[i]); dest[0] = x; break;
    case Signature::N1_N: for (std::size_t i = 0; i < n; ++i) dest[i] = op(a[i], b[0]); break;
    case Signature::N1_1: for (std::size_t i = 0; i < n; ++i) x += op(a[i], b[0]); dest[0] = x; break;
    case Signature::rNN_N: for (std::size_t i = 0; i < n; ++i) dest[i] = op(a[r(i)], b[i]); break;
    case Signature::NN_rN: for (std::size_t i = 0; i < n; ++i) dest[r(i)] += op(a[i], b[i]); break;
    case Signature::rNN_1: for (std::size_t i = 0; i < n; ++i) x += op(a[r(i)], b[i]); dest[0] = x; break;
    case Signature::rN1_N: for (std::size_t i = 0; i < n; ++i) dest[i] = op(a[r(i)], b[0]); break;
    case Signature::rN1_1: for (std::size_t i = 0; i < n; ++i) x += op(a[r(i)], b[0]); dest[0] = x; break;
    case Signature::sNsN_N: for (std::size_t i = 0; i < n; ++i) dest[i] = op(a[s(i)], b[s(i)]); break;
  }
  return out;
}

inline std::filesystem::path data_dir() { return VECGRAPH_TEST_DATA; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Golden comparison. With VECGRAPH_UPDATE_GOLDENS set, rewrites the file and
// reports a match.
inline bool matches_golden(const std::string& name, const std::string& actual) {
  const std::filesystem::path path = data_dir() / name;
  if (std::getenv("VECGRAPH_UPDATE_GOLDENS") != nullptr) {
    std::ofstream(path, std::ios::binary) << actual;
    return true;
  }
  return std::filesystem::exists(path) && read_file(path) == actual;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("vecgraph-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace vgtest
