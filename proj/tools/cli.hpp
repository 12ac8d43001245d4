// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vecgraph/emit.hpp"
#include "vecgraph/lowering.hpp"
#include "vecgraph/types.hpp"

namespace vecgraph::cli {

enum class Emit { VectorIr, Intrinsics, Dot, Stats };

std::optional<Emit> parse_emit(std::string_view name) noexcept;

/// Exactly one of `kernel`, `kernel_file` and `predx` selects the source.
struct RunConfig {
  std::optional<std::string> kernel;  // signature name, KA or KB
  std::optional<std::filesystem::path> kernel_file;
  std::optional<unsigned> predx;      // max predecessors
  std::optional<std::size_t> size;    // default: 6 for KA/KB, 8 for signatures, 100 for PredX
  Opcode op = Opcode::Add;
  std::uint64_t seed = 1;
  std::size_t vec_size = 8;
  std::vector<Emit> emit;
  std::optional<bool> reduction;
  std::optional<SplitStrategy> split;
  std::optional<std::size_t> choice;
  std::size_t c_max = 4096;
  std::size_t registers = 32;
  std::optional<Target> target;
  std::filesystem::path out_dir = ".";
  bool dump_graphs = false;
  bool dump_scores = false;
};

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kUnsupportedVecSize = 3,
  kOracleMismatch = 4,
};

/// Runs the pipeline and writes the requested artifacts under
/// config.out_dir. The census table goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (including the `run` subcommand) and calls run(). Without
/// --out-dir, the VECGRAPH_OUT_DIR environment variable names the output
/// directory.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vecgraph::cli
