// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "vecgraph/corpus.hpp"
#include "vecgraph/dot.hpp"
#include "vecgraph/error.hpp"
#include "vecgraph/kernel_text.hpp"
#include "vecgraph/schedule.hpp"
#include "vecgraph/search.hpp"

namespace vecgraph::cli {

std::optional<Emit> parse_emit(std::string_view name) noexcept {
  if (name == "vector-ir") return Emit::VectorIr;
  if (name == "intrinsics") return Emit::Intrinsics;
  if (name == "dot") return Emit::Dot;
  if (name == "stats") return Emit::Stats;
  return std::nullopt;
}

namespace {

using Json = nlohmann::ordered_json;

struct Source {
  std::string name;
  ScalarGraph graph;
  bool vectorize = true;  // false: PredX graphs are scheduled as they are
};

Source load_source(const RunConfig& config) {
  if (config.predx) {
    corpus::PredXSpec spec;
    spec.max_predecessors = *config.predx;
    spec.size = config.size.value_or(100);
    spec.seed = config.seed;
    return {"pred" + std::to_string(spec.max_predecessors) + "_" + std::to_string(spec.size) + "_s" +
                std::to_string(spec.seed),
            corpus::make_predx(spec), false};
  }
  if (config.kernel_file) {
    std::ifstream in(*config.kernel_file);
    if (!in) fail(ErrorCode::Parse, "cannot read " + config.kernel_file->string());
    std::stringstream text;
    text << in.rdbuf();
    KernelDescription desc = parse_kernel_description(text.str());
    if (config.size) desc.size = *config.size;
    return {desc.name, build_graph(desc), true};
  }
  corpus::KernelSpec spec;
  if (*config.kernel == "KA" || *config.kernel == "KB") {
    spec = *config.kernel == "KA" ? corpus::ka(config.size.value_or(6)) : corpus::kb(config.size.value_or(6));
  } else {
    const auto signature = corpus::parse_signature(*config.kernel);
    if (!signature) fail(ErrorCode::Parse, "unknown kernel '" + *config.kernel + "'");
    spec.signature = *signature;
    spec.size = config.size.value_or(8);
    spec.op = config.op;
  }
  return {spec.display_name(), corpus::make_kernel(spec), true};
}

Json census_json(const Census& c) {
  return Json{{"loads", c.loads},
              {"stores", c.stores},
              {"operations", c.operations},
              {"data_moves", c.data_moves},
              {"total", c.total()}};
}

Json config_json(const PipelineConfig& c) {
  return Json{{"reduction", c.use_reduction}, {"choice", c.load_store_choice}, {"split", to_string(c.strategy)}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Precondition, "cannot write " + path.string());
  out << text;
}

std::string scores_csv(const VectorizeTrace& trace) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const GroupTrace& g : trace.groups) {
    out << "# group " << g.group << "\n";
    out << "member";
    for (NodeId m : g.members) out << "," << m;
    out << "\n";
    // Groups that fit one vector, or split by identity, carry no matrix.
    for (std::size_t i = 0; i < g.scores.size(); ++i) {
      out << g.members[i];
      for (std::size_t j = 0; j < g.scores.size(); ++j) out << "," << g.scores(i, j);
      out << "\n";
    }
    out << "# subgroups";
    for (const auto& sub : g.subgroups) {
      out << " [";
      for (std::size_t k = 0; k < sub.size(); ++k) out << (k ? " " : "") << g.members[sub[k]];
      out << "]";
    }
    out << "\n";
  }
  return out.str();
}

void print_table(std::ostream& out, const std::string& name, std::size_t vec, const std::string& config,
                 const Census& census, std::size_t id_accesses, std::size_t scheduled_accesses,
                 std::size_t registers) {
  auto row = [&](const std::string& label, const std::string& value) {
    out << std::left << std::setw(22) << label << value << "\n";
  };
  row("kernel", name);
  row("vec_size", std::to_string(vec));
  row("config", config);
  row("loads", std::to_string(census.loads));
  row("stores", std::to_string(census.stores));
  row("operations", std::to_string(census.operations));
  row("data transformations", std::to_string(census.data_moves));
  row("total", std::to_string(census.total()));
  row("stack accesses", "id-order " + std::to_string(id_accesses) + ", reordered " +
                            std::to_string(scheduled_accesses) + " (K=" + std::to_string(registers) + ")");
}

int run_checked(const RunConfig& config, std::ostream& out) {
  const Source source = load_source(config);
  const std::string stem = c_identifier(source.name) + "_" + std::to_string(config.vec_size);
  const std::filesystem::path dir = config.out_dir;
  auto wants = [&](Emit e) { return std::find(config.emit.begin(), config.emit.end(), e) != config.emit.end(); };
  const bool write_any = wants(Emit::VectorIr) || wants(Emit::Intrinsics) || wants(Emit::Dot) ||
                         wants(Emit::Stats) || config.dump_graphs || config.dump_scores;
  if (write_any) std::filesystem::create_directories(dir);

  std::optional<SearchResult> searched;
  VectorGraph graph;
  if (source.vectorize) {
    SearchLimits limits;
    limits.c_max = config.c_max;
    limits.reduction = config.reduction;
    limits.choice = config.choice;
    limits.strategy = config.split;
    limits.oracle_seed = config.seed;
    searched = prospect(source.graph, config.vec_size, limits);
    graph = searched->graph;
  } else {
    graph = lift_scalar_graph(source.graph, config.vec_size);
  }

  const std::vector<NodeId> order = schedule(graph);
  const std::vector<NodeId> by_id = id_order(graph);
  // The scheduled order must compute what the scalar kernel computes.
  if (source.vectorize) {
    const MemoryImage input = MemoryImage::random(graph.arrays(), config.seed ^ 0x9e3779b97f4a7c15ull);
    const MemoryImage expect = interpret_scalar(searched->scalar, input);
    const MemoryImage got = interpret_vector(graph, input, order);
    const bool ok = searched->config.use_reduction ? max_relative_difference(expect, got) <= 1e-10
                                                   : bit_identical(expect, got);
    if (!ok) fail(ErrorCode::OracleMismatch, "scheduled winner differs from the scalar kernel");
  }
  const std::size_t id_accesses = simulate_stack_accesses(graph, by_id, config.registers);
  const std::size_t scheduled_accesses = simulate_stack_accesses(graph, order, config.registers);

  if (wants(Emit::VectorIr)) write_file(dir / (stem + ".vir"), to_text(graph));
  if (wants(Emit::Intrinsics)) {
    const Target target = config.target.value_or(default_target(config.vec_size));
    write_file(dir / emitted_file_name(source.name, config.vec_size),
               emit_intrinsics(graph, order, source.name, target));
  }
  if (wants(Emit::Dot) || config.dump_graphs) {
    const ScalarGraph& scalar = searched ? searched->scalar : source.graph;
    write_file(dir / (stem + ".scalar.dot"), to_dot(scalar));
    write_file(dir / (stem + ".groups.dot"), to_dot(searched ? searched->groups : build_group_graph(scalar)));
    write_file(dir / (stem + ".vector.dot"), to_dot(graph));
    write_file(dir / (stem + ".schedule.dot"), schedule_to_dot(graph, order));
  }
  if (config.dump_graphs) write_file(dir / (stem + ".input.dot"), to_dot(source.graph));
  if (config.dump_scores && searched) write_file(dir / (stem + ".scores.csv"), scores_csv(searched->trace));

  const Census census = count_nodes(graph);
  if (wants(Emit::Stats)) {
    Json stats;
    stats["kernel"] = source.name;
    stats["vec_size"] = config.vec_size;
    stats["scalar_nodes"] = source.graph.size();
    if (searched) {
      stats["winner"] = config_json(searched->config);
      stats["choices_available"] = searched->report.choices_available;
    }
    stats["census"] = census_json(census);
    stats["stack"] = Json{{"registers", config.registers},
                          {"id_order", id_accesses},
                          {"reordered", scheduled_accesses}};
    Json configs = Json::array();
    if (searched) {
      for (const ConfigResult& r : searched->report.configs) {
        Json entry = config_json(r.config);
        entry["valid"] = r.valid;
        if (r.valid) {
          entry["census"] = census_json(r.census);
        } else {
          entry["diagnostic"] = r.diagnostic;
        }
        configs.push_back(std::move(entry));
      }
    }
    stats["configs"] = std::move(configs);
    write_file(dir / (stem + ".stats.json"), stats.dump(2) + "\n");
    print_table(out, source.name, config.vec_size, searched ? describe(searched->config) : "scheduled as generated",
                census, id_accesses, scheduled_accesses, config.registers);
  }
  return kOk;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidKernel:
    case ErrorCode::OutOfBounds: return kUsage;
    case ErrorCode::Unsupported: return kUnsupportedVecSize;
    case ErrorCode::OracleMismatch: return kOracleMismatch;
    default: return kFailure;
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const int sources = (config.kernel ? 1 : 0) + (config.kernel_file ? 1 : 0) + (config.predx ? 1 : 0);
  if (sources != 1) {
    err << "error: give exactly one of --kernel, --kernel-file, --predx\n";
    return kUsage;
  }
  if (config.emit.empty()) {
    err << "error: --emit needs at least one of vector-ir, intrinsics, dot, stats\n";
    return kUsage;
  }
  const std::size_t v = config.vec_size;
  if (v != 2 && v != 4 && v != 8 && v != 16) {
    err << "error: unsupported vec_size " << v << " (expected 2, 4, 8 or 16)\n";
    return kUnsupportedVecSize;
  }
  try {
    return run_checked(config, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vectorizes static scalar kernels by graph transformation."};
  app.require_subcommand(1);
  CLI::App* cmd = app.add_subcommand("run", "Run the pipeline on one kernel");

  RunConfig config;
  std::string op = "add", out_dir, target, split, reduction;
  std::vector<std::string> emit;
  cmd->add_option("--kernel", config.kernel, "Signature (NN_N, NN_1, ..., sNsN_N), KA or KB");
  cmd->add_option("--kernel-file", config.kernel_file, "Kernel description file");
  cmd->add_option("--predx", config.predx, "Random graph with up to X predecessors per variable")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--size", config.size, "Kernel size N (PredX: variable count)")->check(CLI::PositiveNumber);
  cmd->add_option("--op", op, "add or mul")->check(CLI::IsMember({"add", "mul"}));
  cmd->add_option("--seed", config.seed, "Seed for PredX and oracle inputs");
  cmd->add_option("--vec-size", config.vec_size, "Doubles per vector: 2, 4, 8 or 16");
  cmd->add_option("--emit", emit, "vector-ir, intrinsics, dot, stats")
      ->delimiter(',')
      ->check(CLI::IsMember({"vector-ir", "intrinsics", "dot", "stats"}))
      ->required();
  cmd->add_option("--reduction", reduction, "Pin reduction rewriting: on or off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--split", split, "Pin the split strategy: identity, partitioning, clustering")
      ->check(CLI::IsMember({"identity", "partitioning", "clustering"}));
  cmd->add_option("--choice", config.choice, "Pin the load/store split choice index");
  cmd->add_option("--c-max", config.c_max, "Cap on load/store split choices")->check(CLI::PositiveNumber);
  cmd->add_option("--registers", config.registers, "Registers for the stack simulation");
  cmd->add_option("--target", target, "avx512 or generic (default: avx512 iff vec-size is 8)")
      ->check(CLI::IsMember({"avx512", "generic"}));
  cmd->add_option("--out-dir", out_dir, "Output directory")->envname("VECGRAPH_OUT_DIR");
  cmd->add_flag("--dump-graphs", config.dump_graphs, "Write DOT files for every pipeline stage");
  cmd->add_flag("--dump-scores", config.dump_scores, "Write the split score matrices as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help, error;
    const int status = app.exit(e, help, error);
    out << help.str();
    err << error.str();
    return status == 0 ? kOk : kUsage;
  }

  config.op = *parse_opcode(op);
  for (const std::string& e : emit) {
    const Emit kind = *parse_emit(e);
    if (std::find(config.emit.begin(), config.emit.end(), kind) == config.emit.end()) config.emit.push_back(kind);
  }
  if (!reduction.empty()) config.reduction = reduction == "on";
  if (!split.empty()) config.split = parse_split_strategy(split);
  if (!target.empty()) config.target = parse_target(target);
  if (!out_dir.empty()) config.out_dir = out_dir;
  return run(config, out, err);
}

}  // namespace vecgraph::cli
