// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace vecgraph;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "vecgraph");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  const auto dir = vgtest::scratch_dir("cli-codes");
  CHECK(invoke({"run", "--kernel", "KA", "--emit", "stats", "--out-dir", dir.string()}).code == cli::kOk);
  CHECK(invoke({"run", "--kernel", "KA", "--vec-size", "3", "--emit", "stats", "--out-dir", dir.string()}).code ==
        cli::kUnsupportedVecSize);
  CHECK(invoke({"run", "--kernel", "KA"}).code == cli::kUsage);  // --emit is required
  CHECK(invoke({"run", "--kernel", "NOPE", "--emit", "stats", "--out-dir", dir.string()}).code == cli::kUsage);
  CHECK(invoke({"run", "--kernel", "KA", "--emit", "pdf", "--out-dir", dir.string()}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({"run", "--kernel-file", (dir / "missing.k").string(), "--emit", "stats", "--out-dir", dir.string()})
            .code != cli::kOk);
}

TEST_CASE("malformed kernel files are usage errors") {
  const auto dir = vgtest::scratch_dir("cli-parse");
  std::ofstream(dir / "bad.k") << "size 4\narray a input size\narray o output 1\no[0] = a[0] $ 2\n";
  const Outcome r = invoke({"run", "--kernel-file", (dir / "bad.k").string(), "--emit", "stats", "--out-dir", dir.string()});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("line 4") != std::string::npos);
}

TEST_CASE("dot emission writes four graphs") {
  const auto dir = vgtest::scratch_dir("cli-dot");
  REQUIRE(invoke({"run", "--kernel", "KA", "--vec-size", "4", "--emit", "dot", "--out-dir", dir.string()}).code == 0);
  for (const char* f : {"KA_4.scalar.dot", "KA_4.groups.dot", "KA_4.vector.dot", "KA_4.schedule.dot"}) {
    CAPTURE(f);
    CHECK(std::filesystem::exists(dir / f));
  }
  CHECK(!std::filesystem::exists(dir / "KA_4.input.dot"));
}

TEST_CASE("kernel files run end to end") {
  const auto dir = vgtest::scratch_dir("cli-file");
  std::ofstream(dir / "dot.k") << "kernel dot_product\nsize 16\narray x input size\narray y input size\n"
                                  "array r output 1\nacc = 0\nfor i { acc += x[i] * y[i] }\nr[0] = acc\n";
  const Outcome r = invoke({"run", "--kernel-file", (dir / "dot.k").string(), "--vec-size", "4", "--emit",
                            "vector-ir,intrinsics,stats", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(dir / "dot_product_4.vir"));
  CHECK(std::filesystem::exists(dir / "dot_product_4.c"));
  CHECK(r.out.find("dot_product") != std::string::npos);
}

TEST_CASE("stats JSON") {
  const auto dir = vgtest::scratch_dir("cli-stats");
  REQUIRE(invoke({"run", "--kernel", "KB", "--vec-size", "4", "--emit", "stats", "--out-dir", dir.string()}).code == 0);
  const auto j = nlohmann::json::parse(vgtest::read_file(dir / "KB_4.stats.json"));
  for (const char* key : {"kernel", "vec_size", "scalar_nodes", "winner", "choices_available", "census", "stack", "configs"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  CHECK(j["kernel"] == "KB");
  CHECK(j["vec_size"] == 4);
  CHECK(j["winner"]["reduction"] == true);
  const auto& c = j["census"];
  CHECK(c["total"].get<int>() ==
        c["loads"].get<int>() + c["stores"].get<int>() + c["operations"].get<int>() + c["data_moves"].get<int>());
  CHECK(j["stack"]["registers"] == 32);
  CHECK(j["stack"]["reordered"].get<int>() <= j["stack"]["id_order"].get<int>());
  CHECK(!j["configs"].empty());
}

TEST_CASE("PredX runs report stack traffic") {
  const auto dir = vgtest::scratch_dir("cli-predx");
  const Outcome r = invoke({"run", "--predx", "10", "--size", "200", "--seed", "3", "--registers", "16", "--emit",
                            "stats", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("pred10_200_s3") != std::string::npos);
  CHECK(r.out.find("stack accesses        id-order") != std::string::npos);
  CHECK(r.out.find("(K=16)") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "pred10_200_s3_8.stats.json"));
}

TEST_CASE("the output directory comes from the flag, then the environment") {
  const auto env_dir = vgtest::scratch_dir("cli-env");
  const auto flag_dir = vgtest::scratch_dir("cli-flag");
  ::setenv("VECGRAPH_OUT_DIR", env_dir.string().c_str(), 1);
  REQUIRE(invoke({"run", "--kernel", "NN_N", "--vec-size", "4", "--emit", "vector-ir"}).code == 0);
  REQUIRE(invoke({"run", "--kernel", "N1_N", "--vec-size", "4", "--emit", "vector-ir", "--out-dir", flag_dir.string()})
              .code == 0);
  ::unsetenv("VECGRAPH_OUT_DIR");
  CHECK(std::filesystem::exists(env_dir / "NN_N_add_8_4.vir"));
  CHECK(std::filesystem::exists(flag_dir / "N1_N_add_8_4.vir"));
  CHECK(!std::filesystem::exists(env_dir / "N1_N_add_8_4.vir"));
}

TEST_CASE("dump flags") {
  const auto dir = vgtest::scratch_dir("cli-dump");
  REQUIRE(invoke({"run", "--kernel", "KA", "--vec-size", "4", "--split", "partitioning", "--emit", "dot",
                  "--dump-graphs", "--dump-scores", "--out-dir", dir.string()})
              .code == 0);
  CHECK(std::filesystem::exists(dir / "KA_4.input.dot"));
  const std::string scores = vgtest::read_file(dir / "KA_4.scores.csv");
  CHECK(!scores.empty());
}

}  // TEST_SUITE
