// Copyright 2026 The fermiprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

#include "fermiprep/cli.hpp"

using namespace fermiprep;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fermiprep");
  std::ostringstream out, err;
  Run r;
  r.code = cli::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string without_timestamp(const std::string& s) {
  std::istringstream in(s);
  std::string line, kept;
  while (std::getline(in, line))
    if (line.find("\"generated_at\"") == std::string::npos) kept += line + "\n";
  return kept;
}

std::string shell(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
  status = pclose(p);
  return out;
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const std::string& value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    setenv(name, value.c_str(), 1);
  }
  ~ScopedEnv() {
    if (old_) setenv(name_, old_->c_str(), 1);
    else unsetenv(name_);
  }

 private:
  const char* name_;
  std::optional<std::string> old_;
};

std::filesystem::path temp_dir(const std::string& tag) {
  auto d = std::filesystem::temp_directory_path() / ("fermiprep_cli_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(cli, netgen_example) {
  const auto r = run({"netgen", "--family", "bitonic", "--wires", "8", "--verify"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.doc();
  EXPECT_EQ(j["comparators"], 24);
  EXPECT_EQ(j["depth"], 6);
  EXPECT_EQ(j["zero_one_verified"], true);
  EXPECT_EQ(j["reference"]["comparators"], 92);
  EXPECT_EQ(j["config"]["wires"], 8);
}

TEST(cli, antisym_example) {
  const auto r = run({"antisym", "--eta", "3", "--orbitals", "8", "--values", "0,2,7", "--network", "bitonic",
                      "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.doc();
  EXPECT_NEAR(j["success_probability"].get<double>(), 3360.0 / 4096.0, 1e-12);
  EXPECT_GE(j["fidelity_vs_oracle"].get<double>(), 1 - 1e-10);
  EXPECT_EQ(j["N"], 8);
  EXPECT_EQ(j["f"], 16);
  EXPECT_EQ(j["network_family"], "bitonic");
  for (const char* k : {"eta", "attempts", "resources", "config", "generated_at"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["config"]["seed"], 42);
  EXPECT_EQ(j["config"]["values"], json::array({0, 2, 7}));
}

TEST(cli, cost_model_example) {
  const auto r = run({"cost-model", "--fixture", "water-stretched"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.doc();
  EXPECT_NEAR(j["rejection"]["analytic_cost"].get<double>(), 735, 1);
  EXPECT_NEAR(j["naive"]["analytic_cost"].get<double>(), 5841, 1);
  for (const char* s : {"rejection", "naive"})
    for (const char* k : {"strategy", "mean_cost", "std_err", "analytic_cost", "attempts_histogram"})
      EXPECT_TRUE(j[s].contains(k)) << s << "." << k;
  EXPECT_EQ(j["config"]["seed"], 0);
}

TEST(cli, other_subcommands) {
  auto r = run({"shuffle", "--eta", "2", "--orbitals", "4", "--values", "1,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GE(r.doc()["fidelity_vs_oracle"].get<double>(), 1 - 1e-10);

  r = run({"compare", "--width", "3", "--a", "6", "--b", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["evaluation"]["record"], 1);
  EXPECT_EQ(r.doc()["evaluation"]["a_out"], 1);
  EXPECT_EQ(r.doc()["evaluation"]["b_out"], 6);

  r = run({"qubitize", "--terms", "0.5:X,0.5:Z"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(r.doc()["max_abs_error"].get<double>(), 1e-9);

  r = run({"phase-estimate", "--terms", "0.5:X,0.5:Z", "--state", "0,1", "--e0-bound", "0", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.doc()["energy"].get<double>(), -1 / std::sqrt(2.0), 2 * std::numbers::pi / 1024);
}

TEST(cli, exit_codes) {
  auto r = run({"antisym", "--eta", "3", "--orbitals", "8", "--values", "2,0,7"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.doc()["error"]["invariant"], "target_strictly_ascending");
  EXPECT_NE(r.err.find("target_strictly_ascending"), std::string::npos);

  EXPECT_EQ(run({"antisym", "--eta", "3", "--orbitals", "8", "--bogus"}).code, 2);
  EXPECT_EQ(run({"netgen"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"netgen", "--family", "heap", "--wires", "8"}).code, 2);
  EXPECT_EQ(run({"cost-model", "--fixture", "water-bent"}).code, 2);

  r = run({"antisym", "--eta", "4", "--orbitals", "64", "--seed", "1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.doc()["error"]["kind"], "capacity");
}

TEST(cli, reproducible_output) {
  const std::vector<std::string> args{"antisym", "--eta", "2", "--orbitals", "4", "--values", "0,3", "--seed", "9"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(without_timestamp(a.out), without_timestamp(b.out));
  const std::vector<std::string> cm{"cost-model", "--fixture", "water-stretched", "--trials", "500", "--seed", "4"};
  EXPECT_EQ(without_timestamp(run(cm).out), without_timestamp(run(cm).out));
}

TEST(cli, floats_use_17_digits) {
  EXPECT_EQ(cli::dump(cli::Json(0.1)), "0.10000000000000001\n");
  EXPECT_EQ(cli::dump(cli::Json::array({1.5, 2})), "[1.5, 2]\n");
  const auto j = json::parse(cli::dump(cli::Json{{"x", 1.0 / 3.0}}));
  EXPECT_EQ(j["x"].get<double>(), 1.0 / 3.0);
}

TEST(cli, output_directory_from_environment) {
  const auto dir = temp_dir("out");
  ScopedEnv env("FERMIPREP_OUTPUT_DIR", dir.string());
  const auto r = run({"netgen", "--wires", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(dir / "netgen.json");
  ASSERT_TRUE(f.good());
  EXPECT_EQ(json::parse(f)["comparators"], 6);
  std::filesystem::remove_all(dir);
}

TEST(cli, fixture_from_data_directory) {
  const auto dir = temp_dir("data");
  std::filesystem::create_directories(dir / "fixtures");
  std::ofstream(dir / "fixtures" / "toy.json") << R"({"name": "toy", "energies": [-1.0, 0.0], "overlaps": [0.5, 0.5],
    "params": {"alpha0": 0.5, "e0": -1.0, "e_star": 0.0, "e0_bound": -0.5, "epsilon_f": 0.01}})";
  ScopedEnv env("FERMIPREP_DATA_DIR", dir.string());
  const auto r = run({"cost-model", "--fixture", "toy", "--trials", "2000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.doc();
  EXPECT_EQ(j["fixture"], "toy");
  EXPECT_NEAR(j["rejection"]["analytic_cost"].get<double>(), 1 / (0.5 * 0.5) + 100, 1e-9);
  EXPECT_EQ(j["amplitude_amplified_cost"], nullptr);
  std::filesystem::remove_all(dir);
}

TEST(cli, binary_round_trip) {
  int status = 0;
  const std::string bin = FERMIPREP_CLI_PATH;
  const auto a = shell(bin + " netgen --family odd-even-mergesort --wires 8 --verify", status);
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_EQ(json::parse(a)["comparators"], 19);
  const auto b = shell(bin + " netgen --family odd-even-mergesort --wires 8 --verify", status);
  EXPECT_EQ(without_timestamp(a), without_timestamp(b));
  shell(bin + " antisym --eta 3 --orbitals 8 --values 7,2,0 2>/dev/null", status);
  EXPECT_EQ(WEXITSTATUS(status), 2);
  shell(bin + " antisym --eta 4 --orbitals 64 2>/dev/null", status);
  EXPECT_EQ(WEXITSTATUS(status), 3);
}
