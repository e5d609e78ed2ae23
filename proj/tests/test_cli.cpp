// Copyright 2026 The samplerdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks of the CLI binary (path injected by the build).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "samplerdp_cli_test";
  fs::create_directories(dir);
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const std::string cmd = std::string(SAMPLERDP_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> /dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(raw);
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  result.stdout_text = ss.str();
  return result;
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text) lines += (c == '\n');
  return lines;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char kGaussian[] = "'{\"kind\":\"gaussian\",\"sigma\":5}'";

TEST_CASE("amplify emits one row per integer order and is deterministic") {
  const std::string args = std::string("amplify --mech ") + kGaussian +
                           " --gamma 0.001 --bounds general,lower"
                           " --alpha-min 2 --alpha-max 256";
  const RunResult first = run_cli(args);
  REQUIRE(first.exit_code == 0);
  // Header plus integer orders 2..256.
  CHECK(count_lines(first.stdout_text) == 256);
  CHECK(first.stdout_text.rfind("alpha,general,lower\n", 0) == 0);

  const RunResult second = run_cli(args);
  CHECK(second.stdout_text == first.stdout_text);
}

TEST_CASE("amplify covers fractional grids and asymptotic kinds") {
  const RunResult r = run_cli(
      std::string("amplify --mech ") + kGaussian +
      " --gamma 0.001 --bounds general,tight,lower,asymptotic_bad,asymptotic_good"
      " --alpha-min 2 --alpha-max 64 --alpha-points 20 --n 100000");
  REQUIRE(r.exit_code == 0);
  CHECK(count_lines(r.stdout_text) == 21);
}

TEST_CASE("malformed mechanism spec fails with exit 2 and no file") {
  const fs::path out = scratch_dir() / "never_written.csv";
  std::error_code ec;
  fs::remove(out, ec);
  const RunResult r = run_cli("amplify --mech '{broken' --gamma 0.001 -o " +
                              out.string());
  CHECK(r.exit_code == 2);
  CHECK_FALSE(fs::exists(out));

  CHECK(run_cli("amplify --gamma 0.001").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("convert answers eps and delta queries") {
  const RunResult r = run_cli(std::string("convert --mech ") + kGaussian +
                              " --delta 1e-8");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json out = nlohmann::json::parse(r.stdout_text);
  CHECK(out.at("eps").get<double>() == doctest::Approx(1.2339).epsilon(1e-3));
  CHECK(out.at("lambda_star").get<double>() ==
        doctest::Approx(30.35).epsilon(1e-2));
  CHECK(out.at("flags").empty());

  const RunResult back = run_cli(std::string("convert --mech ") + kGaussian +
                                 " --eps 1.2339417035081173");
  REQUIRE(back.exit_code == 0);
  const nlohmann::json round = nlohmann::json::parse(back.stdout_text);
  CHECK(round.at("delta").get<double>() == doctest::Approx(1e-8).epsilon(0.05));

  // Exactly one target must be set.
  CHECK(run_cli(std::string("convert --mech ") + kGaussian).exit_code == 2);
  CHECK(run_cli(std::string("convert --mech ") + kGaussian +
                " --delta 1e-8 --eps 1.0")
            .exit_code == 2);
}

TEST_CASE("convert consumes ledger files and flags degenerate input") {
  const fs::path ledger = scratch_dir() / "ledger.json";
  {
    std::ofstream out(ledger);
    out << "[{\"mechanism\":{\"kind\":\"subsample\",\"base\":{\"kind\":"
           "\"gaussian\",\"sigma\":5.0},\"gamma\":0.001,\"bound_kind\":"
           "\"general\",\"alpha_thresh\":256},\"count\":1000}]";
  }
  const RunResult r =
      run_cli("convert --ledger " + ledger.string() + " --delta 1e-8");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json out = nlohmann::json::parse(r.stdout_text);
  CHECK(out.at("eps").get<double>() > 0);

  const fs::path empty = scratch_dir() / "empty.json";
  {
    std::ofstream out_file(empty);
    out_file << "[]";
  }
  const RunResult degenerate =
      run_cli("convert --ledger " + empty.string() + " --delta 1e-8");
  REQUIRE(degenerate.exit_code == 0);
  const nlohmann::json flags =
      nlohmann::json::parse(degenerate.stdout_text).at("flags");
  REQUIRE(flags.size() == 1);
  CHECK(flags[0] == "infimum-limited");

  // A ledger file and an inline mechanism are mutually exclusive.
  CHECK(run_cli("convert --ledger " + ledger.string() + " --mech " +
                kGaussian + " --delta 1e-8")
            .exit_code == 2);
}

TEST_CASE("verify exits 0 on passing sweeps and 2 on unsupported kinds") {
  const RunResult ok = run_cli(std::string("verify --mech ") + kGaussian +
                               " --gamma 0.001 --alpha-min 2 --alpha-max 8");
  CHECK(ok.exit_code == 0);
  CHECK(ok.stdout_text.rfind("alpha,lower,oracle,upper_general,upper_tight,"
                             "asymptotic_bad,asymptotic_good,pass\n",
                             0) == 0);
  CHECK(count_lines(ok.stdout_text) == 8);

  // Low-privacy regime.
  const RunResult low =
      run_cli("verify --mech '{\"kind\":\"gaussian\",\"sigma\":0.5}' "
              "--gamma 0.001 --alpha-min 2 --alpha-max 8");
  CHECK(low.exit_code == 0);

  const RunResult unsupported =
      run_cli("verify --mech '{\"kind\":\"expfamily\",\"delta\":1.0}' "
              "--gamma 0.001 --alpha-min 2 --alpha-max 4");
  CHECK(unsupported.exit_code == 2);
}

TEST_CASE("compose sweeps the four methods") {
  const RunResult r = run_cli(std::string("compose --mech ") + kGaussian +
                              " --gamma 0.001 --delta 1e-8 --rounds-max 1000"
                              " --rounds-points 5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.rfind("k,eps_rdp_general,eps_rdp_lower,eps_naive,"
                            "eps_strong\n",
                            0) == 0);
  CHECK(count_lines(r.stdout_text) == 6);
  // First row is k = 1; every reported epsilon is positive.
  std::istringstream rows(r.stdout_text);
  std::string header, row1;
  std::getline(rows, header);
  std::getline(rows, row1);
  CHECK(row1.rfind("1,", 0) == 0);
}

TEST_CASE("mech emits the base curve") {
  const RunResult r = run_cli(std::string("mech --mech ") + kGaussian +
                              " --alpha-min 2 --alpha-max 5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text ==
        "alpha,epsilon\n2,0.04\n3,0.06\n4,0.08\n5,0.1\n");
}

TEST_CASE("config file overrides flags") {
  const fs::path cfg = scratch_dir() / "config.json";
  {
    std::ofstream out(cfg);
    out << "{\"alpha-max\": 4}";
  }
  const RunResult r = run_cli(std::string("mech --mech ") + kGaussian +
                              " --alpha-min 2 --alpha-max 100 --config " +
                              cfg.string());
  REQUIRE(r.exit_code == 0);
  CHECK(count_lines(r.stdout_text) == 4);  // header + alpha 2..4
}

TEST_CASE("json output format") {
  const RunResult r = run_cli(std::string("mech --mech ") + kGaussian +
                              " --alpha-min 2 --alpha-max 3 --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json rows = nlohmann::json::parse(r.stdout_text);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].at("alpha") == 2.0);
  CHECK(rows[0].at("epsilon") == 0.04);
}

TEST_CASE("output file is written once at the end") {
  const fs::path out = scratch_dir() / "curve.csv";
  const RunResult r = run_cli(std::string("mech --mech ") + kGaussian +
                              " --alpha-min 2 --alpha-max 4 -o " + out.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.empty());
  CHECK(read_file(out) == "alpha,epsilon\n2,0.04\n3,0.06\n4,0.08\n");
}

}  // namespace
