// Copyright 2026 The nlgames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlgames/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace nlgames::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(NLGAMES_DATA_DIR) + "/" + name; }

// Writes text to a scratch file that lives for the duration of the test.
class TempFile {
 public:
  explicit TempFile(const std::string& text) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("nlgames_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) +
              ".json"))
                .string();
    std::ofstream(path_) << text;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

TEST(Cli, VerifyChshJson) {
  const auto r = call({"verify", "chsh", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["norm"].get<double>(), 2 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(j["operator_norm"].get<double>(), 2.828427124746, 1e-9);
  EXPECT_EQ(j["top_multiplicity"], 1);
  EXPECT_TRUE(j["passed"].get<bool>());
  for (const auto& [name, c] : j["checks"].items()) EXPECT_TRUE(c["passed"].get<bool>()) << name;
}

TEST(Cli, VerifyMagicGames) {
  for (const char* name : {"magic-square", "pentagram"}) {
    const auto r = call({"verify", name, "--json"});
    ASSERT_EQ(r.code, 0) << name << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_DOUBLE_EQ(j["checks"]["winning_probability"]["value"].get<double>(), 1.0);
  }
}

TEST(Cli, ZeroBiasValue) {
  const auto r = call({"value", data("zero_bias.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const double cells = j["num_cells"].get<double>();
  const double wins = j["win_count"].get<double>();
  EXPECT_EQ(j["classical_bias"].get<double>(), 0.0);
  EXPECT_NEAR(j["omega_classical"].get<double>(), wins / (2 * cells), 1e-12);
  EXPECT_NEAR(j["omega_quantum_lower"].get<double>(), wins / (2 * cells), 1e-12);
}

TEST(Cli, OracleClassicalChsh) {
  const auto r = call({"oracle", "classical", data("chsh.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["classical_bias"].get<double>(), 2.0);
  EXPECT_EQ(j["omega_classical"].get<double>(), 0.75);
  // General encoding of the same game agrees.
  const auto g = call({"oracle", "classical", data("chsh_general.json"), "--json"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(nlohmann::json::parse(g.out)["omega_classical"].get<double>(), 0.75);
}

TEST(Cli, BiasReport) {
  const auto r = call({"bias", data("chsh.json"), "--json", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["classical_bias"].get<double>(), 2.0);
  EXPECT_NEAR(j["quantum_bias"].get<double>(), 2 * std::sqrt(2.0), 1e-9);
  EXPECT_EQ(j["restarts"], 20);
  EXPECT_EQ(j["seed"], 7);
  EXPECT_TRUE(j["converged"].get<bool>());
}

TEST(Cli, GnsSummary) {
  const auto r = call({"gns", data("bell_state.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["hilbert_dim"], 4);
  EXPECT_EQ(j["quotient_dim"], 16);
  EXPECT_LE(j["reproduction_residual"].get<double>(), 1e-9);
}

TEST(Cli, TableChsh) {
  const auto r = call({"table", "chsh", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["correlation_table"][3][3].get<double>(), -1.0);
  EXPECT_EQ(j["probability_table"].size(), 4u);
}

TEST(Cli, ByteIdenticalJsonForSameSeed) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"bias", data("triangle_coloring.json"), "--json", "--seed", "42"},
           {"value", data("chsh_general.json"), "--json", "--seed", "42"},
           {"verify", "chsh", "--json"},
           {"gns", data("trace_m2.json"), "--json"}}) {
    const auto a = call(args), b = call(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << args[0];
  }
}

TEST(Cli, HumanReadableByDefault) {
  const auto r = call({"oracle", "classical", data("chsh.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classical_bias: 2"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodesForBadInput) {
  const TempFile bad_syntax("{\"type\": \"xor\", \"beta\": [[1,");
  const TempFile bad_schema("{\"type\": \"xor\", \"beta\": [[1, 1], [1]]}");
  const TempFile unknown_field("{\"type\": \"xor\", \"beta\": [[1]], \"extra\": 1}");
  const TempFile non_binary(
"{\"type\": \"general\", \"answers\": 3, \"win\": [[0, 0, 2, 1]]}");
  const TempFile not_a_state("{\"dim\": 2, \"density\": [[1,0],[0,0],[0,0],[1,0]]}");
  const TempFile negative_state("{\"dim\": 2, \"density\": [[2,0],[0,0],[0,0],[-1,0]]}");
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"value", bad_syntax.path()},
           {"bias", bad_schema.path()},
           {"bias", unknown_field.path()},
           {"bias", non_binary.path()},
           {"gns", not_a_state.path()},
           {"gns", negative_state.path()},
           {"value", data("magic_square.json")},
           {"value", "/nonexistent/game.json"},
           {"verify", "unknown-game"},
           {"table", "triangle"},
           {"oracle", "quantum", data("chsh.json")},
           {"frobnicate"},
           {},
           {"bias", data("chsh.json"), "--restarts", "0"},
           {"bias", data("chsh.json"), "--seed", "minus"}}) {
    const auto r = call(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.code, 2) << joined << "\n" << r.err;
    EXPECT_FALSE(r.err.empty()) << joined;
  }
}

TEST(Cli, HelpExitsZero) {
  const auto r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, FailedCheckExitsOne) {
  // A tolerance below the achievable accuracy makes the table checks fail.
  const auto r = call({"verify", "chsh", "--tolerance", "1e-300", "--json"});
  EXPECT_EQ(r.code, 1) << r.err;
  EXPECT_FALSE(nlohmann::json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, NumericalFailureMapsToThree) {
  EXPECT_EQ(exit_code_for(ErrorCode::kNumericalFailure), 3);
  EXPECT_EQ(exit_code_for(ErrorCode::kSyntaxError), 2);
  EXPECT_EQ(exit_code_for(ErrorCode::kNotAState), 2);
}

}  // namespace
}  // namespace nlgames::cli
