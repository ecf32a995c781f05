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

// Command-line front end. run() is the whole program minus process setup so
// tests can drive it with in-memory streams.
//
//   nlgames value  GAME.json            winning probabilities
//   nlgames bias   GAME.json            classical and vector-model bias
//   nlgames table  chsh                 correlation and probability tables
//   nlgames verify chsh|magic-square|pentagram
//   nlgames gns    STATE.json           GNS summary of a state
//   nlgames oracle classical GAME.json  brute-force classical value
//
// Flags: --json, --seed <u64> (default 1), --restarts <n> (default 20),
// --tolerance <x> (default 1e-9). Exit codes: 0 ok, 1 a verification check
// failed, 2 bad input, 3 numerical failure.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlgames/casebook.hpp"
#include "nlgames/error.hpp"
#include "nlgames/games.hpp"
#include "nlgames/gns.hpp"
#include "nlgames/xor.hpp"

namespace nlgames::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kNumericalError = 3 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNumericalFailure:
    case ErrorCode::kNotSquare:
    case ErrorCode::kNotHermitian:
      return kNumericalError;
    default:
      return kInputError;
  }
}

struct Config {
  std::string command;
  std::vector<std::string> inputs;
  bool json = false;
  std::uint64_t seed = 1;
  std::size_t restarts = 20;
  double tolerance = 1e-9;
};

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits so output is stable across platforms.
inline double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kSchemaError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Result of a command: a JSON document plus whether its checks passed.
struct Output {
  Json doc;
  bool passed = true;
};

namespace detail {

inline Json check(Json& checks, const std::string& name, double value, double expected,
                  double tol, bool& all) {
  const bool ok = std::abs(value - expected) <= tol;
  all = all && ok;
  Json c;
  c["value"] = round12(value);
  c["expected"] = round12(expected);
  c["passed"] = ok;
  checks[name] = c;
  return c;
}

inline Json table_json(const Table4& t) {
  Json rows = Json::array();
  for (const auto& row : t) {
    Json r = Json::array();
    for (double v : row) r.push_back(round12(v));
    rows.push_back(r);
  }
  return rows;
}

inline Json probability_json(const ChshCertificate& c) {
  Json rows = Json::array();
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) {
      Json r = Json::array();
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) r.push_back(round12(c.probability[x][y][a][b]));
      rows.push_back(r);
    }
  return rows;
}

inline Json vectors_json(const std::vector<std::vector<double>>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    Json row = Json::array();
    for (double x : v) row.push_back(round12(x));
    out.push_back(row);
  }
  return out;
}

inline XorGameSpec as_xor(const AnyGame& g) {
  if (const auto* x = std::get_if<XorGameSpec>(&g)) return *x;
  if (const auto* general = std::get_if<GameSpec>(&g)) return xor_from_game(*general);
  throw Error(ErrorCode::kSchemaError, "expected an xor or general game");
}

inline Json bias_json(const BiasReport& r, const Config& cfg) {
  Json j;
  j["classical_bias"] = round12(r.classical.bias);
  j["quantum_bias"] = round12(r.quantum.bias);
  j["omega_classical"] = round12(r.omega_classical);
  j["omega_quantum"] = round12(r.omega_quantum);
  j["restarts"] = r.quantum.restarts;
  j["converged"] = r.quantum.converged;
  j["win_count"] = r.win_count;
  j["num_cells"] = r.num_cells;
  j["seed"] = cfg.seed;
  j["best_restart"] = r.quantum.best_restart;
  j["classical_assignment"] = {{"a", r.classical.a}, {"b", r.classical.b}};
  j["quantum_vectors"] = {{"a", vectors_json(r.quantum.a)}, {"b", vectors_json(r.quantum.b)}};
  return j;
}

}  // namespace detail

inline Output cmd_bias(const Config& cfg) {
  const XorGameSpec g = detail::as_xor(parse_game(read_file(cfg.inputs.at(0))));
  return {detail::bias_json(bias_report(g, cfg.restarts, cfg.seed), cfg), true};
}

inline Output cmd_value(const Config& cfg) {
  const AnyGame game = parse_game(read_file(cfg.inputs.at(0)));
  Json j;
  if (std::holds_alternative<LcsGameSpec>(game)) {
    throw Error(ErrorCode::kSchemaError, "value needs an xor or general game");
  }
  if (const auto* general = std::get_if<GameSpec>(&game)) {
    const auto r = pseudo_telepathy_check(*general, cfg.restarts, cfg.seed);
    j["kind"] = r.xor_convertible ? "xor" : "general";
    j["omega_classical"] = round12(r.classical_value);
    j["omega_quantum_lower"] = round12(r.quantum_lower);
    j["num_cells"] = general->num_cells();
    j["consistent"] = r.consistent;
    return {j, r.consistent};
  }
  const auto& g = std::get<XorGameSpec>(game);
  const auto r = bias_report(g, cfg.restarts, cfg.seed);
  j["kind"] = "xor";
  j["omega_classical"] = round12(r.omega_classical);
  j["omega_quantum_lower"] = round12(r.omega_quantum);
  j["classical_bias"] = round12(r.classical.bias);
  j["quantum_bias"] = round12(r.quantum.bias);
  j["win_count"] = r.win_count;
  j["num_cells"] = r.num_cells;
  return {j, true};
}

inline Output cmd_oracle(const Config& cfg) {
  if (cfg.inputs.size() != 2 || cfg.inputs[0] != "classical") {
    throw Error(ErrorCode::kSchemaError, "usage: oracle classical GAME.json");
  }
  const AnyGame game = parse_game(read_file(cfg.inputs[1]));
  Json j;
  if (const auto* general = std::get_if<GameSpec>(&game)) {
    const auto v = classical_value(*general);
    j["omega_classical"] = round12(v.value);
    j["wins"] = v.wins;
    j["num_cells"] = general->num_cells();
    j["assignment"] = {{"a", v.a}, {"b", v.b}};
    return {j, true};
  }
  const auto g = detail::as_xor(game);
  const auto r = classical_bias(g);
  j["classical_bias"] = round12(r.bias);
  j["omega_classical"] = round12(omega(g.win_count(), r.bias, g.num_cells()));
  j["assignment"] = {{"a", r.a}, {"b", r.b}};
  return {j, true};
}

inline Output cmd_table(const Config& cfg) {
  if (cfg.inputs.size() != 1 || cfg.inputs[0] != "chsh") {
    throw Error(ErrorCode::kSchemaError, "usage: table chsh");
  }
  const auto c = chsh_certificate();
  Json j;
  j["words"] = {"1", "u", "v", "uv"};
  j["correlation_table"] = detail::table_json(c.correlation_table);
  j["probability_order"] = "rows (x,y) = 00,01,10,11; columns (a,b) = 00,01,10,11";
  j["probability_table"] = detail::probability_json(c);
  return {j, true};
}

inline Output verify_chsh(const Config& cfg) {
  const double tol = cfg.tolerance;
  const double s2 = std::sqrt(2.0);
  const auto c = chsh_certificate();
  const auto sq = chsh_squared_identity();
  const auto tp = trace_property_check(tol);
  const auto cen = centrality_check();
  const auto p = chsh_presentation(true);
  const NCPoly untwisted = untwist(chsh_polynomial(p), p);
  const NCPoly expected_untwisted = s2 * (p.monomial("u⊗u") + p.monomial("v⊗v"));

  bool all = true;
  Json checks;
  detail::check(checks, "norm", c.norm, 2 * s2, tol, all);
  detail::check(checks, "top_multiplicity", double(c.top_multiplicity), 1.0, 0.0, all);
  detail::check(checks, "spectral_gap", c.spectral_gap, 2 * s2, tol, all);
  Table4 expected{};
  expected[0][0] = 1;
  expected[1][1] = expected[1][2] = expected[2][1] = 1 / s2;
  expected[2][2] = -1 / s2;
  expected[3][3] = -1;
  double table_dev = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      table_dev = std::max({table_dev, std::abs(c.correlation_table[i][k] - expected[i][k]),
                            std::abs(c.trace_table[i][k] - expected[i][k])});
  detail::check(checks, "correlation_table", table_dev, 0.0, tol, all);
  detail::check(checks, "trace_formula_agreement", c.table_agreement, 0.0, tol, all);
  double prob_dev = 0.0;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          const double e = ((a ^ b) == (x & y) ? 1 + 1 / s2 : 1 - 1 / s2) / 4;
          prob_dev = std::max(prob_dev, std::abs(c.probability[x][y][a][b] - e));
        }
  detail::check(checks, "probability_table", prob_dev, 0.0, tol, all);
  detail::check(checks, "probability_row_sums", c.max_row_sum_error, 0.0, 1e-12, all);
  detail::check(checks, "chsh_squared_residual_terms", double(sq.residual.size()), 0.0, 0.0, all);
  detail::check(checks, "chsh_squared_norm", sq.squared_norm, 8.0, tol, all);
  detail::check(checks, "commutator_at_optimum", sq.commutator_value, -4.0, tol, all);
  detail::check(checks, "alice_uvuv", sq.alice_uvuv, -1.0, tol, all);
  detail::check(checks, "bob_uvuv", sq.bob_uvuv, -1.0, tol, all);
  detail::check(checks, "untwist", (untwisted - expected_untwisted).max_abs_coefficient(), 0.0,
                1e-12, all);
  detail::check(checks, "trace_defect_u", tp.defect_u, 0.0, tol, all);
  detail::check(checks, "trace_defect_v", tp.defect_v, 0.0, tol, all);
  detail::check(checks, "flip_formula", tp.flip_formula_deviation, 0.0, tol, all);
  detail::check(checks, "centrality", cen.matrix_commutator, 0.0, 1e-12, all);
  detail::check(checks, "centrality_symbolic_terms",
                double(cen.symbolic_u.size() + cen.symbolic_v.size()), 0.0, 0.0, all);

  Json j;
  j["game"] = "chsh";
  j["norm"] = round12(c.norm);
  j["operator_norm"] = round12(c.norm);
  j["spectral_gap"] = round12(c.spectral_gap);
  j["top_multiplicity"] = c.top_multiplicity;
  Json eigs = Json::array();
  for (double e : c.eigenvalues) eigs.push_back(round12(e));
  j["eigenvalues"] = eigs;
  j["correlation_table"] = detail::table_json(c.correlation_table);
  j["trace_table"] = detail::table_json(c.trace_table);
  j["probability_table"] = detail::probability_json(c);
  j["chsh_squared"] = render(normalize(mul(chsh_polynomial(chsh_presentation(false)),
                                           chsh_polynomial(chsh_presentation(false)),
                                           chsh_presentation(false)),
                                       chsh_presentation(false)),
                             chsh_presentation(false));
  j["reversal_convention"] = c.reversal_convention;
  j["checks"] = checks;
  j["passed"] = all;
  return {j, all};
}

inline Output verify_magic_game(const MagicGameSolution& s, const std::string& name,
                                const Config& cfg) {
  bool all = true;
  Json checks;
  const auto r = verify_magic(s, 1e-12);
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    detail::check(checks, "line_" + std::to_string(i), r.line_residuals[i], 0.0, 1e-12, all);
  }
  detail::check(checks, "line_commutators", r.max_commutator, 0.0, 1e-12, all);
  detail::check(checks, "observables", r.max_observable_defect, 0.0, 1e-12, all);
  detail::check(checks, "winning_probability", magic_game_probabilities(s), 1.0, 1e-12, all);
  if (name == "magic-square") {
    const auto sym = magic_square_identities();
    detail::check(checks, "symbolic_residual_terms",
                  double(sym.residual_ns.size() + sym.residual_sn.size()), 0.0, 0.0, all);
    detail::check(checks, "quotient_terms",
                  double(sym.quotient_ns.size() + sym.quotient_sn.size()), 0.0, 0.0, all);
    const auto sync = check_synchronous(trace_pair_state(s.dim()), synchronicity_pairs(s),
                                        cfg.tolerance);
    detail::check(checks, "synchronicity", sync.max_defect, 0.0, cfg.tolerance, all);
  }
  Json j;
  j["game"] = name;
  j["dim"] = s.dim();
  Json lines = Json::array();
  for (const auto& l : s.lines) {
    Json members = Json::array();
    for (auto m : l.members) members.push_back(s.labels[m]);
    lines.push_back({{"members", members}, {"sign", l.sign}});
  }
  j["lines"] = lines;
  j["checks"] = checks;
  j["passed"] = all;
  return {j, all};
}

inline Output cmd_verify(const Config& cfg) {
  if (cfg.inputs.size() != 1) throw Error(ErrorCode::kSchemaError, "usage: verify NAME");
  const auto& name = cfg.inputs[0];
  if (name == "chsh") return verify_chsh(cfg);
  if (name == "magic-square") return verify_magic_game(magic_square(), name, cfg);
  if (name == "pentagram") return verify_magic_game(magic_pentagram(), name, cfg);
  throw Error(ErrorCode::kSchemaError, "unknown certificate '" + name + "'");
}

inline Output cmd_gns(const Config& cfg) {
  const auto state = parse_state(read_file(cfg.inputs.at(0)));
  const auto g = gns(state);
  Json j;
  j["basis_size"] = state.basis().size();
  j["hilbert_dim"] = g.hilbert_dim;
  j["quotient_dim"] = minimal_quotient_dim(g);
  j["reproduction_residual"] = round12(g.reproduction_residual);
  j["multiplicativity_defect"] = round12(g.multiplicativity_defect);
  const bool ok = g.reproduction_residual <= cfg.tolerance && g.multiplicativity_defect <= 1e-8;
  j["passed"] = ok;
  return {j, ok};
}

namespace detail {

inline void print_human(const Json& j, std::ostream& out, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      print_human(value, out, prefix + key + ".");
    } else {
      out << prefix << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
          << "\n";
    }
  }
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Operator-algebraic analysis of nonlocal games", "nlgames"};
  Config cfg;
  app.add_flag("--json", cfg.json, "Print stable JSON");
  app.add_option("--seed", cfg.seed, "Seed for randomized searches")->capture_default_str();
  app.add_option("--restarts", cfg.restarts, "Restarts for the vector-model search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "Check tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.require_subcommand(1);
  struct Spec {
    const char* name;
    const char* help;
    std::size_t min_args;
    std::size_t max_args;
  };
  const Spec specs[] = {{"value", "Winning probabilities of a game", 1, 1},
                        {"bias", "Classical and vector-model bias of an XOR game", 1, 1},
                        {"table", "Tables for a reference game (chsh)", 1, 1},
                        {"verify", "Certificate for chsh, magic-square or pentagram", 1, 1},
                        {"gns", "GNS summary of a state file", 1, 1},
                        {"oracle", "Brute-force oracle: oracle classical GAME.json", 2, 2}};
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    sub->add_option("inputs", cfg.inputs, "Arguments")
        ->required()
        ->expected(static_cast<int>(s.min_args), static_cast<int>(s.max_args));
    sub->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
  }

  std::vector<const char*> argv{"nlgames"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Output result;
    if (cfg.command == "value") result = cmd_value(cfg);
    else if (cfg.command == "bias") result = cmd_bias(cfg);
    else if (cfg.command == "table") result = cmd_table(cfg);
    else if (cfg.command == "verify") result = cmd_verify(cfg);
    else if (cfg.command == "gns") result = cmd_gns(cfg);
    else result = cmd_oracle(cfg);
    if (cfg.json) {
      out << result.doc.dump(2) << "\n";
    } else {
      detail::print_human(result.doc, out);
    }
    if (!result.passed) {
      err << "nlgames: verification failed\n";
      return kCheckFailed;
    }
    return kOk;
  } catch (const Error& e) {
    err << "nlgames: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "nlgames: internal error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace nlgames::cli
