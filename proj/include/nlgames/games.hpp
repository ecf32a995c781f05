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

// Game definitions, the JSON game file format, and the game and bias
// polynomials over the two-player algebra.
//
// Game files (UTF-8 JSON, unknown fields rejected):
//
//   {"type":"xor","questions_a":["0","1"],"questions_b":["0","1"],
//    "beta":[[1,1],[1,-1]]}
//   {"type":"general","answers":2,"win":[[x,y,a,b],...]}
//   {"type":"lcs","variables":["u","v","w","z"],
//    "equations":[{"vars":["u","v","w"],"rhs":1},{"vars":["v","z"],"rhs":-1}]}
//
// Optional fields: "losing_cells":[[x,y],...] (xor; cells where neither
// parity wins, beta must be 0 there) and "questions_a"/"questions_b"
// (general; default "0".."n-1" sized from the win tuples).

#pragma once

#include <algorithm>
#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "nlgames/error.hpp"
#include "nlgames/ncalg.hpp"

namespace nlgames {

struct WinTuple {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  friend auto operator<=>(const WinTuple&, const WinTuple&) = default;
};

/// General two-player game with an explicit winning set.
struct GameSpec {
  std::vector<std::string> questions_a;
  std::vector<std::string> questions_b;
  std::size_t answers = 2;
  std::set<WinTuple> win;

  std::size_t num_cells() const { return questions_a.size() * questions_b.size(); }
  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

/// XOR game: beta(x, y) = +1 if only even parity wins, -1 if only odd,
/// 0 if both win (or neither, for the listed losing cells).
struct XorGameSpec {
  std::vector<std::string> questions_a;
  std::vector<std::string> questions_b;
  std::vector<std::vector<int>> beta;
  std::set<std::pair<std::size_t, std::size_t>> losing_cells;

  std::size_t num_cells() const { return questions_a.size() * questions_b.size(); }

  /// |win| counted as winning (parity, x, y) triples.
  std::size_t win_count() const {
    std::size_t n = 0;
    for (std::size_t x = 0; x < beta.size(); ++x)
      for (std::size_t y = 0; y < beta[x].size(); ++y) {
        if (beta[x][y] != 0) {
          n += 1;
        } else if (!losing_cells.contains({x, y})) {
          n += 2;
        }
      }
    return n;
  }
  friend bool operator==(const XorGameSpec&, const XorGameSpec&) = default;
};

/// Linear constraint system over +-1 valued variables, in multiplicative
/// form: product of vars = rhs.
struct LcsGameSpec {
  struct Equation {
    std::vector<std::size_t> vars;
    int rhs = 1;
    friend bool operator==(const Equation&, const Equation&) = default;
  };
  std::vector<std::string> variables;
  std::vector<Equation> equations;
  friend bool operator==(const LcsGameSpec&, const LcsGameSpec&) = default;
};

using AnyGame = std::variant<GameSpec, XorGameSpec, LcsGameSpec>;

// ---------------------------------------------------------------------------
// Validation

inline void validate(const GameSpec& g) {
  if (g.questions_a.empty() || g.questions_b.empty()) {
    throw Error(ErrorCode::kSchemaError, "question sets must be nonempty");
  }
  if (g.answers == 0) throw Error(ErrorCode::kSchemaError, "answer set must be nonempty");
  for (const auto& t : g.win) {
    if (t.x >= g.questions_a.size() || t.y >= g.questions_b.size() || t.a >= g.answers ||
        t.b >= g.answers) {
      throw Error(ErrorCode::kSchemaError, "win tuple out of range");
    }
  }
}

inline void validate(const XorGameSpec& g) {
  if (g.questions_a.empty() || g.questions_b.empty()) {
    throw Error(ErrorCode::kSchemaError, "question sets must be nonempty");
  }
  if (g.beta.size() != g.questions_a.size()) {
    throw Error(ErrorCode::kSchemaError, "beta must have one row per question_a");
  }
  for (const auto& row : g.beta) {
    if (row.size() != g.questions_b.size()) {
      throw Error(ErrorCode::kSchemaError, "beta must have one column per question_b");
    }
    for (int b : row) {
      if (b < -1 || b > 1) throw Error(ErrorCode::kSchemaError, "beta values must be -1, 0, 1");
    }
  }
  for (const auto& [x, y] : g.losing_cells) {
    if (x >= g.questions_a.size() || y >= g.questions_b.size()) {
      throw Error(ErrorCode::kSchemaError, "losing cell out of range");
    }
    if (g.beta[x][y] != 0) throw Error(ErrorCode::kSchemaError, "losing cell needs beta = 0");
  }
}

inline void validate(const LcsGameSpec& g) {
  if (g.variables.empty()) throw Error(ErrorCode::kSchemaError, "no variables");
  if (g.equations.empty()) throw Error(ErrorCode::kSchemaError, "no equations");
  std::set<std::string> names(g.variables.begin(), g.variables.end());
  if (names.size() != g.variables.size()) {
    throw Error(ErrorCode::kSchemaError, "duplicate variable name");
  }
  for (const auto& eq : g.equations) {
    if (eq.vars.empty()) throw Error(ErrorCode::kSchemaError, "equation without variables");
    if (eq.rhs != 1 && eq.rhs != -1) throw Error(ErrorCode::kSchemaError, "rhs must be +-1");
    for (auto v : eq.vars) {
      if (v >= g.variables.size()) throw Error(ErrorCode::kSchemaError, "dangling variable");
    }
  }
}

// ---------------------------------------------------------------------------
// Parsing and rendering

namespace detail {

using Json = nlohmann::json;

inline void only_fields(const Json& j, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorCode::kSchemaError, "unknown field '" + key + "'");
    }
  }
}

inline const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::kSchemaError, std::string("missing field '") + key + "'");
  return *it;
}

inline std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::kSchemaError, std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw Error(ErrorCode::kSchemaError, std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline long long integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) {
    throw Error(ErrorCode::kSchemaError, std::string(what) + " must be an integer");
  }
  return j.get<long long>();
}

inline std::size_t index(const Json& j, const char* what) {
  const long long v = integer(j, what);
  if (v < 0) throw Error(ErrorCode::kSchemaError, std::string(what) + " must be >= 0");
  return static_cast<std::size_t>(v);
}

inline std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

inline XorGameSpec parse_xor(const Json& j) {
  only_fields(j, {"type", "questions_a", "questions_b", "beta", "losing_cells"});
  XorGameSpec g;
  g.questions_a = string_list(field(j, "questions_a"), "questions_a");
  g.questions_b = string_list(field(j, "questions_b"), "questions_b");
  const Json& beta = field(j, "beta");
  if (!beta.is_array()) throw Error(ErrorCode::kSchemaError, "beta must be an array");
  for (const auto& row : beta) {
    if (!row.is_array()) throw Error(ErrorCode::kSchemaError, "beta rows must be arrays");
    std::vector<int> r;
    for (const auto& v : row) r.push_back(static_cast<int>(integer(v, "beta entry")));
    g.beta.push_back(std::move(r));
  }
  if (auto it = j.find("losing_cells"); it != j.end()) {
    if (!it->is_array()) throw Error(ErrorCode::kSchemaError, "losing_cells must be an array");
    for (const auto& cell : *it) {
      if (!cell.is_array() || cell.size() != 2) {
        throw Error(ErrorCode::kSchemaError, "losing cell must be [x, y]");
      }
      g.losing_cells.insert({index(cell[0], "x"), index(cell[1], "y")});
    }
  }
  validate(g);
  return g;
}

inline GameSpec parse_general(const Json& j) {
  only_fields(j, {"type", "questions_a", "questions_b", "answers", "win"});
  GameSpec g;
  g.answers = index(field(j, "answers"), "answers");
  const Json& win = field(j, "win");
  if (!win.is_array()) throw Error(ErrorCode::kSchemaError, "win must be an array");
  std::size_t max_x = 0, max_y = 0;
  for (const auto& t : win) {
    if (!t.is_array() || t.size() != 4) {
      throw Error(ErrorCode::kSchemaError, "win tuple must be [x, y, a, b]");
    }
    WinTuple w{index(t[0], "x"), index(t[1], "y"), index(t[2], "a"), index(t[3], "b")};
    max_x = std::max(max_x, w.x + 1);
    max_y = std::max(max_y, w.y + 1);
    g.win.insert(w);
  }
  if (auto it = j.find("questions_a"); it != j.end()) {
    g.questions_a = string_list(*it, "questions_a");
  } else {
    g.questions_a = numbered(max_x);
  }
  if (auto it = j.find("questions_b"); it != j.end()) {
    g.questions_b = string_list(*it, "questions_b");
  } else {
    g.questions_b = numbered(max_y);
  }
  validate(g);
  return g;
}

inline LcsGameSpec parse_lcs(const Json& j) {
  only_fields(j, {"type", "variables", "equations"});
  LcsGameSpec g;
  g.variables = string_list(field(j, "variables"), "variables");
  const Json& eqs = field(j, "equations");
  if (!eqs.is_array()) throw Error(ErrorCode::kSchemaError, "equations must be an array");
  for (const auto& e : eqs) {
    if (!e.is_object()) throw Error(ErrorCode::kSchemaError, "equation must be an object");
    only_fields(e, {"vars", "rhs"});
    LcsGameSpec::Equation eq;
    for (const auto& name : string_list(field(e, "vars"), "vars")) {
      auto it = std::find(g.variables.begin(), g.variables.end(), name);
      if (it == g.variables.end()) {
        throw Error(ErrorCode::kSchemaError, "dangling variable '" + name + "'");
      }
      eq.vars.push_back(static_cast<std::size_t>(it - g.variables.begin()));
    }
    eq.rhs = static_cast<int>(integer(field(e, "rhs"), "rhs"));
    g.equations.push_back(std::move(eq));
  }
  validate(g);
  return g;
}

}  // namespace detail

inline AnyGame parse_game(std::string_view text) {
  detail::Json j;
  try {
    j = detail::Json::parse(text.begin(), text.end());
  } catch (const detail::Json::parse_error& e) {
    throw Error(ErrorCode::kSyntaxError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kSchemaError, "game file must be a JSON object");
  const auto& type = detail::field(j, "type");
  if (!type.is_string()) throw Error(ErrorCode::kSchemaError, "type must be a string");
  const auto kind = type.get<std::string>();
  if (kind == "xor") return detail::parse_xor(j);
  if (kind == "general") return detail::parse_general(j);
  if (kind == "lcs") return detail::parse_lcs(j);
  throw Error(ErrorCode::kSchemaError, "unknown game type '" + kind + "'");
}

inline nlohmann::ordered_json to_json(const XorGameSpec& g) {
  nlohmann::ordered_json j;
  j["type"] = "xor";
  j["questions_a"] = g.questions_a;
  j["questions_b"] = g.questions_b;
  j["beta"] = g.beta;
  if (!g.losing_cells.empty()) {
    auto cells = nlohmann::ordered_json::array();
    for (const auto& [x, y] : g.losing_cells) cells.push_back({x, y});
    j["losing_cells"] = cells;
  }
  return j;
}

inline nlohmann::ordered_json to_json(const GameSpec& g) {
  nlohmann::ordered_json j;
  j["type"] = "general";
  j["questions_a"] = g.questions_a;
  j["questions_b"] = g.questions_b;
  j["answers"] = g.answers;
  auto win = nlohmann::ordered_json::array();
  for (const auto& t : g.win) win.push_back({t.x, t.y, t.a, t.b});
  j["win"] = win;
  return j;
}

inline nlohmann::ordered_json to_json(const LcsGameSpec& g) {
  nlohmann::ordered_json j;
  j["type"] = "lcs";
  j["variables"] = g.variables;
  auto eqs = nlohmann::ordered_json::array();
  for (const auto& eq : g.equations) {
    nlohmann::ordered_json e;
    auto vars = nlohmann::ordered_json::array();
    for (auto v : eq.vars) vars.push_back(g.variables[v]);
    e["vars"] = vars;
    e["rhs"] = eq.rhs;
    eqs.push_back(e);
  }
  j["equations"] = eqs;
  return j;
}

inline std::string render_game(const AnyGame& g) {
  return std::visit([](const auto& spec) { return to_json(spec).dump(); }, g);
}

// ---------------------------------------------------------------------------
// Polynomials

/// Player 0 gets one order-2 generator "u<id>" per question in questions_a,
/// player 1 likewise for questions_b, in question order.
inline Presentation question_presentation(const std::vector<std::string>& questions_a,
                                          const std::vector<std::string>& questions_b) {
  Presentation p(2);
  for (const auto& q : questions_a) p.add_generator(0, "u" + q);
  for (const auto& q : questions_b) p.add_generator(1, "u" + q);
  return p;
}

inline Presentation xor_presentation(const XorGameSpec& g) {
  return question_presentation(g.questions_a, g.questions_b);
}

inline Presentation game_presentation(const GameSpec& g) {
  return question_presentation(g.questions_a, g.questions_b);
}

/// sum_{x,y} beta(x,y) u(x) (x) u(y), over xor_presentation(g).
inline NCPoly bias_polynomial(const XorGameSpec& g) {
  validate(g);
  const std::size_t nx = g.questions_a.size();
  NCPoly p;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < g.questions_b.size(); ++y)
      if (g.beta[x][y] != 0) p.add_term({x, nx + y}, static_cast<double>(g.beta[x][y]));
  return p;
}

/// sum over winning tuples of E(a|x) (x) E(b|y), E(a|x) = (1 + (-1)^a u(x))/2,
/// over game_presentation(g).
inline NCPoly game_polynomial(const GameSpec& g) {
  validate(g);
  if (g.answers != 2) {
    throw Error(ErrorCode::kNonBinaryAnswers, "game polynomial needs binary answers");
  }
  const std::size_t nx = g.questions_a.size();
  NCPoly p;
  for (const auto& t : g.win) {
    const double sa = t.a == 0 ? 1.0 : -1.0;
    const double sb = t.b == 0 ? 1.0 : -1.0;
    p.add_term({}, 0.25);
    p.add_term({t.x}, 0.25 * sa);
    p.add_term({nx + t.y}, 0.25 * sb);
    p.add_term({t.x, nx + t.y}, 0.25 * sa * sb);
  }
  return p;
}

/// Succeeds iff every question pair wins on a union of parity classes.
inline XorGameSpec xor_from_game(const GameSpec& g) {
  validate(g);
  if (g.answers != 2) throw Error(ErrorCode::kNonBinaryAnswers, "XOR games have binary answers");
  XorGameSpec out;
  out.questions_a = g.questions_a;
  out.questions_b = g.questions_b;
  out.beta.assign(g.questions_a.size(), std::vector<int>(g.questions_b.size(), 0));
  for (std::size_t x = 0; x < g.questions_a.size(); ++x) {
    for (std::size_t y = 0; y < g.questions_b.size(); ++y) {
      auto wins = [&](std::size_t a, std::size_t b) { return g.win.contains({x, y, a, b}); };
      const bool even = wins(0, 0);
      const bool odd = wins(0, 1);
      if (even != wins(1, 1) || odd != wins(1, 0)) {
        throw Error(ErrorCode::kNotParityDetermined,
                    "cell (" + g.questions_a[x] + ", " + g.questions_b[y] + ")");
      }
      out.beta[x][y] = (even ? 1 : 0) - (odd ? 1 : 0);
      if (!even && !odd) out.losing_cells.insert({x, y});
    }
  }
  return out;
}

inline GameSpec game_from_xor(const XorGameSpec& g) {
  validate(g);
  GameSpec out;
  out.questions_a = g.questions_a;
  out.questions_b = g.questions_b;
  out.answers = 2;
  for (std::size_t x = 0; x < g.questions_a.size(); ++x) {
    for (std::size_t y = 0; y < g.questions_b.size(); ++y) {
      const int b = g.beta[x][y];
      const bool even = b == 1 || (b == 0 && !g.losing_cells.contains({x, y}));
      const bool odd = b == -1 || (b == 0 && !g.losing_cells.contains({x, y}));
      if (even) {
        out.win.insert({x, y, 0, 0});
        out.win.insert({x, y, 1, 1});
      }
      if (odd) {
        out.win.insert({x, y, 0, 1});
        out.win.insert({x, y, 1, 0});
      }
    }
  }
  return out;
}

/// Game algebra data for a linear constraint system: one order-2 generator
/// per variable (single player), commutation for variables sharing an
/// equation, and the identities (product of vars) - rhs.
struct LcsAlgebra {
  Presentation presentation;
  std::vector<NCPoly> identities;
};

inline LcsAlgebra lcs_game_relations(const LcsGameSpec& g) {
  validate(g);
  LcsAlgebra out{Presentation(1), {}};
  for (const auto& name : g.variables) out.presentation.add_generator(0, name);
  for (const auto& eq : g.equations) {
    for (std::size_t i = 0; i < eq.vars.size(); ++i)
      for (std::size_t j = i + 1; j < eq.vars.size(); ++j)
        if (eq.vars[i] != eq.vars[j]) out.presentation.add_commuting(eq.vars[i], eq.vars[j]);
  }
  for (const auto& eq : g.equations) {
    NCPoly product = normalize(NCPoly::monomial(eq.vars), out.presentation);
    out.identities.push_back(product - NCPoly::constant(static_cast<double>(eq.rhs)));
  }
  return out;
}

/// Largest entry of any identity evaluated with variable i -> observables[i].
inline double lcs_identity_residual(const LcsAlgebra& lcs, const std::vector<Matrix>& observables) {
  if (observables.size() != lcs.presentation.size()) {
    throw Error(ErrorCode::kMissingGenerator, "one observable per variable required");
  }
  Representation rep(lcs.presentation);
  for (std::size_t i = 0; i < observables.size(); ++i) rep.set(lcs.presentation, i, observables[i]);
  double worst = 0.0;
  for (const auto& id : lcs.identities) {
    worst = std::max(worst, evaluate(id, lcs.presentation, rep).max_abs());
  }
  return worst;
}

}  // namespace nlgames
