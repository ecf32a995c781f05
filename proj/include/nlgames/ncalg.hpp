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

// Noncommutative *-polynomials over per-player alphabets of finite-order
// unitaries.
//
// Letters of different players always commute. Within a player the only
// relations are g^k = 1 plus optional pairwise commutation (gh = hg) or
// anticommutation (gh = -hg, order-2 generators only). This is a graph
// product of cyclic groups twisted by a sign, so every word has a unique
// reduced form up to shuffling commuting letters. normalize() cancels
// reducible letter groups and then picks the lexicographically smallest
// shuffle, ordering letters by (player, declaration index).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlgames/error.hpp"
#include "nlgames/linalg.hpp"

namespace nlgames {

struct Generator {
  int player = 0;
  std::string symbol;
  int order = 2;
};

/// Sequence of generator indices.
using Word = std::vector<std::size_t>;

/// Finite map from words to complex coefficients. Words are assumed to be in
/// normal form for whatever presentation produced them.
class NCPoly {
 public:
  using Terms = std::map<Word, Complex>;

  NCPoly() = default;

  static NCPoly constant(Complex c) { return monomial({}, c); }
  static NCPoly monomial(Word w, Complex c = 1.0) {
    NCPoly p;
    p.add_term(std::move(w), c);
    return p;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Complex coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Complex{} : it->second;
  }

  void add_term(Word w, Complex c) {
    if (c == Complex{}) return;
    auto [it, inserted] = terms_.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second == Complex{}) terms_.erase(it);
    }
  }

  /// Drops coefficients with modulus <= tol.
  NCPoly pruned(double tol) const {
    NCPoly r;
    for (const auto& [w, c] : terms_)
      if (std::abs(c) > tol) r.terms_.emplace(w, c);
    return r;
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [w, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  NCPoly& operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  NCPoly& operator*=(Complex s) {
    if (s == Complex{}) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator-(NCPoly a) { return a *= -1.0; }
  friend NCPoly operator*(NCPoly a, Complex s) { return a *= s; }
  friend NCPoly operator*(Complex s, NCPoly a) { return a *= s; }
  friend bool operator==(const NCPoly&, const NCPoly&) = default;

 private:
  Terms terms_;
};

/// Same-player relations beyond g^k = 1. Pairs are stored as (min, max).
struct RelationSet {
  std::set<std::pair<std::size_t, std::size_t>> anticommuting;
  std::set<std::pair<std::size_t, std::size_t>> commuting;

  static std::pair<std::size_t, std::size_t> key(std::size_t g, std::size_t h) {
    return {std::min(g, h), std::max(g, h)};
  }
  bool anticommute(std::size_t g, std::size_t h) const {
    return anticommuting.contains(key(g, h));
  }
  bool commute(std::size_t g, std::size_t h) const { return commuting.contains(key(g, h)); }
  friend bool operator==(const RelationSet&, const RelationSet&) = default;
};

class Presentation {
 public:
  Presentation() = default;
  explicit Presentation(std::size_t num_players) : num_players_(num_players) {}

  std::size_t add_generator(int player, std::string symbol, int order = 2) {
    if (player < 0) throw Error(ErrorCode::kSchemaError, "negative player index");
    if (order < 2) throw Error(ErrorCode::kSchemaError, "generator order must be >= 2");
    if (symbol.empty()) throw Error(ErrorCode::kSchemaError, "empty generator symbol");
    for (const auto& g : generators_) {
      if (g.player == player && g.symbol == symbol) {
        throw Error(ErrorCode::kSchemaError, "duplicate generator '" + symbol + "'");
      }
    }
    generators_.push_back({player, std::move(symbol), order});
    num_players_ = std::max(num_players_, static_cast<std::size_t>(player) + 1);
    return generators_.size() - 1;
  }

  void add_anticommuting(std::size_t g, std::size_t h) {
    check_pair(g, h);
    if (generator(g).order != 2 || generator(h).order != 2) {
      throw Error(ErrorCode::kRelationViolation,
                  "anticommutation is only supported between order-2 generators");
    }
    if (relations_.commute(g, h)) {
      throw Error(ErrorCode::kRelationViolation, "pair already declared commuting");
    }
    relations_.anticommuting.insert(RelationSet::key(g, h));
  }

  void add_commuting(std::size_t g, std::size_t h) {
    check_pair(g, h);
    if (relations_.anticommute(g, h)) {
      throw Error(ErrorCode::kRelationViolation, "pair already declared anticommuting");
    }
    relations_.commuting.insert(RelationSet::key(g, h));
  }

  std::size_t size() const noexcept { return generators_.size(); }
  std::size_t num_players() const noexcept { return num_players_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const RelationSet& relations() const noexcept { return relations_; }

  const Generator& generator(std::size_t g) const {
    if (g >= generators_.size()) {
      throw Error(ErrorCode::kUnknownGenerator, "index " + std::to_string(g));
    }
    return generators_[g];
  }

  std::size_t find(int player, std::string_view symbol) const {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (generators_[i].player == player && generators_[i].symbol == symbol) return i;
    }
    throw Error(ErrorCode::kUnknownGenerator,
                "'" + std::string(symbol) + "' for player " + std::to_string(player));
  }

  /// Same generators under a different relation set.
  Presentation with_relations(const RelationSet& rels) const {
    Presentation p(num_players_);
    p.generators_ = generators_;
    for (const auto& [g, h] : rels.anticommuting) p.add_anticommuting(g, h);
    for (const auto& [g, h] : rels.commuting) p.add_commuting(g, h);
    return p;
  }

  /// Only the order relations (and cross-player commutation) remain.
  Presentation free() const { return with_relations(RelationSet{}); }

  /// +1 if a and b commute, -1 if they anticommute, 0 if neither.
  int swap_sign(std::size_t a, std::size_t b) const {
    if (a == b) return 1;
    if (generators_[a].player != generators_[b].player) return 1;
    if (relations_.anticommute(a, b)) return -1;
    if (relations_.commute(a, b)) return 1;
    return 0;
  }

  /// Letter order used by the normal form.
  bool letter_less(std::size_t a, std::size_t b) const {
    const int pa = generators_[a].player;
    const int pb = generators_[b].player;
    return pa != pb ? pa < pb : a < b;
  }

  NCPoly one() const { return NCPoly::constant(1.0); }
  NCPoly letter(std::size_t g) const {
    generator(g);
    return NCPoly::monomial({g});
  }
  NCPoly letter(int player, std::string_view symbol) const {
    return NCPoly::monomial({find(player, symbol)});
  }

  /// Parses "uv⊗vu"-style text: one block per player separated by "⊗",
  /// "1" (or an empty block) for the identity, letters matched greedily
  /// against the player's symbols ("·" separators are ignored). The result
  /// is normalized.
  NCPoly monomial(std::string_view text, Complex coefficient = 1.0) const;

 private:
  void check_pair(std::size_t g, std::size_t h) const {
    const auto& a = generator(g);
    const auto& b = generator(h);
    if (g == h) throw Error(ErrorCode::kRelationViolation, "relation pair must be distinct");
    if (a.player != b.player) {
      throw Error(ErrorCode::kRelationViolation, "relation pair must share a player");
    }
  }

  std::size_t num_players_ = 0;
  std::vector<Generator> generators_;
  RelationSet relations_;
};

// ---------------------------------------------------------------------------
// Normal form

/// Returns (sign, normal-form word) with word = sign * normal form.
inline std::pair<int, Word> normalize_word(Word w, const Presentation& pres) {
  for (auto g : w) pres.generator(g);
  int sign = 1;

  // Cancel k consecutive occurrences of an order-k letter whenever every
  // letter between them (anti)commutes with it.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      const std::size_t x = w[i];
      const auto k = static_cast<std::size_t>(pres.generator(x).order);
      std::vector<std::size_t> hits{i};
      bool blocked = false;
      for (std::size_t j = i + 1; j < w.size() && hits.size() < k; ++j) {
        if (w[j] == x) {
          hits.push_back(j);
        } else if (pres.swap_sign(x, w[j]) == 0) {
          blocked = true;
          break;
        }
      }
      if (blocked || hits.size() < k) continue;
      for (std::size_t j = i + 1; j < hits.back(); ++j) {
        if (w[j] == x || pres.swap_sign(x, w[j]) > 0) continue;
        const auto passing = std::count_if(hits.begin(), hits.end(),
                                           [j](std::size_t h) { return h > j; });
        if (passing % 2 == 1) sign = -sign;
      }
      Word rest;
      rest.reserve(w.size() - k);
      for (std::size_t j = 0, h = 0; j < w.size(); ++j) {
        if (h < hits.size() && hits[h] == j) {
          ++h;
        } else {
          rest.push_back(w[j]);
        }
      }
      w = std::move(rest);
      changed = true;
    }
  }

  // Lexicographically smallest shuffle: repeatedly emit the smallest letter
  // that can be moved to the front.
  Word out;
  out.reserve(w.size());
  while (!w.empty()) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool available = true;
      for (std::size_t j = 0; j < i && available; ++j) {
        available = w[j] != w[i] && pres.swap_sign(w[i], w[j]) != 0;
      }
      if (available && (!best || pres.letter_less(w[i], w[*best]))) best = i;
    }
    for (std::size_t j = 0; j < *best; ++j) {
      if (pres.swap_sign(w[*best], w[j]) < 0) sign = -sign;
    }
    out.push_back(w[*best]);
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(*best));
  }
  return {sign, out};
}

inline constexpr double kCoefficientPruning = 1e-14;

inline NCPoly normalize(const NCPoly& p, const Presentation& pres) {
  NCPoly r;
  for (const auto& [w, c] : p.terms()) {
    auto [sign, nf] = normalize_word(w, pres);
    r.add_term(std::move(nf), static_cast<double>(sign) * c);
  }
  return r.pruned(kCoefficientPruning);
}

inline NCPoly normalize(const NCPoly& p, const Presentation& pres, const RelationSet& rels) {
  return normalize(p, pres.with_relations(rels));
}

inline NCPoly mul(const NCPoly& p, const NCPoly& q, const Presentation& pres) {
  NCPoly r;
  for (const auto& [wp, cp] : p.terms()) {
    for (const auto& [wq, cq] : q.terms()) {
      Word w = wp;
      w.insert(w.end(), wq.begin(), wq.end());
      auto [sign, nf] = normalize_word(std::move(w), pres);
      r.add_term(std::move(nf), static_cast<double>(sign) * cp * cq);
    }
  }
  return r.pruned(kCoefficientPruning);
}

/// Reverses words and conjugates coefficients; g* = g^(k-1).
inline NCPoly adjoint(const NCPoly& p, const Presentation& pres) {
  NCPoly r;
  for (const auto& [w, c] : p.terms()) {
    Word rev;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      const int k = pres.generator(*it).order;
      rev.insert(rev.end(), static_cast<std::size_t>(k - 1), *it);
    }
    auto [sign, nf] = normalize_word(std::move(rev), pres);
    r.add_term(std::move(nf), static_cast<double>(sign) * std::conj(c));
  }
  return r.pruned(kCoefficientPruning);
}

inline NCPoly commutator(const NCPoly& p, const NCPoly& q, const Presentation& pres) {
  return mul(p, q, pres) - mul(q, p, pres);
}

inline NCPoly anticommutator(const NCPoly& p, const NCPoly& q, const Presentation& pres) {
  return mul(p, q, pres) + mul(q, p, pres);
}

/// Applies the algebra homomorphism sending generator g to images[g].
inline NCPoly substitute(const NCPoly& p, const Presentation& pres,
                         const std::vector<NCPoly>& images) {
  if (images.size() != pres.size()) {
    throw Error(ErrorCode::kUnknownGenerator, "substitution must cover every generator");
  }
  NCPoly r;
  for (const auto& [w, c] : p.terms()) {
    NCPoly term = NCPoly::constant(c);
    for (auto g : w) term = mul(term, images[g], pres);
    r += term;
  }
  return r.pruned(kCoefficientPruning);
}

inline NCPoly Presentation::monomial(std::string_view text, Complex coefficient) const {
  static constexpr std::string_view kTensor = "\xE2\x8A\x97";  // ⊗
  static constexpr std::string_view kDot = "\xC2\xB7";         // ·
  Word w;
  std::size_t player = 0;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(text.find(kTensor, pos), text.size());
    std::string_view block = text.substr(pos, end - pos);
    if (player >= std::max<std::size_t>(num_players_, 1)) {
      throw Error(ErrorCode::kUnknownGenerator, "too many tensor factors in '" +
                                                    std::string(text) + "'");
    }
    while (!block.empty() && block.front() == ' ') block.remove_prefix(1);
    while (!block.empty() && block.back() == ' ') block.remove_suffix(1);
    if (block != "1") {
      while (!block.empty()) {
        if (block.starts_with(kDot)) {
          block.remove_prefix(kDot.size());
          continue;
        }
        std::optional<std::size_t> match;
        for (std::size_t g = 0; g < generators_.size(); ++g) {
          const auto& gen = generators_[g];
          if (gen.player != static_cast<int>(player) || !block.starts_with(gen.symbol)) continue;
          if (!match || gen.symbol.size() > generators_[*match].symbol.size()) match = g;
        }
        if (!match) {
          throw Error(ErrorCode::kUnknownGenerator,
                      "cannot parse '" + std::string(block) + "' for player " +
                          std::to_string(player));
        }
        w.push_back(*match);
        block.remove_prefix(generators_[*match].symbol.size());
      }
    }
    if (end == text.size()) break;
    pos = end + kTensor.size();
    ++player;
  }
  auto [sign, nf] = normalize_word(std::move(w), *this);
  return NCPoly::monomial(std::move(nf), static_cast<double>(sign) * coefficient);
}

// ---------------------------------------------------------------------------
// Representations

/// Matrices for (some of) the generators of a presentation, one Hilbert
/// space per player; words act on the tensor product over players.
struct Representation {
  std::vector<std::optional<Matrix>> images;
  std::vector<std::size_t> player_dims;

  Representation() = default;
  explicit Representation(const Presentation& pres)
      : images(pres.size()), player_dims(pres.num_players(), 1) {}

  void set(const Presentation& pres, std::size_t g, Matrix m) {
    const auto& gen = pres.generator(g);
    if (!m.is_square()) throw Error(ErrorCode::kNotSquare, gen.symbol + ": " + m.shape());
    const auto player = static_cast<std::size_t>(gen.player);
    for (std::size_t h = 0; h < images.size(); ++h) {
      if (h != g && images[h] && static_cast<std::size_t>(pres.generator(h).player) == player &&
          images[h]->rows() != m.rows()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "player " + std::to_string(player) + " images disagree in dimension");
      }
    }
    player_dims[player] = m.rows();
    images[g] = std::move(m);
  }

  void set(const Presentation& pres, int player, std::string_view symbol, Matrix m) {
    set(pres, pres.find(player, symbol), std::move(m));
  }

  std::size_t total_dim() const {
    std::size_t d = 1;
    for (auto x : player_dims) d *= x;
    return d;
  }
};

inline constexpr double kRelationTolerance = 1e-10;

namespace detail {
inline Matrix matrix_power(const Matrix& m, int k) {
  Matrix r = Matrix::identity(m.rows());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}
}  // namespace detail

/// Throws RelationViolation unless every assigned image is unitary, satisfies
/// its order relation and the declared (anti)commutation relations.
inline void validate_representation(const Presentation& pres, const Representation& rep,
                                    double tol = kRelationTolerance) {
  if (rep.images.size() != pres.size() || rep.player_dims.size() < pres.num_players()) {
    throw Error(ErrorCode::kDimensionMismatch, "representation does not match presentation");
  }
  for (std::size_t g = 0; g < pres.size(); ++g) {
    if (!rep.images[g]) continue;
    const Matrix& m = *rep.images[g];
    const auto& gen = pres.generator(g);
    const Matrix id = Matrix::identity(m.rows());
    if (max_abs_diff(m.adjoint() * m, id) > tol) {
      throw Error(ErrorCode::kRelationViolation, gen.symbol + " is not unitary");
    }
    if (max_abs_diff(detail::matrix_power(m, gen.order), id) > tol) {
      throw Error(ErrorCode::kRelationViolation,
                  gen.symbol + "^" + std::to_string(gen.order) + " != 1");
    }
  }
  const auto& rels = pres.relations();
  for (const auto& [g, h] : rels.anticommuting) {
    if (!rep.images[g] || !rep.images[h]) continue;
    if (anticommutator(*rep.images[g], *rep.images[h]).max_abs() > tol) {
      throw Error(ErrorCode::kRelationViolation, "{" + pres.generator(g).symbol + "," +
                                                     pres.generator(h).symbol + "} != 0");
    }
  }
  for (const auto& [g, h] : rels.commuting) {
    if (!rep.images[g] || !rep.images[h]) continue;
    if (commutator(*rep.images[g], *rep.images[h]).max_abs() > tol) {
      throw Error(ErrorCode::kRelationViolation, "[" + pres.generator(g).symbol + "," +
                                                     pres.generator(h).symbol + "] != 0");
    }
  }
}

/// Image of a single word: within-player products, tensored over players.
inline Matrix evaluate_word(const Word& w, const Presentation& pres, const Representation& rep) {
  std::vector<Matrix> factors;
  factors.reserve(rep.player_dims.size());
  for (auto d : rep.player_dims) factors.push_back(Matrix::identity(d));
  for (auto g : w) {
    const auto& gen = pres.generator(g);
    if (!rep.images[g]) {
      throw Error(ErrorCode::kMissingGenerator, "no image for '" + gen.symbol + "'");
    }
    auto& f = factors[static_cast<std::size_t>(gen.player)];
    f = f * *rep.images[g];
  }
  Matrix r = Matrix::identity(1);
  for (const auto& f : factors) r = kron(r, f);
  return r;
}

/// Homomorphic image of p. Validates the representation first.
inline Matrix evaluate(const NCPoly& p, const Presentation& pres, const Representation& rep) {
  validate_representation(pres, rep);
  const std::size_t n = rep.total_dim();
  Matrix r(n, n);
  for (const auto& [w, c] : p.terms()) r += evaluate_word(w, pres, rep) * c;
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string format_real(double x) {
  if (x == std::round(x) && std::abs(x) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Word as text, e.g. "uv⊗1". Letters are juxtaposed when every symbol is a
/// single character and separated by "·" otherwise.
inline std::string render_word(const Word& w, const Presentation& pres) {
  const bool compact = std::all_of(pres.generators().begin(), pres.generators().end(),
                                   [](const Generator& g) { return g.symbol.size() == 1; });
  const std::size_t players = std::max<std::size_t>(pres.num_players(), 1);
  std::vector<std::string> blocks(players);
  for (auto g : w) {
    const auto& gen = pres.generator(g);
    auto& b = blocks[static_cast<std::size_t>(gen.player)];
    if (!b.empty() && !compact) b += "\xC2\xB7";
    b += gen.symbol;
  }
  std::string out;
  for (std::size_t i = 0; i < players; ++i) {
    if (i > 0) out += "\xE2\x8A\x97";
    out += blocks[i].empty() ? "1" : blocks[i];
  }
  return out;
}

/// Polynomial as text, e.g. "u⊗u + u⊗v + v⊗u - v⊗v". Coefficients of modulus
/// one are folded into the sign; others print with 12 significant digits.
inline std::string render(const NCPoly& p, const Presentation& pres) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    std::string coeff;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = c.real() < 0.0;
      const double a = std::abs(c.real());
      if (a != 1.0) coeff = format_real(a);
    } else if (c.real() == 0.0) {
      negative = c.imag() < 0.0;
      const double a = std::abs(c.imag());
      coeff = (a == 1.0 ? std::string() : format_real(a)) + "i";
    } else {
      coeff = "(" + format_real(c.real()) + (c.imag() < 0 ? "-" : "+") +
              format_real(std::abs(c.imag())) + "i)";
    }
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string word = render_word(w, pres);
    if (coeff.empty()) {
      out += word;
    } else if (w.empty()) {
      out += coeff;
    } else {
      out += coeff + "\xC2\xB7" + word;
    }
  }
  return out;
}

}  // namespace nlgames
