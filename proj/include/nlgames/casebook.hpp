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

// Reference analyses: the CHSH game in the Pauli representation and the
// magic square and pentagram operator solutions.
//
// CHSH conventions. Each player has order-2 generators u, v, represented as
// u = Z, v = X; word uv is the matrix ZX. Tables are indexed by the words
// (1, u, v, uv) for each player. The untwisting map theta sends
// u -> (u + v)/sqrt2, v -> (u - v)/sqrt2 on player 1 only, turning CHSH into
// sqrt2 (u(x)u + v(x)v), whose optimal state is the maximally entangled
// vector. Pulled back to the original frame this gives the trace formula
//
//   phi(w1 (x) w2) = tau(w1 . rev(theta(w2))),   tau = trace / 2,
//
// where rev reverses the letter order.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "nlgames/error.hpp"
#include "nlgames/gns.hpp"
#include "nlgames/linalg.hpp"
#include "nlgames/ncalg.hpp"

namespace nlgames {

// ---------------------------------------------------------------------------
// CHSH

/// Players 0 and 1 with generators u, v; with `pauli`, u and v anticommute.
inline Presentation chsh_presentation(bool pauli) {
  Presentation p(2);
  for (int player : {0, 1}) {
    const auto u = p.add_generator(player, "u");
    const auto v = p.add_generator(player, "v");
    if (pauli) p.add_anticommuting(u, v);
  }
  return p;
}

inline NCPoly chsh_polynomial(const Presentation& p) {
  return p.monomial("u⊗u") + p.monomial("u⊗v") + p.monomial("v⊗u") - p.monomial("v⊗v");
}

/// u -> Z, v -> X for both players.
inline Representation chsh_pauli_rep(const Presentation& p) {
  Representation rep(p);
  for (int player : {0, 1}) {
    rep.set(p, player, "u", pauli::Z());
    rep.set(p, player, "v", pauli::X());
  }
  return rep;
}

using Table4 = std::array<std::array<double, 4>, 4>;

namespace detail {

/// Letters of the table words 1, u, v, uv (0 = u, 1 = v).
inline const std::array<std::vector<int>, 4>& table_words() {
  static const std::array<std::vector<int>, 4> words{
      std::vector<int>{}, std::vector<int>{0}, std::vector<int>{1}, std::vector<int>{0, 1}};
  return words;
}

inline Matrix letter_matrix(int letter, bool twisted) {
  const double r = 1.0 / std::sqrt(2.0);
  if (!twisted) return letter == 0 ? pauli::Z() : pauli::X();
  return letter == 0 ? r * (pauli::Z() + pauli::X()) : r * (pauli::Z() - pauli::X());
}

/// Product of letters in the given order, optionally through theta.
inline Matrix word_matrix(const std::vector<int>& letters, bool twisted = false,
                          bool reversed = false) {
  Matrix m = Matrix::identity(2);
  if (reversed) {
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) m = m * letter_matrix(*it, twisted);
  } else {
    for (int l : letters) m = m * letter_matrix(l, twisted);
  }
  return m;
}

/// All words over {u, v} of length <= max_len.
inline std::vector<std::vector<int>> all_words(std::size_t max_len) {
  std::vector<std::vector<int>> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (int l : {0, 1}) {
        auto w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

inline double tau(const Matrix& m) { return m.trace().real() / static_cast<double>(m.rows()); }

}  // namespace detail

struct ChshCertificate {
  std::vector<double> eigenvalues;
  double norm = 0.0;
  double spectral_gap = 0.0;
  std::size_t top_multiplicity = 0;
  Vector optimal_vector;
  Table4 correlation_table{};  // from the top eigenvector
  Table4 trace_table{};        // from the trace formula
  double table_agreement = 0.0;
  // Deviations of the alternative readings of the trace formula from the
  // eigenvector state, over all word pairs of length <= 4.
  double trace_formula_deviation = 0.0;
  double without_reversal_deviation = 0.0;
  double without_untwist_deviation = 0.0;
  std::string reversal_convention;
  // probability[x][y][a][b] = p(a, b | x, y).
  std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2> probability{};
  double max_row_sum_error = 0.0;
};

inline constexpr std::size_t kTraceFormulaWordLength = 4;

inline ChshCertificate chsh_certificate() {
  ChshCertificate c;
  const Presentation p = chsh_presentation(true);
  const Matrix m = evaluate(chsh_polynomial(p), p, chsh_pauli_rep(p));
  const auto eig = hermitian_eig(m);
  c.eigenvalues = eig.eigenvalues;
  const double top = eig.eigenvalues.back();
  c.norm = operator_norm(m);
  const double cluster = 1e-9 * (1.0 + std::abs(top));
  std::size_t below = eig.eigenvalues.size();
  for (std::size_t i = eig.eigenvalues.size(); i-- > 0;) {
    if (top - eig.eigenvalues[i] <= cluster) {
      ++c.top_multiplicity;
    } else {
      below = i;
      break;
    }
  }
  c.spectral_gap = below < eig.eigenvalues.size() ? top - eig.eigenvalues[below] : 0.0;
  c.optimal_vector = eig.eigenvectors.column(eig.eigenvalues.size() - 1);

  const auto& words = detail::table_words();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Matrix op = kron(detail::word_matrix(words[i]), detail::word_matrix(words[j]));
      c.correlation_table[i][j] = expectation(c.optimal_vector, op).real();
      c.trace_table[i][j] =
          detail::tau(detail::word_matrix(words[i]) * detail::word_matrix(words[j], true, true));
      c.table_agreement =
          std::max(c.table_agreement, std::abs(c.correlation_table[i][j] - c.trace_table[i][j]));
    }

  const auto all = detail::all_words(kTraceFormulaWordLength);
  for (const auto& w1 : all) {
    const Matrix a = detail::word_matrix(w1);
    for (const auto& w2 : all) {
      const double exact =
          expectation(c.optimal_vector, kron(a, detail::word_matrix(w2))).real();
      auto dev = [&](bool twisted, bool reversed) {
        return std::abs(exact - detail::tau(a * detail::word_matrix(w2, twisted, reversed)));
      };
      c.trace_formula_deviation = std::max(c.trace_formula_deviation, dev(true, true));
      c.without_reversal_deviation = std::max(c.without_reversal_deviation, dev(true, false));
      c.without_untwist_deviation = std::max(c.without_untwist_deviation, dev(false, true));
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "phi(w1 (x) w2) = tau(w1 rev(theta(w2))) matches the eigenvector state to %.1e; "
                "dropping the reversal deviates by %.3g, dropping theta by %.3g",
                c.trace_formula_deviation, c.without_reversal_deviation,
                c.without_untwist_deviation);
  c.reversal_convention = buf;

  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) {
      double sum = 0.0;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          const double sa = a == 0 ? 1.0 : -1.0, sb = b == 0 ? 1.0 : -1.0;
          const Matrix ea = 0.5 * (pauli::I() + sa * detail::letter_matrix(int(x), false));
          const Matrix eb = 0.5 * (pauli::I() + sb * detail::letter_matrix(int(y), false));
          const double prob = expectation(c.optimal_vector, kron(ea, eb)).real();
          c.probability[x][y][a][b] = prob;
          sum += prob;
        }
      c.max_row_sum_error = std::max(c.max_row_sum_error, std::abs(sum - 1.0));
    }
  return c;
}

struct ChshSquaredReport {
  NCPoly residual;           // exact zero expected
  double squared_norm = 0.0; // ||CHSH^2|| in the Pauli representation
  double commutator_value = 0.0;  // phi([u,v] (x) [u,v]) at the optimal state
  double alice_uvuv = 0.0;        // phi(uvuv (x) 1)
  double bob_uvuv = 0.0;          // phi(1 (x) uvuv)
};

/// CHSH^2 - (4 - [u,v] (x) [u,v]) under order-2 relations only.
inline ChshSquaredReport chsh_squared_identity() {
  ChshSquaredReport r;
  const Presentation free = chsh_presentation(false);
  const NCPoly c = chsh_polynomial(free);
  const NCPoly comm_a = commutator(free.monomial("u"), free.monomial("v"), free);
  const NCPoly comm_b = commutator(free.monomial("1⊗u"), free.monomial("1⊗v"), free);
  const NCPoly comm = mul(comm_a, comm_b, free);
  r.residual = normalize(mul(c, c, free) - (4.0 * free.one() - comm), free);

  const Presentation p = chsh_presentation(true);
  const Representation rep = chsh_pauli_rep(p);
  r.squared_norm = operator_norm(evaluate(mul(c, c, free), free, rep));
  const Vector psi = chsh_certificate().optimal_vector;
  r.commutator_value = expectation(psi, evaluate(comm, free, rep)).real();
  r.alice_uvuv = expectation(psi, evaluate(free.monomial("uvuv"), free, rep)).real();
  r.bob_uvuv = expectation(psi, evaluate(free.monomial("1⊗uvuv"), free, rep)).real();
  return r;
}

/// Applies u -> (u+v)/sqrt2, v -> (u-v)/sqrt2 to player 1 of a presentation
/// with generators u, v per player, normalizing under its relations.
inline NCPoly untwist(const NCPoly& p, const Presentation& pres) {
  std::vector<NCPoly> images;
  for (std::size_t g = 0; g < pres.size(); ++g) images.push_back(pres.letter(g));
  const std::size_t u = pres.find(1, "u"), v = pres.find(1, "v");
  const double r = 1.0 / std::sqrt(2.0);
  images[u] = r * (pres.letter(u) + pres.letter(v));
  images[v] = r * (pres.letter(u) - pres.letter(v));
  return substitute(p, pres, images);
}

struct TracePropertyReport {
  double defect_u = 0.0;  // ||(u(x)1 - 1(x)u) |phi>||^2 in the untwisted frame
  double defect_v = 0.0;
  double flip_formula_deviation = 0.0;  // untwisted: phi(w1(x)w2) vs tau(w1 rev(w2))
  double twisted_formula_deviation = 0.0;
  std::size_t word_pairs = 0;
  bool passed = false;
};

/// The untwisted optimal state is the maximally entangled vector; on its
/// GNS datum each player's letters act identically on the cyclic vector,
/// which is what makes phi a trace pairing.
inline TracePropertyReport trace_property_check(double tol = 1e-9) {
  TracePropertyReport r;
  const Presentation p = chsh_presentation(true);
  const Representation rep = chsh_pauli_rep(p);
  const NCPoly untwisted = untwist(chsh_polynomial(p), p);
  const auto eig = hermitian_eig(evaluate(untwisted, p, rep));
  const Vector phi = eig.eigenvectors.column(3);

  const auto state = StateFunctional::from_density(pauli2x2_basis(), outer(phi, phi));
  const GnsData g = gns(state);
  // Basis order (1,u,v,uv) (x) (1,u,v,uv): u(x)1 = 4, 1(x)u = 1, v(x)1 = 8, 1(x)v = 2.
  auto defect = [&](std::size_t a, std::size_t b) {
    const Vector d = (g.rep[a] - g.rep[b]) * g.cyclic;
    return std::real(inner(d, d));
  };
  r.defect_u = defect(4, 1);
  r.defect_v = defect(8, 2);

  const Vector psi = chsh_certificate().optimal_vector;
  const auto all = detail::all_words(kTraceFormulaWordLength);
  for (const auto& w1 : all) {
    const Matrix a = detail::word_matrix(w1);
    for (const auto& w2 : all) {
      const Matrix b = detail::word_matrix(w2);
      const double untw = expectation(phi, kron(a, b)).real();
      r.flip_formula_deviation = std::max(
          r.flip_formula_deviation,
          std::abs(untw - detail::tau(a * detail::word_matrix(w2, false, true))));
      const double tw = expectation(psi, kron(a, b)).real();
      r.twisted_formula_deviation = std::max(
          r.twisted_formula_deviation,
          std::abs(tw - detail::tau(a * detail::word_matrix(w2, true, true))));
      ++r.word_pairs;
    }
  }
  r.passed = r.defect_u <= tol && r.defect_v <= tol && r.flip_formula_deviation <= tol &&
             r.twisted_formula_deviation <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// Magic games

struct MagicLine {
  std::vector<std::size_t> members;
  int sign = 1;
};

struct MagicGameSolution {
  std::vector<std::string> labels;
  std::vector<Matrix> observables;
  std::vector<MagicLine> lines;

  std::size_t dim() const { return observables.front().rows(); }
  std::size_t index(std::string_view label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw Error(ErrorCode::kUnknownGenerator, std::string(label));
    return static_cast<std::size_t>(it - labels.begin());
  }
};

/// Grid on M2 (x) M2, rows NW N NE / W C E / SW S SE.
inline MagicGameSolution magic_square() {
  using namespace pauli;
  const Matrix u = Z(), v = X(), one = I();
  MagicGameSolution s;
  s.labels = {"NW", "N", "NE", "W", "C", "E", "SW", "S", "SE"};
  const Matrix west = kron(u, v), east = kron(v, u);
  s.observables = {kron(u, one), kron(u, u), kron(one, u),  //
                   west,         west * east, east,         //
                   kron(one, v), kron(v, v), kron(v, one)};
  s.lines = {{{0, 1, 2}, 1}, {{3, 4, 5}, 1}, {{6, 7, 8}, 1},
             {{0, 3, 6}, 1}, {{1, 4, 7}, -1}, {{2, 5, 8}, 1}};
  return s;
}

/// Mermin's pentagram on M2 (x) M2 (x) M2 with x = X, z = Z per factor.
inline MagicGameSolution magic_pentagram() {
  using namespace pauli;
  auto site = [](const Matrix& m, int k) {
    Matrix r = Matrix::identity(1);
    for (int i = 0; i < 3; ++i) r = kron(r, i == k ? m : I());
    return r;
  };
  MagicGameSolution s;
  s.labels = {"X1", "X2", "X3", "Z1", "Z2", "Z3", "X1X2X3", "X1Z2Z3", "Z1X2Z3", "Z1Z2X3"};
  std::vector<Matrix> x, z;
  for (int k = 0; k < 3; ++k) {
    x.push_back(site(X(), k));
    z.push_back(site(Z(), k));
  }
  s.observables = {x[0], x[1], x[2], z[0], z[1], z[2],
                   x[0] * x[1] * x[2], x[0] * z[1] * z[2], z[0] * x[1] * z[2], z[0] * z[1] * x[2]};
  s.lines = {{{0, 4, 5, 7}, 1}, {{3, 1, 5, 8}, 1}, {{3, 4, 2, 9}, 1},
             {{0, 1, 2, 6}, 1}, {{6, 7, 8, 9}, -1}};
  return s;
}

struct MagicReport {
  std::vector<double> line_residuals;  // ||prod(line) - sign I||, entrywise max
  double max_line_residual = 0.0;
  double max_commutator = 0.0;         // within lines
  double max_observable_defect = 0.0;  // self-adjoint, unitary, O^2 = 1
  bool passed = false;
};

inline MagicReport verify_magic(const MagicGameSolution& s, double tol = 1e-12) {
  MagicReport r;
  const Matrix id = Matrix::identity(s.dim());
  for (const auto& o : s.observables) {
    r.max_observable_defect = std::max({r.max_observable_defect, hermitian_defect(o),
                                        max_abs_diff(o.adjoint() * o, id), max_abs_diff(o * o, id)});
  }
  for (const auto& line : s.lines) {
    Matrix prod = id;
    for (auto i : line.members) prod = prod * s.observables[i];
    const double res = max_abs_diff(prod, static_cast<double>(line.sign) * id);
    r.line_residuals.push_back(res);
    r.max_line_residual = std::max(r.max_line_residual, res);
    for (std::size_t i = 0; i < line.members.size(); ++i)
      for (std::size_t j = i + 1; j < line.members.size(); ++j)
        r.max_commutator = std::max(
            r.max_commutator,
            commutator(s.observables[line.members[i]], s.observables[line.members[j]]).max_abs());
  }
  r.passed = r.max_line_residual <= tol && r.max_commutator <= tol && r.max_observable_defect <= tol;
  return r;
}

namespace detail {

/// Joint spectral projection prod_i (1 + s_i O_i)/2 of commuting observables.
inline Matrix joint_projection(const MagicGameSolution& s, const MagicLine& line,
                               std::uint64_t outcome) {
  const Matrix id = Matrix::identity(s.dim());
  Matrix p = id;
  for (std::size_t i = 0; i < line.members.size(); ++i) {
    const double sign = (outcome >> i) & 1 ? -1.0 : 1.0;
    p = p * (0.5 * (id + sign * s.observables[line.members[i]]));
  }
  return p;
}

inline bool satisfies(const MagicLine& line, std::uint64_t outcome) {
  int prod = 1;
  for (std::size_t i = 0; i < line.members.size(); ++i) prod *= (outcome >> i) & 1 ? -1 : 1;
  return prod == line.sign;
}

}  // namespace detail

/// Distribution of joint outcomes of one line under trace / dim; bit i of
/// the outcome index set means member i reads -1.
inline std::vector<double> context_distribution(const MagicGameSolution& s, std::size_t line) {
  const auto& l = s.lines.at(line);
  std::vector<double> out;
  for (std::uint64_t o = 0; o < (std::uint64_t{1} << l.members.size()); ++o) {
    out.push_back(detail::tau(detail::joint_projection(s, l, o)));
  }
  return out;
}

/// Winning probability with equiprobable line pairs: Alice answers line L1,
/// Bob line L2, each with an assignment satisfying its line, and they win
/// if they agree on shared observables. The state is the maximally entangled
/// vector on C^d (x) C^d with Bob measuring transposed projections, so
/// p(alpha, beta) = tau(P_alpha P_beta) for tau = trace / d. No validation.
inline double magic_game_probabilities(const MagicGameSolution& s) {
  const std::size_t d = s.dim();
  Vector omega(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) omega[i * d + i] = 1.0 / std::sqrt(double(d));
  double total = 0.0;
  for (const auto& la : s.lines) {
    for (const auto& lb : s.lines) {
      double win = 0.0;
      for (std::uint64_t oa = 0; oa < (std::uint64_t{1} << la.members.size()); ++oa) {
        if (!detail::satisfies(la, oa)) continue;
        const Matrix pa = detail::joint_projection(s, la, oa);
        for (std::uint64_t ob = 0; ob < (std::uint64_t{1} << lb.members.size()); ++ob) {
          if (!detail::satisfies(lb, ob)) continue;
          bool agree = true;
          for (std::size_t i = 0; i < la.members.size() && agree; ++i)
            for (std::size_t j = 0; j < lb.members.size(); ++j)
              if (la.members[i] == lb.members[j] && (((oa >> i) ^ (ob >> j)) & 1)) agree = false;
          if (!agree) continue;
          const Matrix pb = detail::joint_projection(s, lb, ob);
          win += expectation(omega, kron(pa, pb.transpose())).real();
        }
      }
      total += win;
    }
  }
  return total / static_cast<double>(s.lines.size() * s.lines.size());
}

/// Checks the solution, then returns the winning probability.
inline double magic_winning_probability(const MagicGameSolution& s, double tol = 1e-10) {
  const auto report = verify_magic(s, tol);
  if (!report.passed) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "line residual %.3g, commutator %.3g, observable defect %.3g",
                  report.max_line_residual, report.max_commutator, report.max_observable_defect);
    throw Error(ErrorCode::kInvalidSolution, buf);
  }
  return magic_game_probabilities(s);
}

/// Pairs (E (x) 1, 1 (x) E^T) for both spectral projections of every
/// observable, on C^d (x) C^d.
inline std::vector<std::pair<Matrix, Matrix>> synchronicity_pairs(const MagicGameSolution& s) {
  const Matrix id = Matrix::identity(s.dim());
  std::vector<std::pair<Matrix, Matrix>> out;
  for (const auto& o : s.observables)
    for (double sign : {1.0, -1.0}) {
      const Matrix e = 0.5 * (id + sign * o);
      out.emplace_back(kron(e, id), kron(id, e.transpose()));
    }
  return out;
}

/// The trace-pair state: maximally entangled vector on C^d (x) C^d.
inline StateFunctional trace_pair_state(std::size_t d) {
  Vector omega(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) omega[i * d + i] = 1.0 / std::sqrt(double(d));
  return StateFunctional::from_density(matrix_units(d * d), outer(omega, omega));
}

struct MagicSymbolicReport {
  NCPoly we_plus_ns;     // W E + N S in the free algebra
  NCPoly we_plus_sn;     // W E + S N in the free algebra
  NCPoly residual_ns;    // W E + N S - uv (x) {u, v}
  NCPoly residual_sn;    // W E + S N - {u, v} (x) vu
  NCPoly quotient_ns;    // W E + N S in the Pauli quotient
  NCPoly quotient_sn;
};

inline MagicSymbolicReport magic_square_identities() {
  MagicSymbolicReport r;
  const Presentation free = chsh_presentation(false);
  const Presentation pauli = chsh_presentation(true);
  auto build = [](const Presentation& p, bool south_north) {
    const NCPoly west = p.monomial("u⊗v"), east = p.monomial("v⊗u");
    const NCPoly north = p.monomial("u⊗u"), south = p.monomial("v⊗v");
    return mul(west, east, p) + (south_north ? mul(south, north, p) : mul(north, south, p));
  };
  r.we_plus_ns = build(free, false);
  r.we_plus_sn = build(free, true);
  const NCPoly anti_b = anticommutator(free.monomial("1⊗u"), free.monomial("1⊗v"), free);
  const NCPoly anti_a = anticommutator(free.monomial("u"), free.monomial("v"), free);
  r.residual_ns = normalize(r.we_plus_ns - mul(free.monomial("uv"), anti_b, free), free);
  r.residual_sn = normalize(r.we_plus_sn - mul(anti_a, free.monomial("1⊗vu"), free), free);
  r.quotient_ns = build(pauli, false);
  r.quotient_sn = build(pauli, true);
  return r;
}

struct CentralityReport {
  double matrix_commutator = 0.0;  // max ||[{u,v}(x)1, w]|| over Pauli words w
  NCPoly symbolic_u;               // u{u,v} - {u,v}u, free algebra
  NCPoly symbolic_v;
};

inline CentralityReport centrality_check() {
  CentralityReport r;
  const Presentation free = chsh_presentation(false);
  const Presentation p = chsh_presentation(true);
  const Representation rep = chsh_pauli_rep(p);
  const NCPoly anti = anticommutator(free.monomial("u"), free.monomial("v"), free);
  const Matrix a = evaluate(anti, free, rep);
  const AlgebraBasis words = pauli2x2_basis();
  for (const auto& w : words.elements()) {
    r.matrix_commutator = std::max(r.matrix_commutator, commutator(a, w).max_abs());
  }
  r.symbolic_u = commutator(free.monomial("u"), anti, free);
  r.symbolic_v = commutator(free.monomial("v"), anti, free);
  return r;
}

}  // namespace nlgames
