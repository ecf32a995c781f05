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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Values that disagree with the expected
// figure are printed so a failure can be diagnosed from the log alone.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlgames/casebook.hpp"
#include "nlgames/cli.hpp"
#include "nlgames/games.hpp"
#include "nlgames/gns.hpp"
#include "nlgames/random.hpp"
#include "nlgames/xor.hpp"

namespace {

using namespace nlgames;

const double kSqrt2 = std::sqrt(2.0);

// Accumulates sub-checks for one criterion.
struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void near(double value, double expected, double tol, const std::string& what) {
    if (!(std::abs(value - expected) <= tol)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s = %.15g, expected %.15g +- %.1e", what.c_str(), value,
                    expected, tol);
      ok = false;
      notes.emplace_back(buf);
    }
  }
};

std::string read(const std::string& name) {
  std::ifstream in(std::string(NLGAMES_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Joint enumeration over every deterministic strategy pair.
double brute_force_bias(const XorGameSpec& g) {
  const std::size_t nx = g.beta.size(), ny = g.beta[0].size(), n = nx + ny;
  double best = -1e300;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double v = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        const int a = (mask >> x) & 1 ? -1 : 1, b = (mask >> (nx + y)) & 1 ? -1 : 1;
        v += g.beta[x][y] * a * b;
      }
    best = std::max(best, v);
  }
  return best;
}

void criterion_1(Criterion& c) {
  const auto cert = chsh_certificate();
  c.near(cert.norm, 2 * kSqrt2, 1e-9, "operator_norm");
  c.expect(cert.top_multiplicity == 1, "top multiplicity is not 1");
  c.near(cert.spectral_gap, 2 * kSqrt2, 1e-9, "spectral_gap");
  std::ostringstream out, err;
  const int code = cli::run({"verify", "chsh", "--json"}, out, err);
  c.expect(code == 0, "verify chsh exit code " + std::to_string(code));
  if (code == 0) {
    c.near(nlohmann::json::parse(out.str())["operator_norm"].get<double>(), 2 * kSqrt2, 1e-9,
           "cli operator_norm");
  }
}

void criterion_2(Criterion& c) {
  const auto cert = chsh_certificate();
  const double r = 1 / kSqrt2;
  Table4 expected{};
  expected[0][0] = 1;
  expected[1][1] = expected[1][2] = expected[2][1] = r;
  expected[2][2] = -r;
  expected[3][3] = -1;
  const char* words[] = {"1", "u", "v", "uv"};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) {
      const std::string at = std::string(words[i]) + "(x)" + words[k];
      c.near(cert.correlation_table[i][k], expected[i][k], 1e-9, "eigenvector " + at);
      c.near(cert.trace_table[i][k], expected[i][k], 1e-9, "trace formula " + at);
    }
  c.near(cert.table_agreement, 0.0, 1e-9, "table agreement");
}

void criterion_3(Criterion& c) {
  const auto cert = chsh_certificate();
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) {
      double row = 0.0;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          const double p = cert.probability[x][y][a][b];
          row += p;
          c.near(p, ((a ^ b) == (x & y) ? 1 + 1 / kSqrt2 : 1 - 1 / kSqrt2) / 4, 1e-9,
                 "p(" + std::to_string(a) + std::to_string(b) + "|" + std::to_string(x) +
                     std::to_string(y) + ")");
        }
      c.near(row, 1.0, 1e-12, "row sum");
    }
}

void criterion_4(Criterion& c) {
  c.expect(chsh_squared_identity().residual.is_zero(), "CHSH^2 - (4 - [u,v](x)[u,v]) != 0");

  const auto g = std::get<GameSpec>(parse_game(read("chsh_general.json")));
  const auto p = game_presentation(g);
  const NCPoly game_residual =
      normalize(2.0 * game_polynomial(g) - 4.0 * p.one() - bias_polynomial(xor_from_game(g)), p);
  c.expect(game_residual.is_zero(), "2 game - 4 - bias = " + render(game_residual, p));

  const auto sym = magic_square_identities();
  c.expect(sym.residual_ns.is_zero(), "WE + NS - uv(x){u,v} != 0");

  const auto pauli = chsh_presentation(true);
  const NCPoly uvu = normalize(pauli.monomial("uvu") + pauli.monomial("v"), pauli);
  c.expect(uvu.is_zero(), "uvu + v = " + render(uvu, pauli));
}

void criterion_5(Criterion& c) {
  const auto chsh = std::get<XorGameSpec>(parse_game(read("chsh.json")));
  const auto triangle = std::get<XorGameSpec>(parse_game(read("triangle_coloring.json")));
  c.near(brute_force_bias(chsh), 2.0, 0.0, "CHSH brute-force bias");
  c.near(classical_bias(chsh).bias, 2.0, 0.0, "CHSH classical_bias");
  c.near(omega(chsh.win_count(), classical_bias(chsh).bias, chsh.num_cells()), 0.75, 1e-15,
         "CHSH omega");
  c.near(brute_force_bias(triangle), 1.0, 0.0, "triangle brute-force bias");
  c.near(classical_bias(triangle).bias, 1.0, 0.0, "triangle classical_bias");
  c.near(tsirelson_bias(chsh, 20, 1).bias, 2 * kSqrt2, 1e-6, "CHSH tsirelson_bias");
}

void criterion_6(Criterion& c) {
  const Matrix ket0{{1, 0}, {0, 0}};
  const auto vec = gns(StateFunctional::from_density(pauli_basis(), ket0));
  c.expect(vec.hilbert_dim == 2, "vector state dim " + std::to_string(vec.hilbert_dim));
  c.near(vec.reproduction_residual, 0.0, 1e-9, "vector state residual");

  const auto tr = gns(StateFunctional::from_density(pauli_basis(), 0.5 * Matrix::identity(2)));
  c.expect(tr.hilbert_dim == 4, "trace state dim " + std::to_string(tr.hilbert_dim));
  c.near(tr.reproduction_residual, 0.0, 1e-9, "trace state residual");

  const Matrix chsh = kron(pauli::Z(), pauli::Z()) + kron(pauli::Z(), pauli::X()) +
                      kron(pauli::X(), pauli::Z()) - kron(pauli::X(), pauli::X());
  const Vector psi = hermitian_eig(chsh).eigenvectors.column(3);
  const auto g = gns(StateFunctional::from_density(matrix_units(4), outer(psi, psi)));
  c.expect(g.hilbert_dim == 4, "CHSH state dim " + std::to_string(g.hilbert_dim));
  c.expect(minimal_quotient_dim(g) == 16,
           "CHSH quotient dim " + std::to_string(minimal_quotient_dim(g)));
  c.near(g.reproduction_residual, 0.0, 1e-9, "CHSH state residual");

  Lcg64 rng(2026);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t copies = 1 + rng.below(2);
    const std::size_t dim = 4 + 4 * copies;
    const Matrix u = random_unitary(dim, rng);
    const double t = 2.0 * std::acos(-1.0) * rng.uniform();
    std::vector<Matrix> rep2;
    for (std::size_t i = 0; i < g.rep.size(); ++i) {
      const Matrix block = kron(g.state.basis()[i], Matrix::identity(copies));
      rep2.push_back(u * direct_sum(g.rep[i], block) * u.adjoint());
    }
    Vector anc(4 * copies, 0.0);
    for (std::size_t i = 0; i < 4; ++i) anc[i * copies] = psi[i];
    Vector vec2 = g.cyclic;
    for (auto& z : vec2) z *= std::cos(t);
    for (const auto& z : anc) vec2.push_back(z * std::sin(t));
    vec2 = u * vec2;
    try {
      const Matrix v = embed_dilation(g, rep2, vec2);
      c.near(max_abs_diff(v.adjoint() * v, Matrix::identity(4)), 0.0, 1e-8,
             "padding " + std::to_string(trial) + " ||V*V - I||");
    } catch (const Error& e) {
      c.expect(false, "padding " + std::to_string(trial) + ": " + e.what());
    }
  }
}

void criterion_7(Criterion& c) {
  const auto sq = magic_square();
  const auto rs = verify_magic(sq, 1e-12);
  c.expect(sq.lines.size() == 6, "magic square line count");
  const int signs[] = {1, 1, 1, 1, -1, 1};
  for (std::size_t i = 0; i < sq.lines.size() && i < 6; ++i) {
    c.expect(sq.lines[i].sign == signs[i], "magic square sign of line " + std::to_string(i));
    c.near(rs.line_residuals[i], 0.0, 1e-12, "magic square line " + std::to_string(i));
  }
  c.expect(sq.dim() == 4, "magic square dim");
  c.near(magic_game_probabilities(sq), 1.0, 1e-12, "magic square winning probability");

  const auto pg = magic_pentagram();
  const auto rp = verify_magic(pg, 1e-12);
  c.expect(pg.lines.size() == 5, "pentagram line count");
  int negative = 0;
  for (std::size_t i = 0; i < pg.lines.size(); ++i) {
    negative += pg.lines[i].sign < 0;
    c.near(rp.line_residuals[i], 0.0, 1e-12, "pentagram line " + std::to_string(i));
  }
  c.expect(negative == 1, "pentagram should have exactly one -I line");
  c.expect(pg.dim() == 8, "pentagram dim");
  c.near(magic_game_probabilities(pg), 1.0, 1e-12, "pentagram winning probability");
}

XorGameSpec random_xor(Lcg64& rng) {
  XorGameSpec g;
  const std::size_t nx = 1 + rng.below(3), ny = 1 + rng.below(3);
  g.questions_a = detail::numbered(nx);
  g.questions_b = detail::numbered(ny);
  g.beta.assign(nx, std::vector<int>(ny));
  for (auto& row : g.beta)
    for (auto& b : row) b = static_cast<int>(rng.below(3)) - 1;
  return g;
}

void criterion_8(Criterion& c) {
  Lcg64 rng(8);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_xor(rng);
    const auto p = xor_presentation(g);
    const auto rep = random_anticommuting_pair_rep(p, 1 + rng.below(2), 2, rng);
    worst = std::max(worst, spectrum_symmetry_check(g, rep).max_asymmetry);
    const NCPoly b = bias_polynomial(g);
    c.expect(sign_flip(b, p) == -b, "sign_flip(bias) != -bias");
    c.expect(sign_flip(sign_flip(b, p), p) == b, "sign_flip is not an involution");
  }
  c.near(worst, 0.0, 1e-9, "max spectrum asymmetry");

  for (int trial = 0; trial < 100; ++trial) {
    GameSpec g;
    g.questions_a = detail::numbered(1 + rng.below(2));
    g.questions_b = detail::numbered(1 + rng.below(2));
    for (std::size_t x = 0; x < g.questions_a.size(); ++x)
      for (std::size_t y = 0; y < g.questions_b.size(); ++y)
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b)
            if (rng.uniform() < 0.6) g.win.insert({x, y, a, b});
    const auto r = pseudo_telepathy_check(g, 20, static_cast<std::uint64_t>(trial), 1e-6);
    const bool near_one = r.quantum_lower >= 1.0 - 1e-6;
    c.expect(!near_one || r.classical_value == 1.0,
             "binary game " + std::to_string(trial) + " looks pseudo-telepathic");
  }

  const auto sq = magic_square();
  const auto sync = check_synchronous(trace_pair_state(sq.dim()), synchronicity_pairs(sq), 1e-9);
  c.near(sync.max_defect, 0.0, 1e-9, "synchronicity defect");
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<void(Criterion&)> body;
    double budget_seconds;  // <= 0 means no runtime bound
  };
  const std::vector<Entry> entries = {
      {"1 CHSH norm, multiplicity and gap", criterion_1, 1.0},
      {"2 CHSH correlation table (eigenvector and trace formula)", criterion_2, 0.0},
      {"3 CHSH probability table", criterion_3, 0.0},
      {"4 symbolic identities reduce to zero", criterion_4, 1.0},
      {"5 classical oracle and vector-model bias", criterion_5, 5.0},
      {"6 GNS dimensions, quotient and dilation embedding", criterion_6, 0.0},
      {"7 magic square and pentagram", criterion_7, 2.0},
      {"8 property suites", criterion_8, 0.0},
  };
  int failures = 0;
  for (const auto& e : entries) {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.body(c);
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (e.budget_seconds > 0 && secs >= e.budget_seconds) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "runtime %.3f s exceeds %.1f s", secs, e.budget_seconds);
      c.expect(false, buf);
    }
    std::printf("%s criterion %s (%.3f s)\n", c.ok ? "PASS" : "FAIL", e.name, secs);
    for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
    failures += c.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failures,
              entries.size());
  return failures == 0 ? 0 : 1;
}
