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

// XOR game values.
//
// Biases are unnormalized: bias = sum_{x,y} beta(x,y) a(x) b(y) for +-1
// strategies, and omega = (|win| + bias) / (2 |X x Y|).
//
// The quantum bias is estimated in the vector model: maximize
// sum beta(x,y) <a_x, b_y> over real unit vectors of dimension |X| + |Y| by
// alternating closed-form updates from seeded random starts. The result is a
// lower bound; it comes with a concrete strategy (Clifford observables and a
// maximally entangled state) that attains it.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "nlgames/error.hpp"
#include "nlgames/games.hpp"
#include "nlgames/linalg.hpp"
#include "nlgames/ncalg.hpp"
#include "nlgames/random.hpp"

namespace nlgames {

inline constexpr std::size_t kMaxBruteForceQuestions = 20;

struct ClassicalResult {
  double bias = 0.0;
  std::vector<int> a;  // +-1 per question of player 0
  std::vector<int> b;  // +-1 per question of player 1
};

/// Exhaustive maximization over deterministic +-1 strategies. Ties go to the
/// lexicographically smallest (a, b), with +1 ordered before -1.
inline ClassicalResult classical_bias(const XorGameSpec& g) {
  validate(g);
  const std::size_t nx = g.questions_a.size(), ny = g.questions_b.size();
  if (nx > kMaxBruteForceQuestions || ny > kMaxBruteForceQuestions) {
    throw Error(ErrorCode::kTooLarge, "brute force limited to 20 questions per player");
  }
  ClassicalResult best;
  long long best_value = std::numeric_limits<long long>::min();
  std::vector<int> a(nx), b(ny);
  // For fixed a, each b(y) is chosen independently, so scanning all a in
  // lexicographic order covers every (a, b).
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nx); ++mask) {
    for (std::size_t x = 0; x < nx; ++x) a[x] = (mask >> (nx - 1 - x)) & 1 ? -1 : 1;
    long long value = 0;
    for (std::size_t y = 0; y < ny; ++y) {
      long long col = 0;
      for (std::size_t x = 0; x < nx; ++x) col += g.beta[x][y] * a[x];
      b[y] = col < 0 ? -1 : 1;
      value += col * b[y];
    }
    if (value > best_value) {
      best_value = value;
      best.a = a;
      best.b = b;
    }
  }
  best.bias = static_cast<double>(best_value);
  return best;
}

struct TsirelsonResult {
  double bias = 0.0;
  std::vector<std::vector<double>> a;  // unit vectors, one per question
  std::vector<std::vector<double>> b;
  std::size_t best_restart = 0;
  int iterations = 0;      // of the best restart
  bool converged = false;  // of the best restart
  std::size_t restarts = 0;
};

inline constexpr double kStallTolerance = 1e-12;
inline constexpr int kMaxAscentIterations = 10000;

namespace detail {

inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

/// Replaces v with the normalized weighted sum unless that sum vanishes.
inline void assign_normalized(std::vector<double>& v, const std::vector<double>& sum) {
  const double n = std::sqrt(dot(sum, sum));
  if (n <= 1e-300) return;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = sum[i] / n;
}

inline double vector_bias(const XorGameSpec& g, const std::vector<std::vector<double>>& a,
                          const std::vector<std::vector<double>>& b) {
  double s = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      if (g.beta[x][y] != 0) s += g.beta[x][y] * dot(a[x], b[y]);
  return s;
}

inline std::vector<double> random_real_unit(std::size_t d, Lcg64& rng) {
  std::vector<double> v(d);
  double n = 0.0;
  while (n < 1e-6) {
    for (auto& z : v) z = rng.normal();
    n = std::sqrt(dot(v, v));
  }
  for (auto& z : v) z /= n;
  return v;
}

}  // namespace detail

/// Best vector-model bias over `restarts` seeded starts. Restart r draws
/// from Lcg64::for_stream(seed, r); ties keep the lowest restart index.
inline TsirelsonResult tsirelson_bias(const XorGameSpec& g, std::size_t restarts,
                                      std::uint64_t seed) {
  validate(g);
  if (restarts == 0) throw Error(ErrorCode::kSchemaError, "restarts must be >= 1");
  const std::size_t nx = g.questions_a.size(), ny = g.questions_b.size();
  const std::size_t d = nx + ny;
  TsirelsonResult best;
  best.bias = -std::numeric_limits<double>::infinity();
  best.restarts = restarts;
  for (std::size_t r = 0; r < restarts; ++r) {
    Lcg64 rng = Lcg64::for_stream(seed, r);
    std::vector<std::vector<double>> a(nx), b(ny);
    for (auto& v : a) v = detail::random_real_unit(d, rng);
    for (auto& v : b) v = detail::random_real_unit(d, rng);
    double value = detail::vector_bias(g, a, b);
    bool converged = false;
    int it = 0;
    std::vector<double> sum(d);
    for (; it < kMaxAscentIterations && !converged; ++it) {
      for (std::size_t y = 0; y < ny; ++y) {
        std::fill(sum.begin(), sum.end(), 0.0);
        for (std::size_t x = 0; x < nx; ++x)
          for (std::size_t i = 0; i < d; ++i) sum[i] += g.beta[x][y] * a[x][i];
        detail::assign_normalized(b[y], sum);
      }
      for (std::size_t x = 0; x < nx; ++x) {
        std::fill(sum.begin(), sum.end(), 0.0);
        for (std::size_t y = 0; y < ny; ++y)
          for (std::size_t i = 0; i < d; ++i) sum[i] += g.beta[x][y] * b[y][i];
        detail::assign_normalized(a[x], sum);
      }
      const double next = detail::vector_bias(g, a, b);
      converged = std::abs(next - value) <= kStallTolerance;
      value = next;
    }
    if (value > best.bias) {
      best.bias = value;
      best.a = std::move(a);
      best.b = std::move(b);
      best.best_restart = r;
      best.iterations = it;
      best.converged = converged;
    }
  }
  return best;
}

/// k pairwise anticommuting Hermitian involutions on (C^2)^{ceil(k/2)}
/// (Jordan-Wigner).
inline std::vector<Matrix> clifford_generators(std::size_t k) {
  const std::size_t qubits = std::max<std::size_t>(1, (k + 1) / 2);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t site = i / 2;
    Matrix m = Matrix::identity(1);
    for (std::size_t q = 0; q < qubits; ++q) {
      if (q < site) {
        m = kron(m, pauli::Z());
      } else if (q == site) {
        m = kron(m, i % 2 == 0 ? pauli::X() : pauli::Y());
      } else {
        m = kron(m, pauli::I());
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

/// Quantum strategy realizing vector-model correlations <a_x, b_y>.
struct XorCertificate {
  Presentation presentation;
  Representation rep;
  Vector state;  // maximally entangled on C^D (x) C^D
  double value = 0.0;  // <state| bias |state>
};

inline constexpr std::size_t kMaxCertificateRank = 8;

/// A_x = sum_i a_x,i g_i and B_y = sum_i b_y,i g_i^T after projecting the
/// vectors onto an orthonormal basis of their span. Throws TooLarge if that
/// span exceeds kMaxCertificateRank.
inline XorCertificate xor_certificate(const XorGameSpec& g, const TsirelsonResult& t) {
  const std::size_t nx = t.a.size(), ny = t.b.size();
  const std::size_t d = nx == 0 ? 0 : t.a.front().size();
  // Orthonormal basis of span{a_x, b_y} from the eigenvectors of sum v v^T.
  Matrix scatter(d, d);
  auto accumulate = [&](const std::vector<double>& v) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) scatter(i, j) += v[i] * v[j];
  };
  for (const auto& v : t.a) accumulate(v);
  for (const auto& v : t.b) accumulate(v);
  const auto eig = hermitian_eig(scatter);
  const std::size_t k = std::max<std::size_t>(1, numerical_rank(eig, 1e-12));
  if (k > kMaxCertificateRank) throw Error(ErrorCode::kTooLarge, "vector span too large");
  std::vector<std::vector<double>> frame;
  for (std::size_t c = d - k; c < d; ++c) {
    std::vector<double> col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = eig.eigenvectors(i, c).real();
    frame.push_back(std::move(col));
  }
  const auto gammas = clifford_generators(k);
  const std::size_t dim = gammas.front().rows();
  auto observable = [&](const std::vector<double>& v, bool transposed) {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < k; ++i) {
      const double c = detail::dot(v, frame[i]);
      m += (transposed ? gammas[i].transpose() : gammas[i]) * c;
    }
    // Renormalize away the part of v outside the numerical span.
    const double n = std::sqrt(std::max(0.0, (m * m).trace().real() / static_cast<double>(dim)));
    return n > 0.0 ? m * (1.0 / n) : Matrix::identity(dim);
  };
  XorCertificate cert{xor_presentation(g), {}, {}, 0.0};
  cert.rep = Representation(cert.presentation);
  for (std::size_t x = 0; x < nx; ++x) cert.rep.set(cert.presentation, x, observable(t.a[x], false));
  for (std::size_t y = 0; y < ny; ++y) {
    cert.rep.set(cert.presentation, nx + y, observable(t.b[y], true));
  }
  cert.state.assign(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) cert.state[i * dim + i] = 1.0 / std::sqrt(double(dim));
  cert.value = expectation(cert.state, evaluate(bias_polynomial(g), cert.presentation, cert.rep))
                   .real();
  return cert;
}

/// Flips the sign of player 0's observables: each word picks up
/// (-1)^(number of player-0 letters).
inline NCPoly sign_flip(const NCPoly& p, const Presentation& pres) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    int alice = 0;
    for (auto g : w) alice += pres.generator(g).player == 0 ? 1 : 0;
    out.add_term(w, alice % 2 == 0 ? c : -c);
  }
  return out;
}

struct SpectrumReport {
  std::vector<double> eigenvalues;
  double max_asymmetry = 0.0;
  double norm = 0.0;
  bool passed = false;
};

/// Spectrum of the bias operator in `rep` and its deviation from -spectrum.
inline SpectrumReport spectrum_symmetry_check(const XorGameSpec& g, const Representation& rep,
                                              double tol = 1e-9) {
  const Presentation pres = xor_presentation(g);
  const Matrix m = evaluate(bias_polynomial(g), pres, rep);
  SpectrumReport r;
  r.eigenvalues = hermitian_eig(m).eigenvalues;
  const std::size_t n = r.eigenvalues.size();
  for (std::size_t i = 0; i < n; ++i) {
    r.max_asymmetry = std::max(r.max_asymmetry, std::abs(r.eigenvalues[i] + r.eigenvalues[n - 1 - i]));
  }
  r.norm = n == 0 ? 0.0 : std::max(std::abs(r.eigenvalues.front()), std::abs(r.eigenvalues.back()));
  r.passed = r.max_asymmetry <= tol;
  return r;
}

/// Player-0 images (cos t Z + sin t X) (x) R with R a random involution on
/// C^m, player-1 images random involutions on C^n. Y (x) 1 anticommutes
/// with every player-0 image.
inline Representation random_anticommuting_pair_rep(const Presentation& pres, std::size_t m,
                                                    std::size_t n, Lcg64& rng) {
  Representation rep(pres);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t g = 0; g < pres.size(); ++g) {
    if (pres.generator(g).player == 0) {
      const double t = two_pi * rng.uniform();
      const Matrix qubit = std::cos(t) * pauli::Z() + std::sin(t) * pauli::X();
      rep.set(pres, g, kron(qubit, random_involution(m, rng)));
    } else {
      rep.set(pres, g, random_involution(n, rng));
    }
  }
  return rep;
}

struct BiasReport {
  ClassicalResult classical;
  TsirelsonResult quantum;
  std::size_t win_count = 0;
  std::size_t num_cells = 0;
  double omega_classical = 0.0;
  double omega_quantum = 0.0;
};

inline double omega(std::size_t win_count, double bias, std::size_t cells) {
  return (static_cast<double>(win_count) + bias) / (2.0 * static_cast<double>(cells));
}

inline BiasReport bias_report(const XorGameSpec& g, std::size_t restarts, std::uint64_t seed) {
  BiasReport r;
  r.classical = classical_bias(g);
  r.quantum = tsirelson_bias(g, restarts, seed);
  r.win_count = g.win_count();
  r.num_cells = g.num_cells();
  r.omega_classical = omega(r.win_count, r.classical.bias, r.num_cells);
  r.omega_quantum = omega(r.win_count, r.quantum.bias, r.num_cells);
  return r;
}

/// Best deterministic winning probability of a general game; a(x), b(y) are
/// answer indices.
struct ClassicalValue {
  double value = 0.0;
  std::size_t wins = 0;
  std::vector<std::size_t> a, b;
};

inline ClassicalValue classical_value(const GameSpec& g) {
  validate(g);
  const std::size_t nx = g.questions_a.size(), ny = g.questions_b.size();
  double combos = 1.0;
  for (std::size_t x = 0; x < nx; ++x) combos *= static_cast<double>(g.answers);
  if (ny > kMaxBruteForceQuestions || combos > double(std::uint64_t{1} << kMaxBruteForceQuestions)) {
    throw Error(ErrorCode::kTooLarge, "brute force limited to 2^20 strategies per player");
  }
  ClassicalValue best;
  bool first = true;
  std::vector<std::size_t> a(nx, 0), b(ny, 0);
  const auto total = static_cast<std::uint64_t>(combos);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t x = nx; x-- > 0;) {
      a[x] = c % g.answers;
      c /= g.answers;
    }
    std::size_t wins = 0;
    for (std::size_t y = 0; y < ny; ++y) {
      std::size_t best_col = 0;
      b[y] = 0;
      for (std::size_t ans = 0; ans < g.answers; ++ans) {
        std::size_t col = 0;
        for (std::size_t x = 0; x < nx; ++x) col += g.win.contains({x, y, a[x], ans}) ? 1 : 0;
        if (col > best_col) {
          best_col = col;
          b[y] = ans;
        }
      }
      wins += best_col;
    }
    if (first || wins > best.wins) {
      first = false;
      best.wins = wins;
      best.a = a;
      best.b = b;
    }
  }
  best.value = static_cast<double>(best.wins) / static_cast<double>(g.num_cells());
  return best;
}

struct PseudoTelepathyReport {
  double classical_value = 0.0;
  bool classical_perfect = false;
  double quantum_lower = 0.0;
  bool xor_convertible = false;
  bool consistent = true;
};

/// Compares the classical value with a quantum lower bound: the vector model
/// for XOR games, otherwise the best norm of the game operator over seeded
/// random qubit strategies. A quantum value of 1 without a perfect classical
/// strategy would be a binary-output pseudo-telepathy game, which cannot
/// exist; `consistent` records that this did not happen.
inline PseudoTelepathyReport pseudo_telepathy_check(const GameSpec& g, std::size_t restarts,
                                                    std::uint64_t seed, double tol = 1e-6) {
  validate(g);
  if (g.answers != 2) throw Error(ErrorCode::kNonBinaryAnswers, "binary answers required");
  PseudoTelepathyReport r;
  const ClassicalValue cv = classical_value(g);
  r.classical_value = cv.value;
  r.classical_perfect = cv.wins == g.num_cells();
  r.quantum_lower = cv.value;
  try {
    const XorGameSpec x = xor_from_game(g);
    r.xor_convertible = true;
    const auto t = tsirelson_bias(x, restarts, seed);
    r.quantum_lower = std::max(r.quantum_lower, omega(x.win_count(), t.bias, x.num_cells()));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotParityDetermined) throw;
    const Presentation pres = game_presentation(g);
    const NCPoly game = game_polynomial(g);
    for (std::size_t s = 0; s < restarts; ++s) {
      Lcg64 rng = Lcg64::for_stream(seed, s);
      Representation rep(pres);
      for (std::size_t k = 0; k < pres.size(); ++k) rep.set(pres, k, random_involution(2, rng));
      const double v = hermitian_eig(evaluate(game, pres, rep)).eigenvalues.back() /
                       static_cast<double>(g.num_cells());
      r.quantum_lower = std::max(r.quantum_lower, v);
    }
  }
  r.consistent = !(r.quantum_lower >= 1.0 - tol && !r.classical_perfect);
  return r;
}

}  // namespace nlgames
