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

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "nlgames/linalg.hpp"

namespace nlgames {

/// 64-bit linear congruential generator (Knuth's MMIX constants):
///
///   state <- state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
///
/// uniform() takes the top 53 bits of the new state; normal() is one
/// Box-Muller draw from two consecutive uniforms. The sequence is fixed so
/// seeded runs reproduce across platforms.
class Lcg64 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for restart `index` of a run seeded with `seed`.
  static Lcg64 for_stream(std::uint64_t seed, std::uint64_t index) {
    Lcg64 g(seed ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
    g.next();
    return g;
  }

  std::uint64_t next() {
    state_ = state_ * kMultiplier + kIncrement;
    return state_;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double normal() {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : (next() >> 11) % n; }

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
inline Matrix random_unitary(std::size_t n, Lcg64& rng) {
  Matrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector col(n);
    double len = 0.0;
    do {
      for (auto& z : col) z = Complex(rng.normal(), rng.normal());
      for (std::size_t k = 0; k < j; ++k) {
        const Vector prev = q.column(k);
        const Complex c = inner(prev, col);
        for (std::size_t i = 0; i < n; ++i) col[i] -= c * prev[i];
      }
      len = norm(col);
    } while (len < 1e-6);
    for (auto& z : col) z /= len;
    q.set_column(j, col);
  }
  return q;
}

/// Random Hermitian matrix with Gaussian entries.
inline Matrix random_hermitian(std::size_t n, Lcg64& rng) {
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = Complex(rng.normal(), rng.normal());
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

/// Random self-adjoint unitary U diag(+-1) U*. With `balanced`, the +1 and -1
/// eigenspaces have equal dimension (n must be even).
inline Matrix random_involution(std::size_t n, Lcg64& rng, bool balanced = false) {
  std::vector<double> signs(n);
  for (std::size_t i = 0; i < n; ++i) {
    signs[i] = balanced ? (i < n / 2 ? 1.0 : -1.0) : (rng.uniform() < 0.5 ? 1.0 : -1.0);
  }
  const Matrix u = random_unitary(n, rng);
  return u * Matrix::diagonal(signs) * u.adjoint();
}

/// Random unit vector in C^n.
inline Vector random_unit_vector(std::size_t n, Lcg64& rng) {
  Vector v(n);
  for (auto& z : v) z = Complex(rng.normal(), rng.normal());
  return normalized(std::move(v));
}

}  // namespace nlgames
