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

#include "nlgames/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "nlgames/random.hpp"

namespace nlgames {
namespace {

using pauli::X;
using pauli::Z;

Matrix chsh_matrix() {
  return kron(Z(), Z()) + kron(Z(), X()) + kron(X(), Z()) - kron(X(), X());
}

double max_abs_eigenvalue(const Matrix& h) {
  const auto e = hermitian_eig(h);
  return std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(Matrix::identity(2), Matrix::identity(2)), Matrix::identity(4));
}

TEST(Kron, EntriesFollowDefinition) {
  const Matrix zx = kron(Z(), X());
  ASSERT_EQ(zx.rows(), 4u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          EXPECT_EQ(zx(2 * i + k, 2 * j + l), Z()(i, j) * X()(k, l));
  const Matrix expected{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}};
  EXPECT_EQ(zx, expected);
}

TEST(Kron, NormIsMultiplicative) {
  Lcg64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_hermitian(2, rng);
    const Matrix b = random_hermitian(2, rng);
    // Oracle: spectra of the factors, not operator_norm.
    const double expected = max_abs_eigenvalue(a) * max_abs_eigenvalue(b);
    EXPECT_NEAR(operator_norm(kron(a, b)), expected, 1e-10 * (1 + expected));
    EXPECT_NEAR(max_abs_eigenvalue(kron(a, b)), expected, 1e-10 * (1 + expected));
  }
}

TEST(Kron, MixedProductProperty) {
  Lcg64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_hermitian(2, rng), b = random_hermitian(4, rng);
    const Matrix c = random_hermitian(2, rng), d = random_hermitian(4, rng);
    EXPECT_LE(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)), 1e-12 * 100);
    EXPECT_LE(max_abs_diff((a * c).adjoint(), c.adjoint() * a.adjoint()), 1e-12);
  }
}

TEST(HermitianEig, PauliZ) {
  const auto e = hermitian_eig(Z());
  ASSERT_EQ(e.eigenvalues.size(), 2u);
  EXPECT_NEAR(e.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues[1], 1.0, 1e-15);
}

TEST(HermitianEig, ChshSpectrum) {
  const auto e = hermitian_eig(chsh_matrix());
  const double t = 2 * std::sqrt(2.0);
  ASSERT_EQ(e.eigenvalues.size(), 4u);
  EXPECT_NEAR(e.eigenvalues[0], -t, 1e-12);
  EXPECT_NEAR(e.eigenvalues[1], 0.0, 1e-12);
  EXPECT_NEAR(e.eigenvalues[2], 0.0, 1e-12);
  EXPECT_NEAR(e.eigenvalues[3], t, 1e-12);
}

TEST(HermitianEig, RandomReconstruction) {
  Lcg64 rng(3);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 16u, 32u}) {
    const Matrix h = random_hermitian(n, rng);
    const auto e = hermitian_eig(h);
    const Matrix& u = e.eigenvectors;
    const double fro = h.frobenius_norm();
    EXPECT_LE((u.adjoint() * u - Matrix::identity(n)).frobenius_norm(), 1e-10) << n;
    EXPECT_LE((h * u - u * Matrix::diagonal(e.eigenvalues)).frobenius_norm(),
              1e-10 * (1 + fro))
        << n;
    EXPECT_LE((u * Matrix::diagonal(e.eigenvalues) * u.adjoint() - h).frobenius_norm(),
              1e-10 * (1 + fro));
    EXPECT_TRUE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
    double sum = 0.0;
    for (double x : e.eigenvalues) sum += x;
    EXPECT_NEAR(sum, h.trace().real(), 1e-10 * (1 + fro));
  }
}

TEST(HermitianEig, PhaseConventionAndDeterminism) {
  Lcg64 rng(5);
  const Matrix h = random_hermitian(6, rng);
  const auto a = hermitian_eig(h);
  const auto b = hermitian_eig(h);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  for (std::size_t j = 0; j < 6; ++j) {
    const Vector v = a.eigenvectors.column(j);
    for (const auto& z : v) {
      if (std::abs(z) > 1e-8) {
        EXPECT_NEAR(z.imag(), 0.0, 1e-14);
        EXPECT_GT(z.real(), 0.0);
        break;
      }
    }
  }
}

TEST(HermitianEig, DegenerateClusterIsDeterministic) {
  // Identity-plus-projector has a threefold degenerate eigenvalue.
  Lcg64 rng(9);
  const Matrix u = random_unitary(4, rng);
  const double vals[] = {1, 1, 1, 2};
  const Matrix h = u * Matrix::diagonal(vals) * u.adjoint();
  const auto e = hermitian_eig(h);
  EXPECT_NEAR(e.eigenvalues[3], 2.0, 1e-12);
  for (std::size_t j = 0; j + 1 < 3; ++j) {
    EXPECT_FALSE(detail::lex_less(e.eigenvectors.column(j + 1), e.eigenvectors.column(j)));
  }
}

TEST(HermitianEig, Errors) {
  EXPECT_THROW(
      {
        try {
          hermitian_eig(Matrix(2, 3));
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::kNotSquare);
          throw;
        }
      },
      Error);
  const Matrix skew{{1, 2}, {0, 1}};
  try {
    hermitian_eig(skew);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotHermitian);
  }
}

TEST(OperatorNorm, Values) {
  EXPECT_NEAR(operator_norm(Matrix::identity(4)), 1.0, 1e-15);
  EXPECT_NEAR(operator_norm(chsh_matrix()), 2 * std::sqrt(2.0), 1e-9);
}

TEST(OperatorNorm, ZZPlusXXViaBellBasis) {
  const Matrix m = kron(Z(), Z()) + kron(X(), X());
  // Bell basis oracle: Phi+ has eigenvalue 2, Psi- has -2, the rest 0.
  const double r = 1 / std::sqrt(2.0);
  const Vector phi_plus{r, 0, 0, r};
  const Vector psi_minus{0, r, -r, 0};
  EXPECT_LE(max_abs_diff(m * phi_plus, Vector{2 * r, 0, 0, 2 * r}), 1e-15);
  EXPECT_LE(max_abs_diff(m * psi_minus, Vector{0, -2 * r, 2 * r, 0}), 1e-15);
  EXPECT_NEAR(operator_norm(m), 2.0, 1e-12);
}

TEST(OperatorNorm, SubmultiplicativeAndUnitarilyInvariant) {
  Lcg64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_hermitian(4, rng) * Complex(0.3, 0.7);
    const Matrix b = random_hermitian(4, rng);
    EXPECT_LE(operator_norm(a * b), operator_norm(a) * operator_norm(b) * (1 + 1e-12));
    const Matrix u = hermitian_eig(random_hermitian(4, rng)).eigenvectors;
    EXPECT_NEAR(operator_norm(u * a * u.adjoint()), operator_norm(a), 1e-10);
  }
}

TEST(Commutators, PauliValues) {
  EXPECT_EQ(anticommutator(Z(), X()).max_abs(), 0.0);
  EXPECT_EQ(commutator(Z(), Z()).max_abs(), 0.0);
  const Matrix c = commutator(Z(), X());
  EXPECT_LE(max_abs_diff(c, 2.0 * (Z() * X())), 1e-15);
  EXPECT_NEAR(operator_norm(c), 2.0, 1e-12);
  try {
    commutator(Z(), Matrix::identity(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

}  // namespace
}  // namespace nlgames
