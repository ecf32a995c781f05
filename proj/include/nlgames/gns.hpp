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

// States on concrete matrix algebras and their GNS data.
//
// An algebra is given by a basis of matrices b_0..b_{n-1} spanning a
// multiplication-closed space that contains the identity. Elements are
// expanded in the basis by least squares against the Hilbert-Schmidt inner
// product. For a state phi the GNS space is the range of the Gram matrix
// G_ij = phi(b_i* b_j); with G = W diag(lambda) W* truncated to the r
// eigenvalues above 1e-9 * lambda_max,
//
//   coords   C = lambda^{1/2} W_r*          (column i = class of b_i)
//   rep(b_k) = C F_k W_r lambda^{-1/2}       (F_k: left multiplication by b_k)
//   cyclic   = C e,  where 1 = sum_l e_l b_l.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nlgames/error.hpp"
#include "nlgames/linalg.hpp"

namespace nlgames {

inline constexpr double kGramRankTolerance = 1e-9;
inline constexpr double kClosureTolerance = 1e-9;
inline constexpr double kStateTolerance = 1e-10;

/// Linear span of a list of matrices with least-squares coordinates.
class AlgebraBasis {
 public:
  AlgebraBasis() = default;

  explicit AlgebraBasis(std::vector<Matrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw Error(ErrorCode::kSchemaError, "empty algebra basis");
    dim_ = elements_.front().rows();
    for (const auto& b : elements_) {
      if (!b.is_square() || b.rows() != dim_) {
        throw Error(ErrorCode::kDimensionMismatch, "basis elements must share a square shape");
      }
    }
    const std::size_t n = elements_.size();
    Matrix hs(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        hs(i, j) = hs_inner(elements_[i], elements_[j]);
        hs(j, i) = std::conj(hs(i, j));
      }
    const auto eig = hermitian_eig(hs);
    if (numerical_rank(eig, 1e-12) != n) {
      throw Error(ErrorCode::kSchemaError, "basis elements are linearly dependent");
    }
    hs_inverse_ = hermitian_function(eig, [](double x) { return 1.0 / x; });
  }

  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t matrix_dim() const noexcept { return dim_; }
  const std::vector<Matrix>& elements() const noexcept { return elements_; }
  const Matrix& operator[](std::size_t i) const { return elements_[i]; }

  /// Coordinates of a in the basis; residual_out gets ||a - sum c_i b_i||_F.
  Vector coordinates(const Matrix& a, double* residual_out = nullptr) const {
    const std::size_t n = elements_.size();
    Vector h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = hs_inner(elements_[i], a);
    Vector c = hs_inverse_ * h;
    if (residual_out) {
      Matrix r = a;
      for (std::size_t i = 0; i < n; ++i) r -= elements_[i] * c[i];
      *residual_out = r.frobenius_norm();
    }
    return c;
  }

  /// Coordinates of a, or BasisNotClosed if a is not in the span.
  Vector expand(const Matrix& a) const {
    double residual = 0.0;
    Vector c = coordinates(a, &residual);
    if (residual > kClosureTolerance * (1.0 + a.frobenius_norm())) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "residual %.3g", residual);
      throw Error(ErrorCode::kBasisNotClosed, std::string("element outside the span, ") + buf);
    }
    return c;
  }

  Matrix combine(const Vector& c) const {
    Matrix r(dim_, dim_);
    for (std::size_t i = 0; i < elements_.size(); ++i) r += elements_[i] * c[i];
    return r;
  }

 private:
  std::vector<Matrix> elements_;
  std::size_t dim_ = 0;
  Matrix hs_inverse_;
};

/// A state on the algebra spanned by a basis: either phi(a) = tr(rho a) or
/// explicit values phi(b_i).
class StateFunctional {
 public:
  static StateFunctional from_density(AlgebraBasis basis, Matrix rho) {
    StateFunctional s;
    if (!rho.is_square() || rho.rows() != basis.matrix_dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "density has shape " + rho.shape());
    }
    if (!rho.is_finite() || hermitian_defect(rho) > kStateTolerance) {
      throw Error(ErrorCode::kNotAState, "density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0)) > kStateTolerance) {
      throw Error(ErrorCode::kNotAState, "density matrix trace is not 1");
    }
    if (hermitian_eig(rho).eigenvalues.front() < -kStateTolerance) {
      throw Error(ErrorCode::kNotAState, "density matrix is not positive");
    }
    s.basis_ = std::move(basis);
    s.density_ = std::move(rho);
    s.values_.reserve(s.basis_.size());
    for (const auto& b : s.basis_.elements()) s.values_.push_back((*s.density_ * b).trace());
    s.check_unital();
    return s;
  }

  /// Positivity of explicit values is checked by gns() via the Gram matrix.
  static StateFunctional from_values(AlgebraBasis basis, Vector values) {
    if (values.size() != basis.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "one value per basis element required");
    }
    StateFunctional s;
    s.basis_ = std::move(basis);
    s.values_ = std::move(values);
    s.check_unital();
    return s;
  }

  const AlgebraBasis& basis() const noexcept { return basis_; }
  const Vector& values() const noexcept { return values_; }
  const std::optional<Matrix>& density() const noexcept { return density_; }

  Complex operator()(const Matrix& a) const {
    if (density_) return (*density_ * a).trace();
    const Vector c = basis_.expand(a);
    Complex r{};
    for (std::size_t i = 0; i < c.size(); ++i) r += c[i] * values_[i];
    return r;
  }

 private:
  void check_unital() const {
    const Complex one = (*this)(Matrix::identity(basis_.matrix_dim()));
    if (std::abs(one - Complex(1.0)) > kStateTolerance) {
      throw Error(ErrorCode::kNotAState, "phi(1) != 1");
    }
  }

  AlgebraBasis basis_;
  std::optional<Matrix> density_;
  Vector values_;
};

/// Minimal dilation of a state.
struct GnsData {
  StateFunctional state;
  Matrix gram;
  std::size_t hilbert_dim = 0;
  Matrix coords;                 // hilbert_dim x basis size
  std::vector<Matrix> rep;       // per basis element, hilbert_dim square
  Vector cyclic;
  Matrix gram_range;             // W_r
  std::vector<double> gram_eigs; // retained eigenvalues
  std::vector<Matrix> structure; // F_k: column j = coordinates of b_k b_j
  double reproduction_residual = 0.0;
  double multiplicativity_defect = 0.0;
};

namespace detail {

inline std::vector<Matrix> structure_constants(const AlgebraBasis& basis) {
  const std::size_t n = basis.size();
  std::vector<Matrix> f(n, Matrix(n, n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) f[k].set_column(j, basis.expand(basis[k] * basis[j]));
  return f;
}

/// max_{i,j} || m(b_i) m(b_j) - sum_k c^{ij}_k m(b_k) ||, entrywise.
inline double multiplicativity_defect(const std::vector<Matrix>& m,
                                      const std::vector<Matrix>& structure) {
  const std::size_t n = m.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix expected(m[i].rows(), m[i].cols());
      for (std::size_t k = 0; k < n; ++k) {
        const Complex c = structure[i](k, j);
        if (c != Complex{}) expected += m[k] * c;
      }
      worst = std::max(worst, max_abs_diff(m[i] * m[j], expected));
    }
  return worst;
}

}  // namespace detail

inline GnsData gns(const StateFunctional& phi) {
  const AlgebraBasis& basis = phi.basis();
  const std::size_t n = basis.size();
  GnsData g{phi, Matrix(n, n), 0, {}, {}, {}, {}, {}, {}, 0.0, 0.0};
  g.structure = detail::structure_constants(basis);

  for (std::size_t i = 0; i < n; ++i) {
    const Matrix bi_star = basis[i].adjoint();
    for (std::size_t j = 0; j < n; ++j) g.gram(i, j) = phi(bi_star * basis[j]);
  }
  const double scale = std::max(1.0, g.gram.max_abs());
  if (hermitian_defect(g.gram) > kStateTolerance * scale) {
    throw Error(ErrorCode::kNotAState, "phi(x* y) is not Hermitian");
  }
  g.gram = 0.5 * (g.gram + g.gram.adjoint());
  const auto eig = hermitian_eig(g.gram);
  if (eig.eigenvalues.front() < -kStateTolerance * scale) {
    throw Error(ErrorCode::kNotAState, "phi is not positive on the algebra");
  }
  const std::size_t r = numerical_rank(eig, kGramRankTolerance);
  if (r == 0) throw Error(ErrorCode::kNotAState, "phi vanishes on the algebra");
  g.hilbert_dim = r;

  // Keep the top r eigenpairs (eigenvalues are ascending).
  g.gram_range = Matrix(n, r);
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t src = n - r + k;
    g.gram_range.set_column(k, eig.eigenvectors.column(src));
    g.gram_eigs.push_back(eig.eigenvalues[src]);
  }
  std::vector<double> sqrt_l, inv_sqrt_l;
  for (double l : g.gram_eigs) {
    sqrt_l.push_back(std::sqrt(l));
    inv_sqrt_l.push_back(1.0 / std::sqrt(l));
  }
  g.coords = Matrix::diagonal(sqrt_l) * g.gram_range.adjoint();
  const Matrix right = g.gram_range * Matrix::diagonal(inv_sqrt_l);
  for (std::size_t k = 0; k < n; ++k) g.rep.push_back(g.coords * g.structure[k] * right);

  g.cyclic = g.coords * basis.expand(Matrix::identity(basis.matrix_dim()));
  for (std::size_t i = 0; i < n; ++i) {
    g.reproduction_residual = std::max(
        g.reproduction_residual, std::abs(expectation(g.cyclic, g.rep[i]) - phi.values()[i]));
  }
  g.multiplicativity_defect = detail::multiplicativity_defect(g.rep, g.structure);
  return g;
}

/// dim of span{rep(b_i)} = dim A / I(phi).
inline std::size_t minimal_quotient_dim(const GnsData& g) {
  const std::size_t n = g.rep.size();
  Matrix hs(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      hs(i, j) = hs_inner(g.rep[i], g.rep[j]);
      hs(j, i) = std::conj(hs(i, j));
    }
  return numerical_rank(hermitian_eig(hs), kGramRankTolerance);
}

inline constexpr double kDilationTolerance = 1e-8;

/// Isometry V from the GNS space into the space of another dilation
/// (rep2, vec2) with V (class of b_i) = rep2(b_i) vec2.
inline Matrix embed_dilation(const GnsData& g, const std::vector<Matrix>& rep2,
                             const Vector& vec2) {
  const std::size_t n = g.rep.size();
  if (rep2.size() != n) throw Error(ErrorCode::kDimensionMismatch, "one matrix per basis element");
  const std::size_t dim = vec2.size();
  for (const auto& m : rep2) {
    if (!m.is_square() || m.rows() != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "dilation matrices must match the vector");
    }
  }
  if (dim < g.hilbert_dim) throw Error(ErrorCode::kNotADilation, "ambient space too small");
  const auto& values = g.state.values();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(expectation(vec2, rep2[i]) - values[i]) > kDilationTolerance) {
      throw Error(ErrorCode::kNotADilation, "vector state does not reproduce phi");
    }
  }
  if (detail::multiplicativity_defect(rep2, g.structure) > kDilationTolerance) {
    throw Error(ErrorCode::kNotADilation, "dilation is not multiplicative");
  }
  Matrix y(dim, n);
  for (std::size_t i = 0; i < n; ++i) y.set_column(i, rep2[i] * vec2);
  std::vector<double> inv_sqrt_l;
  for (double l : g.gram_eigs) inv_sqrt_l.push_back(1.0 / std::sqrt(l));
  const Matrix v = y * g.gram_range * Matrix::diagonal(inv_sqrt_l);
  if (max_abs_diff(v.adjoint() * v, Matrix::identity(g.hilbert_dim)) > kDilationTolerance) {
    throw Error(ErrorCode::kNotADilation, "embedding is not isometric");
  }
  if (max_abs_diff(v * g.coords, y) > kDilationTolerance) {
    throw Error(ErrorCode::kNumericalFailure, "embedding misses the span of rep2(b) vec2");
  }
  return v;
}

/// Compression b -> W* m(b) W of a dilation onto the range of an isometry W.
struct Compression {
  std::vector<Matrix> maps;
  Vector vector;
  double state_residual = 0.0;
  double multiplicativity_defect = 0.0;
};

inline Compression compress(const GnsData& g, const std::vector<Matrix>& rep2, const Vector& vec2,
                            const Matrix& w) {
  Compression c;
  const Matrix wa = w.adjoint();
  for (const auto& m : rep2) c.maps.push_back(wa * m * w);
  c.vector = wa * vec2;
  for (std::size_t i = 0; i < c.maps.size(); ++i) {
    c.state_residual = std::max(
        c.state_residual, std::abs(expectation(c.vector, c.maps[i]) - g.state.values()[i]));
  }
  c.multiplicativity_defect = detail::multiplicativity_defect(c.maps, g.structure);
  return c;
}

struct CheckReport {
  std::vector<double> defects;
  double max_defect = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Defects phi((A - B)* (A - B)) for pairs (E (x) 1, 1 (x) E).
inline CheckReport check_synchronous(const StateFunctional& phi,
                                     const std::vector<std::pair<Matrix, Matrix>>& pairs,
                                     double tol = 1e-9) {
  CheckReport r;
  r.tolerance = tol;
  for (const auto& [a, b] : pairs) {
    phi.basis().expand(a);
    phi.basis().expand(b);
    const Matrix d = a - b;
    const double defect = phi(d.adjoint() * d).real();
    r.defects.push_back(defect);
    r.max_defect = std::max(r.max_defect, std::abs(defect));
  }
  r.passed = r.max_defect <= tol;
  return r;
}

/// max |tau(b_i b_j) - tau(b_j b_i)| over basis pairs.
inline CheckReport check_trace(const StateFunctional& tau, double tol = 1e-10) {
  CheckReport r;
  r.tolerance = tol;
  const auto& basis = tau.basis();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Matrix ab = basis[i] * basis[j];
      const Matrix ba = basis[j] * basis[i];
      basis.expand(ab);
      basis.expand(ba);
      const double d = std::abs(tau(ab) - tau(ba));
      r.defects.push_back(d);
      r.max_defect = std::max(r.max_defect, d);
    }
  r.passed = r.max_defect <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// Standard bases and state files

/// E_ij in row-major order.
inline AlgebraBasis matrix_units(std::size_t n) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix e(n, n);
      e(i, j) = 1.0;
      out.push_back(std::move(e));
    }
  return AlgebraBasis(std::move(out));
}

/// {I, X, Y, Z}.
inline AlgebraBasis pauli_basis() {
  return AlgebraBasis({pauli::I(), pauli::X(), pauli::Y(), pauli::Z()});
}

/// Words (1, u, v, uv) on one qubit with u = Z, v = X.
inline std::vector<Matrix> pauli_words() {
  return {pauli::I(), pauli::Z(), pauli::X(), pauli::Z() * pauli::X()};
}

/// (1, u, v, uv) (x) (1, u, v, uv), first factor major.
inline AlgebraBasis pauli2x2_basis() {
  std::vector<Matrix> out;
  for (const auto& a : pauli_words())
    for (const auto& b : pauli_words()) out.push_back(kron(a, b));
  return AlgebraBasis(std::move(out));
}

/// Parses {"dim":n,"density":[[re,im],...]} or
/// {"basis":"pauli2x2","values":[[re,im],...]}.
inline StateFunctional parse_state(std::string_view text) {
  using Json = nlohmann::json;
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSyntaxError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kSchemaError, "state file must be a JSON object");
  auto complex_list = [](const Json& arr, std::size_t expected) {
    if (!arr.is_array() || arr.size() != expected) {
      throw Error(ErrorCode::kSchemaError,
                  "expected " + std::to_string(expected) + " [re, im] entries");
    }
    Vector out;
    for (const auto& e : arr) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw Error(ErrorCode::kSchemaError, "complex entries are [re, im] pairs");
      }
      out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
  };
  for (const auto& [key, value] : j.items()) {
    if (key != "dim" && key != "density" && key != "basis" && key != "values") {
      throw Error(ErrorCode::kSchemaError, "unknown field '" + key + "'");
    }
  }
  if (j.contains("density")) {
    if (j.contains("basis") || j.contains("values") || !j.contains("dim")) {
      throw Error(ErrorCode::kSchemaError, "density states need exactly dim and density");
    }
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1 ||
        j["dim"].get<long long>() > 16) {
      throw Error(ErrorCode::kSchemaError, "dim must be an integer in 1..16");
    }
    const auto n = static_cast<std::size_t>(j["dim"].get<long long>());
    const Vector entries = complex_list(j["density"], n * n);
    Matrix rho(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) rho(i, k) = entries[i * n + k];
    return StateFunctional::from_density(matrix_units(n), std::move(rho));
  }
  if (!j.contains("basis") || !j.contains("values") || j.contains("dim")) {
    throw Error(ErrorCode::kSchemaError, "value states need exactly basis and values");
  }
  if (j["basis"] != "pauli2x2") throw Error(ErrorCode::kSchemaError, "unknown basis");
  return StateFunctional::from_values(pauli2x2_basis(), complex_list(j["values"], 16));
}

}  // namespace nlgames
