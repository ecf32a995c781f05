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

// Dense complex linear algebra for the small operators (dimension <= 64)
// that appear as concrete representations of game algebras.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlgames/error.hpp"

namespace nlgames {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Row-major dense complex matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  /// Column matrix holding `v`.
  static Matrix column_of(const Vector& v) {
    Matrix m(v.size(), 1);
    std::copy(v.begin(), v.end(), m.data_.begin());
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void set_column(std::size_t j, const Vector& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix adjoint() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  bool is_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "product of " + a.shape() + " and " + b.shape());
    }
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    }
    return r;
  }

  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "matrix-vector product");
    }
    Vector r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorCode::kDimensionMismatch, shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// ---------------------------------------------------------------------------
// Vectors

/// Conjugate-linear in the first argument.
inline Complex inner(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "inner");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm(const Vector& v) { return std::sqrt(std::real(inner(v, v))); }

inline Vector normalized(Vector v) {
  const double n = norm(v);
  if (n > 0.0) {
    for (auto& z : v) z /= n;
  }
  return v;
}

/// <v|m|v>.
inline Complex expectation(const Vector& v, const Matrix& m) { return inner(v, m * v); }

/// |a><b|.
inline Matrix outer(const Vector& a, const Vector& b) {
  Matrix r(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r(i, j) = a[i] * std::conj(b[j]);
  return r;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "vector diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------
// Matrix helpers

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, a.shape() + " vs " + b.shape());
  }
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
  return m;
}

/// Hilbert-Schmidt inner product trace(a* b).
inline Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, a.shape() + " vs " + b.shape());
  }
  Complex s = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) s += std::conj(ea[k]) * eb[k];
  return s;
}

/// max |m_ij - conj(m_ji)|.
inline double hermitian_defect(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::kNotSquare, m.shape());
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

inline bool is_hermitian(const Matrix& m) {
  return m.is_square() && hermitian_defect(m) <= 1e-12 * (1.0 + m.max_abs());
}

/// Standard Kronecker product: (a (x) b)[i*rb + k][j*cb + l] = a[i][j] * b[k][l].
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) r[i * b.size() + k] = a[i] * b[k];
  return r;
}

namespace detail {
inline void check_square_pair(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, a.shape() + " vs " + b.shape());
  }
}
}  // namespace detail

/// ab - ba
inline Matrix commutator(const Matrix& a, const Matrix& b) {
  detail::check_square_pair(a, b);
  return a * b - b * a;
}

/// ab + ba
inline Matrix anticommutator(const Matrix& a, const Matrix& b) {
  detail::check_square_pair(a, b);
  return a * b + b * a;
}

/// Block-diagonal direct sum a (+) b.
inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

// ---------------------------------------------------------------------------
// Pauli matrices

namespace pauli {
inline Matrix I() { return Matrix::identity(2); }
inline Matrix X() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
inline Matrix Y() { return Matrix{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
inline Matrix Z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition

/// Eigenvalues ascending; columns of `eigenvectors` are the matching
/// orthonormal eigenvectors.
struct HermitianEig {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
  int sweeps = 0;
};

namespace detail {

inline constexpr double kJacobiTolerance = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

inline double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Makes the first component with modulus > 1e-8 real and positive.
inline void fix_phase(Vector& v) {
  for (const auto& z : v) {
    const double r = std::abs(z);
    if (r > 1e-8) {
      const Complex phase = std::conj(z) / r;
      for (auto& w : v) w *= phase;
      return;
    }
  }
}

inline bool lex_less(const Vector& a, const Vector& b) {
  constexpr double kTol = 1e-10;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].real() - b[i].real()) > kTol) return a[i].real() < b[i].real();
    if (std::abs(a[i].imag() - b[i].imag()) > kTol) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace detail

/// Cyclic complex Jacobi. Deterministic: fixed (p, q) sweep order, phase-fixed
/// eigenvectors, and ties inside a degenerate cluster ordered by the
/// lexicographic order of the phase-fixed eigenvectors.
inline HermitianEig hermitian_eig(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::kNotSquare, m.shape());
  if (!m.is_finite()) throw Error(ErrorCode::kNumericalFailure, "non-finite input");
  const std::size_t n = m.rows();
  const double scale = m.max_abs();
  if (hermitian_defect(m) > 1e-8 * scale) {
    throw Error(ErrorCode::kNotHermitian,
                "asymmetry " + std::to_string(hermitian_defect(m)));
  }

  Matrix a = (m + m.adjoint()) * 0.5;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  Matrix v = Matrix::identity(n);
  const double fro = a.frobenius_norm();

  int sweep = 0;
  bool converged = false;
  for (; sweep < detail::kJacobiMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= detail::kJacobiTolerance * fro) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = apq / r;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNumericalFailure, "Jacobi did not converge in 100 sweeps");
  }

  struct Pair {
    double value;
    Vector vec;
  };
  std::vector<Pair> pairs(n);
  double max_abs_value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pairs[i].value = a(i, i).real();
    pairs[i].vec = v.column(i);
    detail::fix_phase(pairs[i].vec);
    max_abs_value = std::max(max_abs_value, std::abs(pairs[i].value));
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& x, const Pair& y) { return x.value < y.value; });

  const double cluster_tol = 1e-10 * (1.0 + max_abs_value);
  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && pairs[end].value - pairs[end - 1].value <= cluster_tol) ++end;
    if (end - begin > 1) {
      std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(begin),
                       pairs.begin() + static_cast<std::ptrdiff_t>(end),
                       [](const Pair& x, const Pair& y) { return detail::lex_less(x.vec, y.vec); });
    }
    begin = end;
  }

  HermitianEig out;
  out.sweeps = sweep;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenvalues[i] = pairs[i].value;
    out.eigenvectors.set_column(i, pairs[i].vec);
  }
  return out;
}

/// Largest singular value, via the spectrum of m* m.
inline double operator_norm(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::kNotSquare, m.shape());
  if (m.rows() == 0) return 0.0;
  const auto eig = hermitian_eig(m.adjoint() * m);
  return std::sqrt(std::max(0.0, eig.eigenvalues.back()));
}

/// Number of eigenvalues of a PSD Hermitian matrix above `rel_tol * max`.
inline std::size_t numerical_rank(const HermitianEig& eig, double rel_tol) {
  if (eig.eigenvalues.empty()) return 0;
  const double top = std::max(0.0, eig.eigenvalues.back());
  if (top == 0.0) return 0;
  return static_cast<std::size_t>(std::count_if(
      eig.eigenvalues.begin(), eig.eigenvalues.end(),
      [&](double x) { return x > rel_tol * top; }));
}

/// U diag(f(lambda)) U* for a Hermitian matrix.
template <typename F>
Matrix hermitian_function(const HermitianEig& eig, F&& f) {
  const std::size_t n = eig.eigenvalues.size();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = f(eig.eigenvalues[i]);
  return eig.eigenvectors * d * eig.eigenvectors.adjoint();
}

}  // namespace nlgames
