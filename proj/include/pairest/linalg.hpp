// Copyright 2026 The pairest Authors
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

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace pairest {

using Complex = std::complex<double>;

/**
 * Dense square complex matrix, row-major.
 *
 * Only the tiny dimensions of a two-photon polarisation space are needed
 * (2 and 4), so the storage is a plain vector and every product is the
 * textbook triple loop.
 */
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major entries; throws std::invalid_argument unless size is dim².
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zeros(std::size_t dim) { return ComplexMatrix(dim); }
  /// |psi><psi|.
  static ComplexMatrix outer(const std::vector<Complex>& psi);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  const std::vector<Complex>& entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  /// max_{ij} |A_ij - conj(A_ji)|.
  double hermiticity_defect() const;
  /// max_{ij} |A_ij - B_ij|; dimensions must agree.
  double max_abs_diff(const ComplexMatrix& other) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs += rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs -= rhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) {
    return lhs *= scale;
  }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) {
    return rhs *= scale;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs,
                                 const ComplexMatrix& rhs);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Eigenvalues ascending; eigenvectors are the matching columns.
struct HermitianEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Hermitian tolerance enforced by hermitian_eig.
inline constexpr double kHermitianTolerance = 1e-12;

/**
 * Eigendecomposition of a small Hermitian matrix by cyclic complex Jacobi
 * rotations.
 *
 * Accepts dim 2 or 4. Rejects (std::invalid_argument) inputs whose
 * hermiticity defect exceeds kHermitianTolerance; the message names the
 * defect. Iterates until the off-diagonal Frobenius mass is below 1e-14
 * (relative to max(1, ||A||_F)). The result is a pure function of the input.
 */
HermitianEig hermitian_eig(const ComplexMatrix& a);

/// Kronecker product of two qubit operators; basis order HH, HV, VH, VV.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr[rho (AB - BA)].
Complex commutator_trace(const ComplexMatrix& rho, const ComplexMatrix& a,
                         const ComplexMatrix& b);

/// Tr[A B] without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// 2x2 real symmetric matrix [[m00, m01], [m01, m11]].
struct Sym2 {
  double m00 = 0.0;
  double m01 = 0.0;
  double m11 = 0.0;

  static Sym2 identity() { return {1.0, 0.0, 1.0}; }
  static Sym2 diagonal(double d0, double d1) { return {d0, 0.0, d1}; }

  double trace() const noexcept { return m00 + m11; }
  double det() const noexcept { return m00 * m11 - m01 * m01; }
  /// Ascending eigenvalues.
  std::array<double, 2> eigenvalues() const noexcept;
  double min_eigenvalue() const noexcept { return eigenvalues()[0]; }

  friend Sym2 operator+(const Sym2& a, const Sym2& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m11 + b.m11};
  }
  friend Sym2 operator-(const Sym2& a, const Sym2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m11 - b.m11};
  }
  friend Sym2 operator*(double s, const Sym2& a) {
    return {s * a.m00, s * a.m01, s * a.m11};
  }
  friend bool operator==(const Sym2&, const Sym2&) = default;
};

/// Plain 2x2 product; generally not symmetric, hence the full return type.
std::array<double, 4> multiply(const Sym2& a, const Sym2& b);

/// Throws SingularPointError("singular Fisher matrix ...") if det <= 1e-14.
Sym2 sym2_inverse(const Sym2& m);

}  // namespace pairest
