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

#include "pairest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pairest/errors.hpp"

namespace pairest {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim,
                             std::initializer_list<Complex> entries)
    : dim_(dim), data_(entries) {
  if (data_.size() != dim * dim) {
    throw std::invalid_argument("ComplexMatrix: expected dim^2 entries");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(const std::vector<Complex>& psi) {
  ComplexMatrix m(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    for (std::size_t j = 0; j < psi.size(); ++j) {
      m(i, j) = psi[i] * std::conj(psi[j]);
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::hermiticity_defect() const {
  double defect = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      defect = std::max(defect,
                        std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return defect;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (other.dim_ != dim_) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  double diff = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k) {
    diff = std::max(diff, std::abs(data_[k] - other.data_[k]));
  }
  return diff;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw std::invalid_argument("+: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw std::invalid_argument("-: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("*: dimension mismatch");
  const std::size_t n = lhs.dim_;
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

namespace pauli {
ComplexMatrix x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix y() {
  return ComplexMatrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
}
ComplexMatrix z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
}  // namespace pauli

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

double frobenius_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const auto& v : a.entries()) sum += std::norm(v);
  return std::sqrt(sum);
}

// Applies A <- G^H A G and V <- V G, where G is the identity except on the
// (p, q) plane where it equals [[g_pp, g_pq], [g_qp, g_qq]].
void apply_rotation(ComplexMatrix& a, ComplexMatrix& v, std::size_t p,
                    std::size_t q, Complex g_pp, Complex g_pq, Complex g_qp,
                    Complex g_qq) {
  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * g_pp + akq * g_qp;
    a(k, q) = akp * g_pq + akq * g_qq;
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * g_pp + vkq * g_qp;
    v(k, q) = vkp * g_pq + vkq * g_qq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
  }
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& input) {
  const std::size_t n = input.dim();
  if (n != 2 && n != 4) {
    throw std::invalid_argument("hermitian_eig: dimension must be 2 or 4");
  }
  const double defect = input.hermiticity_defect();
  if (defect > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "hermitian_eig: matrix is not Hermitian (max |A - A^H| = "
        << defect << ")";
    throw std::invalid_argument(msg.str());
  }

  // Symmetrise so the rotations act on an exactly Hermitian matrix.
  ComplexMatrix a = input;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double threshold = 1e-14 * std::max(1.0, frobenius_norm(a));
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase e^{-i theta} on column q makes the (p, q) entry real, then a
        // real Jacobi rotation annihilates it.
        const Complex phase = std::conj(apq) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        apply_rotation(a, v, p, q, c, s, -s * phase, c * phase);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (off_diagonal_norm(a) >= threshold) {
    throw NumericalError("hermitian_eig: Jacobi iteration did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) {
                     return a(i, i).real() < a(j, j).real();
                   });
  HermitianEig out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t col = 0; col < n; ++col) {
    out.eigenvalues[col] = a(order[col], order[col]).real();
    for (std::size_t row = 0; row < n; ++row) {
      out.eigenvectors(row, col) = v(row, order[col]);
    }
  }
  return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw std::invalid_argument("tensor_product: both factors must be 2x2");
  }
  ComplexMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t l = 0; l < 2; ++l) {
          out(i * 2 + k, j * 2 + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("trace_of_product: dimension mismatch");
  }
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  }
  return t;
}

Complex commutator_trace(const ComplexMatrix& rho, const ComplexMatrix& a,
                         const ComplexMatrix& b) {
  return trace_of_product(rho, a * b - b * a);
}

std::array<double, 2> Sym2::eigenvalues() const noexcept {
  const double mean = 0.5 * (m00 + m11);
  const double half_gap = std::hypot(0.5 * (m00 - m11), m01);
  return {mean - half_gap, mean + half_gap};
}

std::array<double, 4> multiply(const Sym2& a, const Sym2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m01, a.m00 * b.m01 + a.m01 * b.m11,
          a.m01 * b.m00 + a.m11 * b.m01, a.m01 * b.m01 + a.m11 * b.m11};
}

Sym2 sym2_inverse(const Sym2& m) {
  const double det = m.det();
  if (!(std::abs(det) > 1e-14)) {
    std::ostringstream msg;
    msg << "singular Fisher matrix (det = " << det << ")";
    throw SingularPointError(msg.str());
  }
  return {m.m11 / det, -m.m01 / det, m.m00 / det};
}

}  // namespace pairest
