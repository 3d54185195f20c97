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

#include <complex>
#include <vector>

namespace pairest {

/**
 * Gaussian joint spectral weight of a photon pair.
 *
 * The detunings u = w1 - w0 and v = w2 - w0 are zero-mean Gaussian with
 * covariance sigma^2 [[1, epsilon], [epsilon, 1]]; equivalently the sum and
 * difference frequencies have widths sigma_+^2 = 2 sigma^2 (1 + epsilon) and
 * sigma_-^2 = 2 sigma^2 (1 - epsilon). epsilon = -1 is perfect
 * anti-correlation, 0 uncorrelated, +1 perfect correlation.
 *
 * omega0 is carried for completeness; every derived quantity is expanded
 * around it and does not depend on its value.
 */
struct SpectralParams {
  double sigma = 1.0;
  double epsilon = 0.0;
  double omega0 = 0.0;

  double sigma_plus_sq() const noexcept {
    return 2.0 * sigma * sigma * (1.0 + epsilon);
  }
  double sigma_minus_sq() const noexcept {
    return 2.0 * sigma * sigma * (1.0 - epsilon);
  }

  /// Throws std::invalid_argument unless sigma > 0 and |epsilon| <= 1.
  void validate() const;
};

/// E[exp(i (a u + b v))] = exp(-(a^2 + b^2) sigma^2 / 2 - a b sigma^2 eps).
std::complex<double> moment(const SpectralParams& params, double a, double b);

/// Nodes and weights for integrals against exp(-x^2) on the real line.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Hermite rule (Newton on the orthonormal recurrence).
GaussHermiteRule gauss_hermite(int n);

/// One detuning pair (u, v) with its probability weight.
struct SpectralNode {
  double u = 0.0;
  double v = 0.0;
  double weight = 0.0;
};

/// Threshold on |epsilon| beyond which one rotated axis collapses to a node.
inline constexpr double kDegenerateEpsilon = 1.0 - 1e-9;

/**
 * Tensor Gauss-Hermite grid over the joint spectral weight, built in the
 * rotated coordinates (u + v)/sqrt(2), (u - v)/sqrt(2) where the weight
 * factorises. When |epsilon| > kDegenerateEpsilon the vanishing axis is a
 * single node, so the rule stays exact in the delta-function limit. Weights
 * sum to one.
 */
std::vector<SpectralNode> spectral_nodes(const SpectralParams& params,
                                         int order);

/// Quadrature estimate of moment(); order must be >= 20.
std::complex<double> quadrature_moment(const SpectralParams& params, double a,
                                       double b, int order = 40);

}  // namespace pairest
