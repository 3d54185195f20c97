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

#include "pairest/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pairest/errors.hpp"

namespace pairest {

void SpectralParams::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("SpectralParams: sigma must be positive");
  }
  if (!(std::abs(epsilon) <= 1.0)) {
    throw std::invalid_argument("SpectralParams: epsilon must lie in [-1, 1]");
  }
}

std::complex<double> moment(const SpectralParams& params, double a, double b) {
  const double s2 = params.sigma * params.sigma;
  return std::exp(-0.5 * (a * a + b * b) * s2 - a * b * s2 * params.epsilon);
}

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be positive");
  GaussHermiteRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // Asymptotic starting guesses for the largest roots, then extrapolation
    // from the previously found ones.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    double derivative = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      derivative = std::sqrt(2.0 * n) * p2;
      const double step = p1 / derivative;
      z -= step;
      if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NumericalError("gauss_hermite: Newton iteration did not converge");
    }
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = 2.0 / (derivative * derivative);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

std::vector<SpectralNode> spectral_nodes(const SpectralParams& params,
                                         int order) {
  params.validate();
  if (order < 1) throw std::invalid_argument("spectral_nodes: order < 1");
  const GaussHermiteRule rule = gauss_hermite(order);
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);

  // Rotated coordinates s = (u+v)/sqrt2 and d = (u-v)/sqrt2 are independent
  // with variances sigma^2 (1 + eps) and sigma^2 (1 - eps). For x ~ N(0, t^2),
  // E f(x) = pi^{-1/2} sum_i w_i f(sqrt2 t x_i).
  struct Axis {
    std::vector<double> points;
    std::vector<double> weights;
  };
  auto make_axis = [&](double variance, bool degenerate) {
    Axis axis;
    if (degenerate) {
      axis.points = {0.0};
      axis.weights = {1.0};
      return axis;
    }
    const double scale = std::sqrt(2.0 * variance);
    for (int i = 0; i < order; ++i) {
      axis.points.push_back(scale * rule.nodes[i]);
      axis.weights.push_back(inv_sqrt_pi * rule.weights[i]);
    }
    return axis;
  };
  const double s2 = params.sigma * params.sigma;
  const Axis sum_axis = make_axis(s2 * (1.0 + params.epsilon),
                                  params.epsilon < -kDegenerateEpsilon);
  const Axis diff_axis = make_axis(s2 * (1.0 - params.epsilon),
                                   params.epsilon > kDegenerateEpsilon);

  std::vector<SpectralNode> nodes;
  nodes.reserve(sum_axis.points.size() * diff_axis.points.size());
  const double r = std::numbers::sqrt2 / 2.0;
  for (std::size_t i = 0; i < sum_axis.points.size(); ++i) {
    for (std::size_t j = 0; j < diff_axis.points.size(); ++j) {
      const double s = sum_axis.points[i];
      const double d = diff_axis.points[j];
      nodes.push_back({r * (s + d), r * (s - d),
                       sum_axis.weights[i] * diff_axis.weights[j]});
    }
  }
  return nodes;
}

std::complex<double> quadrature_moment(const SpectralParams& params, double a,
                                       double b, int order) {
  if (order < 20) throw std::invalid_argument("quadrature_moment: order < 20");
  std::complex<double> sum = 0.0;
  for (const auto& node : spectral_nodes(params, order)) {
    sum += node.weight * std::polar(1.0, a * node.u + b * node.v);
  }
  return sum;
}

}  // namespace pairest
