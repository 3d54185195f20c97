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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "pairest/probe_state.hpp"

using namespace pairest;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int HH = 0, HV = 1, VH = 2, VV = 3;

struct GridPoint {
  PhaseParams p;
  SpectralParams s;
};

std::vector<GridPoint> state_grid() {
  std::vector<GridPoint> pts;
  for (int i = 0; i < 8; ++i) {
    for (double phi1 : {0.0, 0.4, 1.0, 1.7, 3.0}) {
      for (double eps : {-1.0, -0.6, 0.0, 0.35, 1.0}) {
        for (double sigma : {0.5, 1.0, 2.0}) {
          pts.push_back({{i * kPi / 4.0 + 0.1, phi1}, {sigma, eps, 0.0}});
        }
      }
    }
  }
  return pts;
}

ComplexMatrix swap_qubits(const ComplexMatrix& m) {
  static constexpr int kSwap[4] = {HH, VH, HV, VV};
  ComplexMatrix out(4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out(kSwap[r], kSwap[c]) = m(r, c);
  }
  return out;
}

}  // namespace

TEST_CASE("density_matrix without phase or dephasing is |DD><DD|", "[probe]") {
  for (double eps : {-1.0, 0.0, 0.7}) {
    const auto rho = density_matrix({0.0, 0.0}, {1.3, eps, 0.0});
    for (const auto& v : rho.entries()) CHECK(std::abs(v - 0.25) <= 1e-15);
  }
}

TEST_CASE("density_matrix entries follow the coherence rules", "[probe]") {
  const PhaseParams p{0.37, 0.8};
  const SpectralParams s{1.2, -0.4, 0.0};
  const auto rho = density_matrix(p, s);
  const Complex e1 = std::polar(0.25, -p.phi0) * moment(s, p.phi1, 0.0);
  const Complex e2 = std::polar(0.25, -2.0 * p.phi0) * moment(s, p.phi1, p.phi1);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(rho(i, i) - 0.25) <= 1e-15);
  for (auto [r, c] : {std::pair{HH, HV}, {HH, VH}, {HV, VV}, {VH, VV}}) {
    CHECK(std::abs(rho(r, c) - e1) <= 1e-15);
    CHECK(std::abs(rho(c, r) - std::conj(e1)) <= 1e-15);
  }
  CHECK(std::abs(rho(HH, VV) - e2) <= 1e-15);
  CHECK(std::abs(rho(HV, VH) - 0.25 * moment(s, p.phi1, -p.phi1)) <= 1e-15);
}

TEST_CASE("density_matrix sum coherence at phi0 = pi/4, phi1 = 1", "[probe][oracle]") {
  const PhaseParams p{kPi / 4.0, 1.0};
  const SpectralParams s{1.0, 0.0, 0.0};
  const auto rho = density_matrix(p, s);
  // 1/4 e^{-i pi/2} e^{-1}.
  CHECK_THAT(rho(HH, VV).real(), WithinAbs(0.0, 1e-15));
  CHECK_THAT(rho(HH, VV).imag(), WithinAbs(-0.25 * std::exp(-1.0), 1e-15));
  CHECK_THAT(rho(HH, VV).imag(), WithinAbs(-0.091970, 1e-6));
  const auto quad = oracle::quadrature_density_matrix(p, s);
  CHECK(std::abs(quad(HH, VV) - rho(HH, VV)) <= 1e-8);
}

TEST_CASE("density_matrix at perfect correlation keeps the HV/VH coherence",
          "[probe]") {
  const auto rho = density_matrix({1.1, 40.0}, {1.0, 1.0, 0.0});
  ComplexMatrix expected = 0.25 * ComplexMatrix::identity(4);
  expected(HV, VH) = expected(VH, HV) = 0.25;
  CHECK(rho.max_abs_diff(expected) <= 1e-15);
}

TEST_CASE("density_matrix matches the quadrature-assembled state",
          "[probe][oracle][property]") {
  for (const auto& [p, s] : state_grid()) {
    if (p.phi1 * s.sigma > 3.5) continue;  // beyond the oracle's resolved range
    INFO("phi0=" << p.phi0 << " phi1=" << p.phi1 << " eps=" << s.epsilon
                 << " sigma=" << s.sigma);
    CHECK(density_matrix(p, s).max_abs_diff(oracle::quadrature_density_matrix(p, s)) <=
          1e-8);
  }
}

TEST_CASE("density_matrix is a valid state across the grid", "[probe][property]") {
  for (const auto& [p, s] : state_grid()) {
    const ProbeState st = make_probe_state(p, s);
    INFO("phi0=" << p.phi0 << " phi1=" << p.phi1 << " eps=" << s.epsilon);
    CHECK(std::abs(st.rho.trace() - 1.0) <= 1e-12);
    CHECK(st.rho.hermiticity_defect() <= 1e-15);
    CHECK(hermitian_eig(st.rho).eigenvalues[0] >= -1e-12);
    for (const auto& d : st.d_rho) {
      CHECK(std::abs(d.trace()) <= 1e-12);
      CHECK(d.hermiticity_defect() <= 1e-15);
    }
    CHECK(swap_qubits(st.rho).max_abs_diff(st.rho) <= 1e-15);
  }
}

TEST_CASE("uncorrelated photons give a product state", "[probe][property]") {
  for (double phi0 : {0.0, 0.6, 2.5}) {
    for (double phi1 : {0.2, 1.0, 2.2}) {
      for (double sigma : {0.5, 1.0, 2.0}) {
        const SpectralParams s{sigma, 0.0, 0.0};
        // Averaged single-photon state: coherence damped by moment(phi1, 0).
        const double v = moment(s, phi1, 0.0).real();
        ComplexMatrix single = ComplexMatrix::identity(2);
        single += v * std::cos(phi0) * pauli::x();
        single += v * std::sin(phi0) * pauli::y();
        single *= 0.5;
        CHECK(density_matrix({phi0, phi1}, s)
                  .max_abs_diff(tensor_product(single, single)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("purity is one at phi1 = 0 and decreases with phi1 at eps = 0",
          "[probe][property]") {
  auto purity = [](double phi1) {
    const auto rho = density_matrix({0.5, phi1}, {1.0, 0.0, 0.0});
    return trace_of_product(rho, rho).real();
  };
  CHECK_THAT(purity(0.0), WithinAbs(1.0, 1e-15));
  double last = purity(0.0);
  for (int i = 1; i <= 30; ++i) {
    const double now = purity(0.1 * i);
    CHECK(now < last);
    last = now;
  }
}

TEST_CASE("density_derivative rules", "[probe]") {
  const SpectralParams s{1.0, 0.3, 0.0};
  const auto d0 = density_derivative({0.0, 0.0}, s, Parameter::kPhase);
  const Complex i(0.0, 1.0);
  CHECK(std::abs(d0(HH, VV) + 2.0 * i / 4.0) <= 1e-15);
  CHECK(std::abs(d0(VV, HH) - 2.0 * i / 4.0) <= 1e-15);
  CHECK(std::abs(d0(HH, HV) + i / 4.0) <= 1e-15);
  CHECK(std::abs(d0(VH, HH) - i / 4.0) <= 1e-15);
  CHECK(std::abs(d0(HV, VH)) == 0.0);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(d0(k, k)) == 0.0);

  const auto d1 = density_derivative({0.9, 0.0}, s, Parameter::kDephasing);
  for (const auto& v : d1.entries()) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("density_derivative matches finite differences", "[probe][oracle][property]") {
  {
    const PhaseParams p{kPi / 4.0, 1.0};
    const SpectralParams s{1.0, 0.5, 0.0};
    CHECK(density_derivative(p, s, Parameter::kDephasing)
              .max_abs_diff(oracle::finite_difference_derivative(
                  p, s, Parameter::kDephasing)) <= 1e-7);
  }
  for (const auto& [p, s] : state_grid()) {
    for (Parameter j : {Parameter::kPhase, Parameter::kDephasing}) {
      INFO("phi0=" << p.phi0 << " phi1=" << p.phi1 << " eps=" << s.epsilon
                   << " sigma=" << s.sigma << " j=" << static_cast<int>(j));
      CHECK(density_derivative(p, s, j).max_abs_diff(
                oracle::finite_difference_derivative(p, s, j)) <= 1e-7);
    }
  }
}

TEST_CASE("stokes_correlator", "[probe][oracle]") {
  CHECK_THAT(stokes_correlator({0.0, 0.0}, {1.0, 0.2, 0.0}), WithinAbs(1.0, 1e-15));
  CHECK_THAT(stokes_correlator({kPi / 2.0, 0.0}, {1.0, 0.2, 0.0}),
             WithinAbs(0.0, 1e-15));
  const double v = stokes_correlator({0.0, 1.0}, {1.0, -1.0, 0.0});
  // Anti-correlated: Delta2 = -Delta1, so E[cos^2(u)] = (1 + E[cos 2u]) / 2.
  CHECK_THAT(v, WithinAbs(0.5 * (1.0 + std::exp(-2.0)), 1e-15));
  CHECK_THAT(v, WithinAbs(0.567668, 1e-6));

  // Against the quadrature integral of cos(Delta1) cos(Delta2) and against
  // Tr[rho (X (x) X)].
  const auto xx = tensor_product(pauli::x(), pauli::x());
  for (const auto& [p, s] : state_grid()) {
    if (p.phi1 * s.sigma > 3.5) continue;
    double integral = 0.0;
    for (const auto& n : spectral_nodes(s, 40)) {
      integral += n.weight * std::cos(p.phi0 + p.phi1 * n.u) *
                  std::cos(p.phi0 + p.phi1 * n.v);
    }
    const double closed = stokes_correlator(p, s);
    CHECK(std::abs(closed - integral) <= 1e-8);
    CHECK(std::abs(closed - trace_of_product(density_matrix(p, s), xx).real()) <=
          1e-10);
  }
}

TEST_CASE("pure-state boundary flag", "[probe]") {
  CHECK(on_pure_state_boundary({0.3, 0.0}));
  CHECK_FALSE(on_pure_state_boundary({0.3, 1e-6}));
}
