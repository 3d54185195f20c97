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

#include "pairest/probe_state.hpp"

#include <cmath>

namespace pairest {
namespace {

constexpr int kBasis = 4;

// Photon-wise coherence orders k = i - j for basis index pairs.
struct Orders {
  int k1;
  int k2;
};

Orders coherence_orders(int row, int col) {
  return {(row >> 1) - (col >> 1), (row & 1) - (col & 1)};
}

// Exponent coefficient c with moment(k1 phi1, k2 phi1) = exp(-c phi1^2 s^2 / 2).
double damping_coefficient(Orders k, double epsilon) {
  return k.k1 * k.k1 + k.k2 * k.k2 + 2.0 * k.k1 * k.k2 * epsilon;
}

template <typename EntryFn>
ComplexMatrix fill(EntryFn&& entry) {
  ComplexMatrix m(kBasis);
  for (int r = 0; r < kBasis; ++r) {
    for (int c = 0; c < kBasis; ++c) m(r, c) = entry(coherence_orders(r, c));
  }
  return m;
}

}  // namespace

ComplexMatrix density_matrix(const PhaseParams& p, const SpectralParams& s) {
  s.validate();
  return fill([&](Orders k) {
    return 0.25 * std::polar(1.0, (k.k1 + k.k2) * p.phi0) *
           moment(s, k.k1 * p.phi1, k.k2 * p.phi1);
  });
}

ComplexMatrix density_derivative(const PhaseParams& p, const SpectralParams& s,
                                 Parameter j) {
  s.validate();
  const double s2 = s.sigma * s.sigma;
  return fill([&](Orders k) -> Complex {
    const Complex entry = 0.25 * std::polar(1.0, (k.k1 + k.k2) * p.phi0) *
                          moment(s, k.k1 * p.phi1, k.k2 * p.phi1);
    if (j == Parameter::kPhase) {
      return Complex(0.0, k.k1 + k.k2) * entry;
    }
    return -p.phi1 * s2 * damping_coefficient(k, s.epsilon) * entry;
  });
}

ProbeState make_probe_state(const PhaseParams& p, const SpectralParams& s) {
  return {density_matrix(p, s),
          {density_derivative(p, s, Parameter::kPhase),
           density_derivative(p, s, Parameter::kDephasing)},
          p,
          s};
}

double stokes_correlator(const PhaseParams& p, const SpectralParams& s) {
  s.validate();
  return 0.5 * (std::cos(2.0 * p.phi0) * moment(s, p.phi1, p.phi1).real() +
                moment(s, p.phi1, -p.phi1).real());
}

ComplexMatrix single_photon_state(double delta) {
  ComplexMatrix rho = ComplexMatrix::identity(2);
  rho += std::cos(delta) * pauli::x();
  rho += std::sin(delta) * pauli::y();
  rho *= 0.5;
  return rho;
}

}  // namespace pairest
