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

#include "pairest/linalg.hpp"
#include "pairest/spectral.hpp"

namespace pairest {

/// First-order expansion of the H/V phase difference around omega0:
/// Delta(w) = phi0 + phi1 (w - omega0).
struct PhaseParams {
  double phi0 = 0.0;  ///< mean phase [rad]
  double phi1 = 0.0;  ///< dispersion slope [rad / frequency unit]

  friend bool operator==(const PhaseParams&, const PhaseParams&) = default;
};

/// Index of an estimated parameter.
enum class Parameter : int { kPhase = 0, kDephasing = 1 };

/// |phi1| at or below this is the pure-state boundary.
inline constexpr double kPureBoundaryTolerance = 1e-12;

/// d rho / d phi1 vanishes identically here, so Q11 = F11 = 0.
inline bool on_pure_state_boundary(const PhaseParams& p) noexcept {
  return p.phi1 <= kPureBoundaryTolerance && p.phi1 >= -kPureBoundaryTolerance;
}

/// Two-qubit polarisation state with its exact parameter derivatives.
struct ProbeState {
  ComplexMatrix rho;
  std::array<ComplexMatrix, 2> d_rho;
  PhaseParams phases;
  SpectralParams spectrum;

  const ComplexMatrix& derivative(Parameter j) const {
    return d_rho[static_cast<int>(j)];
  }
};

/**
 * Polarisation state of the pair after the dispersive sample, with the
 * frequency degrees of freedom traced out.
 *
 * Basis HH, HV, VH, VV. Entry (r, c) with r = (i1, i2), c = (j1, j2) equals
 * 1/4 exp(i (k1 + k2) phi0) moment(k1 phi1, k2 phi1), k = i - j. The
 * diagonal is 1/4; single-photon coherences carry exp(-+i phi0) moment(phi1, 0),
 * the HH/VV coherence exp(-+2i phi0) moment(phi1, phi1), and the HV/VH
 * coherence moment(phi1, -phi1).
 */
ComplexMatrix density_matrix(const PhaseParams& p, const SpectralParams& s);

/// Entrywise analytic derivative of density_matrix() w.r.t. phi0 or phi1.
ComplexMatrix density_derivative(const PhaseParams& p, const SpectralParams& s,
                                 Parameter j);

ProbeState make_probe_state(const PhaseParams& p, const SpectralParams& s);

/// <X1 X2> = 1/2 [cos(2 phi0) moment(phi1, phi1) + moment(phi1, -phi1)].
double stokes_correlator(const PhaseParams& p, const SpectralParams& s);

/// Single-photon state 1/2 (I + cos(delta) sigma_x + sin(delta) sigma_y).
ComplexMatrix single_photon_state(double delta);

}  // namespace pairest
