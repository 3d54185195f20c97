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
#include <cstddef>
#include <string>

#include "pairest/linalg.hpp"
#include "pairest/probe_state.hpp"

namespace pairest {

/// Number of estimated parameters (phi0, phi1).
inline constexpr int kNumParameters = 2;

/// Single-photon Stokes outcomes: X measured half the time (D/A), Y the
/// other half (R/L).
enum class StokesOutcome : int { D = 0, A = 1, R = 2, L = 3 };

inline constexpr std::size_t kNumOutcomes = 16;

/// Joint outcome index of (photon 1 result, photon 2 result).
constexpr std::size_t outcome_index(StokesOutcome first, StokesOutcome second) {
  return static_cast<std::size_t>(first) * 4 + static_cast<std::size_t>(second);
}

/// Label such as "DR" for outcome_index(D, R).
std::string outcome_label(std::size_t index);

/// Product POVM {pi_j (x) pi_k} with pi = {|D><D|/2, |A><A|/2, |R><R|/2, |L><L|/2}.
struct Povm {
  std::array<ComplexMatrix, kNumOutcomes> elements;
};

Povm stokes_povm();

using OutcomeProbabilities = std::array<double, kNumOutcomes>;

/// Born rule p_x = Re Tr[rho Pi_x].
OutcomeProbabilities outcome_probabilities(const ComplexMatrix& rho,
                                           const Povm& povm);

/// Eigenvalue sums at or below this are dropped from the SLD (kernel of rho).
inline constexpr double kSupportCutoff = 1e-12;

/**
 * Symmetric logarithmic derivative L solving 2 d_rho = L rho + rho L on the
 * support of rho, built in the eigenbasis of rho:
 *   L = 2 sum_{s,t} <s|d_rho|t> / (l_s + l_t) |s><t|,
 * skipping pairs with l_s + l_t <= kSupportCutoff. Throws NumericalError
 * ("derivative leaves support") if d_rho has weight above 1e-10 between two
 * kernel vectors.
 */
ComplexMatrix sld_operator(const ComplexMatrix& rho, const ComplexMatrix& d_rho);

/// Both SLDs of a probe state, indexed by Parameter.
std::array<ComplexMatrix, 2> sld_pair(const ProbeState& state);

/// Q_jk = Re Tr[rho (L_j L_k + L_k L_j)] / 2. Returned also at phi1 = 0,
/// where Q11 = 0; joint quantities built on it then raise SingularPointError.
Sym2 qfi_matrix(const PhaseParams& p, const SpectralParams& s);
Sym2 qfi_matrix(const ProbeState& state);

/// Probabilities at or below this are treated as zero in the Fisher sum.
inline constexpr double kZeroProbability = 1e-14;

/**
 * Classical Fisher information F_jk = sum_x d_j p_x d_k p_x / p_x, with
 * derivatives d_j p_x = Re Tr[d_j rho Pi_x]. An outcome with p_x <=
 * kZeroProbability contributes nothing when |d p_x| <= 1e-12, and raises
 * NumericalError ("FI divergence at boundary") otherwise.
 */
Sym2 fi_matrix(const PhaseParams& p, const SpectralParams& s, const Povm& povm);
Sym2 fi_matrix(const ProbeState& state, const Povm& povm);

/// Off-diagonal magnitude below which F and Q are treated as diagonal.
inline constexpr double kDiagonalTolerance = 1e-8;

/// Tr[F Q^{-1}] (<= 2); sum_j F_jj / Q_jj when both are diagonal.
/// Throws SingularPointError for singular Q.
double upsilon(const Sym2& fisher, const Sym2& qfi);

/// Im Tr[rho [L0, L1]]. Throws SingularPointError at phi1 = 0 and
/// NumericalError if the real part exceeds 1e-10.
double weak_commutativity(const PhaseParams& p, const SpectralParams& s);
double weak_commutativity(const ProbeState& state);

/// Everything the sweep reports at one parameter point.
struct FisherPair {
  Sym2 qfi;
  Sym2 fisher;
  double upsilon = 0.0;
  double weak_comm = 0.0;
};

/// Throws SingularPointError at phi1 = 0.
FisherPair fisher_pair(const PhaseParams& p, const SpectralParams& s,
                       const Povm& povm);

}  // namespace pairest
