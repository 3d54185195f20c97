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

#include "pairest/estimation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pairest/errors.hpp"

namespace pairest {
namespace {

// Single-photon projectors onto D, A, R, L, each weighted by 1/2.
std::array<ComplexMatrix, 4> half_stokes_projectors() {
  const double r = std::numbers::sqrt2 / 2.0;
  const Complex i(0.0, 1.0);
  const std::array<std::vector<Complex>, 4> kets = {{
      {r, r},       // D
      {r, -r},      // A
      {r, i * r},   // R
      {r, -i * r},  // L
  }};
  std::array<ComplexMatrix, 4> out;
  for (std::size_t j = 0; j < 4; ++j) {
    out[j] = 0.5 * ComplexMatrix::outer(kets[j]);
  }
  return out;
}

std::array<std::array<double, kNumOutcomes>, 2> probability_derivatives(
    const ProbeState& state, const Povm& povm) {
  std::array<std::array<double, kNumOutcomes>, 2> dp{};
  for (int j = 0; j < kNumParameters; ++j) {
    for (std::size_t x = 0; x < kNumOutcomes; ++x) {
      dp[j][x] = trace_of_product(state.d_rho[j], povm.elements[x]).real();
    }
  }
  return dp;
}

}  // namespace

std::string outcome_label(std::size_t index) {
  static constexpr char kNames[] = {'D', 'A', 'R', 'L'};
  return {kNames[(index / 4) % 4], kNames[index % 4]};
}

Povm stokes_povm() {
  const auto pi = half_stokes_projectors();
  Povm povm;
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k < 4; ++k) {
      povm.elements[j * 4 + k] = tensor_product(pi[j], pi[k]);
    }
  }
  return povm;
}

OutcomeProbabilities outcome_probabilities(const ComplexMatrix& rho,
                                           const Povm& povm) {
  OutcomeProbabilities p{};
  for (std::size_t x = 0; x < kNumOutcomes; ++x) {
    p[x] = trace_of_product(rho, povm.elements[x]).real();
  }
  return p;
}

ComplexMatrix sld_operator(const ComplexMatrix& rho,
                           const ComplexMatrix& d_rho) {
  const HermitianEig eig = hermitian_eig(rho);
  const ComplexMatrix& vecs = eig.eigenvectors;
  const std::size_t n = rho.dim();
  const ComplexMatrix d_eigen = vecs.adjoint() * d_rho * vecs;

  ComplexMatrix l_eigen(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      const double denom = eig.eigenvalues[s] + eig.eigenvalues[t];
      if (denom <= kSupportCutoff) {
        if (std::abs(d_eigen(s, t)) > 1e-10) {
          std::ostringstream msg;
          msg << "derivative leaves support: |<s|d rho|t>| = "
              << std::abs(d_eigen(s, t)) << " between kernel vectors";
          throw NumericalError(msg.str());
        }
        continue;
      }
      l_eigen(s, t) = 2.0 * d_eigen(s, t) / denom;
    }
  }
  ComplexMatrix l = vecs * l_eigen * vecs.adjoint();
  ComplexMatrix hermitian = l + l.adjoint();
  hermitian *= 0.5;
  return hermitian;
}

std::array<ComplexMatrix, 2> sld_pair(const ProbeState& state) {
  return {sld_operator(state.rho, state.d_rho[0]),
          sld_operator(state.rho, state.d_rho[1])};
}

Sym2 qfi_matrix(const ProbeState& state) {
  const auto sld = sld_pair(state);
  auto element = [&](int j, int k) {
    const ComplexMatrix anti = sld[j] * sld[k] + sld[k] * sld[j];
    return 0.5 * trace_of_product(state.rho, anti).real();
  };
  return {element(0, 0), element(0, 1), element(1, 1)};
}

Sym2 qfi_matrix(const PhaseParams& p, const SpectralParams& s) {
  return qfi_matrix(make_probe_state(p, s));
}

Sym2 fi_matrix(const ProbeState& state, const Povm& povm) {
  const OutcomeProbabilities p = outcome_probabilities(state.rho, povm);
  const auto dp = probability_derivatives(state, povm);
  Sym2 f;
  for (std::size_t x = 0; x < kNumOutcomes; ++x) {
    if (p[x] <= kZeroProbability) {
      if (std::abs(dp[0][x]) > 1e-12 || std::abs(dp[1][x]) > 1e-12) {
        std::ostringstream msg;
        msg << "FI divergence at boundary: outcome " << outcome_label(x)
            << " has p = " << p[x] << " but nonzero derivative";
        throw NumericalError(msg.str());
      }
      continue;
    }
    f.m00 += dp[0][x] * dp[0][x] / p[x];
    f.m01 += dp[0][x] * dp[1][x] / p[x];
    f.m11 += dp[1][x] * dp[1][x] / p[x];
  }
  return f;
}

Sym2 fi_matrix(const PhaseParams& p, const SpectralParams& s,
               const Povm& povm) {
  return fi_matrix(make_probe_state(p, s), povm);
}

double upsilon(const Sym2& fisher, const Sym2& qfi) {
  const Sym2 qfi_inv = sym2_inverse(qfi);
  if (std::abs(fisher.m01) <= kDiagonalTolerance &&
      std::abs(qfi.m01) <= kDiagonalTolerance) {
    return fisher.m00 / qfi.m00 + fisher.m11 / qfi.m11;
  }
  const auto prod = multiply(fisher, qfi_inv);
  return prod[0] + prod[3];
}

double weak_commutativity(const ProbeState& state) {
  if (on_pure_state_boundary(state.phases)) {
    throw SingularPointError(
        "weak commutativity undefined at phi1 = 0 (pure-state boundary)");
  }
  const auto sld = sld_pair(state);
  const Complex value = commutator_trace(state.rho, sld[0], sld[1]);
  if (std::abs(value.real()) > 1e-10) {
    std::ostringstream msg;
    msg << "Tr[rho [L0, L1]] has real part " << value.real();
    throw NumericalError(msg.str());
  }
  return value.imag();
}

double weak_commutativity(const PhaseParams& p, const SpectralParams& s) {
  return weak_commutativity(make_probe_state(p, s));
}

FisherPair fisher_pair(const PhaseParams& p, const SpectralParams& s,
                       const Povm& povm) {
  if (on_pure_state_boundary(p)) {
    throw SingularPointError(
        "joint estimation undefined at phi1 = 0 (pure-state boundary)");
  }
  const ProbeState state = make_probe_state(p, s);
  FisherPair out;
  out.qfi = qfi_matrix(state);
  out.fisher = fi_matrix(state, povm);
  out.upsilon = upsilon(out.fisher, out.qfi);
  out.weak_comm = weak_commutativity(state);
  return out;
}

}  // namespace pairest
