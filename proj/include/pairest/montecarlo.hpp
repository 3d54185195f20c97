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
#include <cstdint>
#include <span>
#include <vector>

#include "pairest/estimation.hpp"
#include "pairest/linalg.hpp"
#include "pairest/probe_state.hpp"
#include "pairest/spectral.hpp"

namespace pairest {

/// Counts over the 16 joint Stokes outcomes of one simulated experiment.
struct OutcomeRecord {
  std::array<std::uint64_t, kNumOutcomes> counts{};
  std::uint64_t total = 0;  ///< number of photon pairs M
  std::uint64_t seed = 0;
};

/// Multinomial draw of M pairs from p(x | phi). Same seed, same counts.
OutcomeRecord sample_outcomes(const PhaseParams& p, const SpectralParams& s,
                              std::uint64_t shots, std::uint64_t seed);

/// Multinomial log-likelihood sum_x n_x log p_x(phi), up to a constant.
/// Returns -infinity when an observed outcome has zero probability.
double log_likelihood(const OutcomeRecord& record, const SpectralParams& s,
                      const PhaseParams& p);

/// Lower edge of the phi1 search region.
inline constexpr double kMinFitPhi1 = 1e-6;

/// Fits ending at or below this phi1 are reported as boundary fits.
inline constexpr double kBoundaryFitPhi1 = 1e-3;

/**
 * Maximum-likelihood estimate of (phi0, phi1) by Nelder-Mead simplex search
 * started at `init`, converged to a simplex size of 1e-7.
 *
 * The search is restricted to phi1 > 0, since p depends on phi1 only through
 * even functions. phi0 is reported inside [init.phi0 - pi, init.phi0 + pi).
 * Throws BoundaryFitError if the search ends at phi1 <= kBoundaryFitPhi1,
 * NumericalError if it does not converge elsewhere, and
 * std::invalid_argument for an empty record.
 */
PhaseParams mle_fit(const OutcomeRecord& record, const SpectralParams& s,
                    const PhaseParams& init);

/// Fit seeded from the best point of a coarse likelihood grid over
/// phi0 in (0, pi/2), phi1 in (0.05, 3).
PhaseParams grid_seeded_fit(const OutcomeRecord& record,
                            const SpectralParams& s);

/// Unbiased sample covariance of (phi0, phi1); needs at least two estimates.
Sym2 empirical_covariance(std::span<const PhaseParams> estimates);

struct EstimationConfig {
  PhaseParams truth;
  SpectralParams spectrum;
  std::uint64_t shots = 100000;
  std::size_t repeats = 200;
  std::uint64_t seed = 1;
  unsigned workers = 0;  ///< 0: one per hardware thread
};

struct EstimationRun {
  PhaseParams true_params;
  std::vector<PhaseParams> estimates;
  Sym2 empirical_cov;
  /// Repeats where the truth-seeded and grid-seeded fits disagreed.
  std::size_t local_maxima = 0;
};

/**
 * Repeats sample -> fit `repeats` times. Repeat r draws with seed + r, so the
 * run is reproducible regardless of worker count. Each repeat keeps the
 * better of a truth-seeded and a grid-seeded fit.
 */
EstimationRun run_estimation(const EstimationConfig& config);

}  // namespace pairest
