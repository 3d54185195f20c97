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

#include "pairest/montecarlo.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pairest/errors.hpp"
#include "pairest/parallel.hpp"

namespace pairest {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

const Povm& shared_povm() {
  static const Povm povm = stokes_povm();
  return povm;
}

struct Objective {
  const OutcomeRecord* record;
  const SpectralParams* spectrum;
};

// Mean log-likelihood deficit against the observed frequencies,
// sum_x f_x log(f_x / p_x); the phi1 <= 0 half-plane is excluded.
double objective(const gsl_vector* x, void* data) {
  const auto* obj = static_cast<const Objective*>(data);
  const PhaseParams p{gsl_vector_get(x, 0), gsl_vector_get(x, 1)};
  if (!(p.phi1 > kMinFitPhi1)) return std::numeric_limits<double>::max();
  const OutcomeProbabilities probs =
      outcome_probabilities(density_matrix(p, *obj->spectrum), shared_povm());
  const double total = static_cast<double>(obj->record->total);
  double deficit = 0.0;
  for (std::size_t i = 0; i < kNumOutcomes; ++i) {
    if (obj->record->counts[i] == 0) continue;
    if (!(probs[i] > 0.0)) return std::numeric_limits<double>::max();
    const double f = static_cast<double>(obj->record->counts[i]) / total;
    deficit += f * std::log1p((f - probs[i]) / probs[i]);
  }
  return deficit;
}

struct GslVectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct GslMinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const {
    gsl_multimin_fminimizer_free(m);
  }
};

// GSL's default handler aborts; errors are reported through return codes.
void disable_gsl_abort() {
  static const bool once = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)once;
}

double wrap_near(double angle, double center) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double shifted = std::fmod(angle - center + std::numbers::pi, kTwoPi);
  if (shifted < 0.0) shifted += kTwoPi;
  return center - std::numbers::pi + shifted;
}

}  // namespace

OutcomeRecord sample_outcomes(const PhaseParams& p, const SpectralParams& s,
                              std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample_outcomes: M must be >= 1");
  const OutcomeProbabilities probs =
      outcome_probabilities(density_matrix(p, s), shared_povm());

  std::mt19937_64 rng(splitmix64(seed));
  OutcomeRecord record;
  record.total = shots;
  record.seed = seed;
  // Sequential conditional binomials: n_x ~ Bin(remaining, p_x / mass left).
  std::uint64_t remaining = shots;
  double mass_left = 1.0;
  for (std::size_t x = 0; x < kNumOutcomes && remaining > 0; ++x) {
    const double px = std::max(0.0, probs[x]);
    if (x + 1 == kNumOutcomes) {
      record.counts[x] = px > 0.0 ? remaining : 0;
      remaining -= record.counts[x];
      break;
    }
    const double q = mass_left > 0.0 ? std::clamp(px / mass_left, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::uint64_t> draw(remaining, q);
    record.counts[x] = draw(rng);
    remaining -= record.counts[x];
    mass_left -= px;
  }
  // Rounding can leave a handful of draws unassigned; give them to the most
  // probable outcome.
  if (remaining > 0) {
    std::size_t best = 0;
    for (std::size_t x = 1; x < kNumOutcomes; ++x) {
      if (probs[x] > probs[best]) best = x;
    }
    record.counts[best] += remaining;
  }
  return record;
}

double log_likelihood(const OutcomeRecord& record, const SpectralParams& s,
                      const PhaseParams& p) {
  const OutcomeProbabilities probs =
      outcome_probabilities(density_matrix(p, s), shared_povm());
  double ll = 0.0;
  for (std::size_t x = 0; x < kNumOutcomes; ++x) {
    if (record.counts[x] == 0) continue;
    if (!(probs[x] > 0.0)) return -std::numeric_limits<double>::infinity();
    ll += static_cast<double>(record.counts[x]) * std::log(probs[x]);
  }
  return ll;
}

PhaseParams mle_fit(const OutcomeRecord& record, const SpectralParams& s,
                    const PhaseParams& init) {
  if (record.total == 0) throw std::invalid_argument("mle_fit: empty record");
  s.validate();
  disable_gsl_abort();

  Objective obj{&record, &s};
  gsl_multimin_function fn{&objective, 2, &obj};

  std::unique_ptr<gsl_vector, GslVectorDeleter> start(gsl_vector_alloc(2));
  std::unique_ptr<gsl_vector, GslVectorDeleter> step(gsl_vector_alloc(2));
  gsl_vector_set(start.get(), 0, init.phi0);
  gsl_vector_set(start.get(), 1, init.phi1);
  gsl_vector_set(step.get(), 0, 0.05);
  gsl_vector_set(step.get(), 1, std::min(0.05, 0.5 * init.phi1));

  std::unique_ptr<gsl_multimin_fminimizer, GslMinimizerDeleter> minimizer(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2));
  if (gsl_multimin_fminimizer_set(minimizer.get(), &fn, start.get(),
                                  step.get()) != GSL_SUCCESS) {
    throw BoundaryFitError("mle_fit: initial point outside the fit region");
  }

  int status = GSL_CONTINUE;
  for (int iter = 0; iter < 5000 && status == GSL_CONTINUE; ++iter) {
    if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(minimizer.get()),
                                    1e-7);
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(minimizer.get());
  PhaseParams fit{gsl_vector_get(best, 0), gsl_vector_get(best, 1)};
  if (fit.phi1 <= kBoundaryFitPhi1) {
    std::ostringstream msg;
    msg << "boundary fit: phi1 estimate " << fit.phi1
        << " sits on the unidentifiable edge phi1 = 0";
    throw BoundaryFitError(msg.str());
  }
  if (status != GSL_SUCCESS) {
    std::ostringstream msg;
    msg << "mle_fit: simplex search did not converge near (" << fit.phi0 << ", "
        << fit.phi1 << ")";
    throw NumericalError(msg.str());
  }
  fit.phi0 = wrap_near(fit.phi0, init.phi0);
  return fit;
}

PhaseParams grid_seeded_fit(const OutcomeRecord& record,
                            const SpectralParams& s) {
  constexpr int kPhaseSteps = 16;
  constexpr int kSlopeSteps = 24;
  PhaseParams best_seed;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kPhaseSteps; ++i) {
    for (int j = 0; j < kSlopeSteps; ++j) {
      const PhaseParams candidate{
          (i + 0.5) * (std::numbers::pi / 2.0) / kPhaseSteps,
          0.05 + (j + 0.5) * (3.0 - 0.05) / kSlopeSteps};
      const double ll = log_likelihood(record, s, candidate);
      if (ll > best_ll) {
        best_ll = ll;
        best_seed = candidate;
      }
    }
  }
  return mle_fit(record, s, best_seed);
}

Sym2 empirical_covariance(std::span<const PhaseParams> estimates) {
  if (estimates.size() < 2) {
    throw std::invalid_argument(
        "empirical_covariance: fewer than 2 estimates");
  }
  const double n = static_cast<double>(estimates.size());
  double mean0 = 0.0;
  double mean1 = 0.0;
  for (const auto& e : estimates) {
    mean0 += e.phi0;
    mean1 += e.phi1;
  }
  mean0 /= n;
  mean1 /= n;
  Sym2 cov;
  for (const auto& e : estimates) {
    const double d0 = e.phi0 - mean0;
    const double d1 = e.phi1 - mean1;
    cov.m00 += d0 * d0;
    cov.m01 += d0 * d1;
    cov.m11 += d1 * d1;
  }
  return (1.0 / (n - 1.0)) * cov;
}

EstimationRun run_estimation(const EstimationConfig& config) {
  if (config.repeats < 2) {
    throw std::invalid_argument(
        "run_estimation: fewer than 2 estimates (repeats < 2)");
  }
  config.spectrum.validate();

  EstimationRun run;
  run.true_params = config.truth;
  run.estimates.resize(config.repeats);
  std::vector<char> disagreed(config.repeats, 0);

  parallel_for(config.repeats, config.workers, [&](std::size_t r) {
    const OutcomeRecord record = sample_outcomes(
        config.truth, config.spectrum, config.shots, config.seed + r);
    const PhaseParams from_truth = mle_fit(record, config.spectrum, config.truth);
    PhaseParams from_grid = grid_seeded_fit(record, config.spectrum);
    from_grid.phi0 = wrap_near(from_grid.phi0, config.truth.phi0);

    const double ll_truth = log_likelihood(record, config.spectrum, from_truth);
    const double ll_grid = log_likelihood(record, config.spectrum, from_grid);
    const bool same = std::abs(from_truth.phi0 - from_grid.phi0) < 1e-4 &&
                      std::abs(from_truth.phi1 - from_grid.phi1) < 1e-4;
    disagreed[r] = same ? 0 : 1;
    run.estimates[r] = ll_grid > ll_truth ? from_grid : from_truth;
  });

  for (char d : disagreed) run.local_maxima += static_cast<std::size_t>(d);
  run.empirical_cov = empirical_covariance(run.estimates);
  return run;
}

}  // namespace pairest
