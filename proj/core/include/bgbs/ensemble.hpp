/*
 * Copyright 2026 The bgbs authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "bgbs/click_stats.hpp"
#include "bgbs/program.hpp"
#include "bgbs/rng.hpp"

namespace bgbs {

/// Result of a click-statistics sweep over the Gaussian matrix ensemble.
/// Aggregates are sample means/variances over exactly `trials` draws; the
/// report is a pure function of (m, mu, trials, seed) and independent of
/// the number of worker threads.
struct EnsembleReport {
    std::size_t m = 0;
    double mu = 0.0;
    std::size_t trials = 0;
    std::uint64_t retries = 0;

    std::vector<ClickMoments> per_trial;

    double mean_of_mean_d = 0.0;
    double var_of_mean_d = 0.0;
    double mean_of_var_d = 0.0;
    double var_of_var_d = 0.0;
    double mean_of_var_sum = 0.0;
    double var_of_var_sum = 0.0;
};

/// Per trial: sample C ~ N(0,1)^{m x m}, rescale to mean pair number mu*m,
/// compute exact click moments from the Husimi blocks; then aggregate.
/// `threads` = 0 uses the hardware default; the result never depends on it.
EnsembleReport run_click_experiment(std::size_t m, double mu, std::size_t trials,
                                    std::uint64_t seed, int threads = 0);

/// Sample per-squeezer pair counts: n_i geometric with continuation
/// probability sigma_i^2.
std::vector<std::uint64_t> sample_pair_numbers(const TransitionMatrix& tm, RngStream& rng);

/// Empirical check of the photon-number concentration tail bounds.
struct ConcentrationReport {
    std::size_t m = 0;
    double alpha = 0.0;
    double delta = 0.0;
    std::size_t trials = 0;
    double bound_mean_pairs = 0.0;     // deviation threshold for <n>
    double bound_sampled_pairs = 0.0;  // deviation threshold for sampled n
    double violation_freq_mean = 0.0;
    double violation_freq_sampled = 0.0;
};

/// Fraction of trials where |<n> - m/alpha^2| (and the sampled-n analogue)
/// exceeds its tail-bound threshold; both frequencies should be <= delta.
/// Refuses parameters outside the validity region (alpha >= 6, m >=
/// ln(1/delta)).
ConcentrationReport n_concentration_check(std::size_t m, double alpha, std::size_t trials,
                                          double delta, std::uint64_t seed, int threads = 0);

}  // namespace bgbs
