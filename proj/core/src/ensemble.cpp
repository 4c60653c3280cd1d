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

#include "bgbs/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bgbs/sampling.hpp"
#include "bgbs/wishart.hpp"

namespace bgbs {

namespace {

constexpr std::uint64_t kMaxAttempts = 64;

// Stream layout: (trial << 8) | attempt, so a resample after a failed
// encode advances to a fresh substream without disturbing other trials.
std::uint64_t stream_id(std::size_t trial, std::uint64_t attempt) {
    return (static_cast<std::uint64_t>(trial) << 8) | attempt;
}

struct MeanVar {
    double mean = 0.0;
    double var = 0.0;  // unbiased sample variance
};

template <typename Get>
MeanVar aggregate(const std::vector<ClickMoments>& xs, Get get) {
    const std::size_t n = xs.size();
    MeanVar mv;
    for (const auto& x : xs) mv.mean += get(x);
    mv.mean /= static_cast<double>(n);
    if (n > 1) {
        for (const auto& x : xs) {
            const double d = get(x) - mv.mean;
            mv.var += d * d;
        }
        mv.var /= static_cast<double>(n - 1);
    }
    return mv;
}

void set_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

}  // namespace

EnsembleReport run_click_experiment(std::size_t m, double mu, std::size_t trials,
                                    std::uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("run_click_experiment: trials must be >= 1");
    if (mu <= 0.0) throw std::invalid_argument("run_click_experiment: mu must be positive");
    set_threads(threads);

    EnsembleReport rep;
    rep.m = m;
    rep.mu = mu;
    rep.trials = trials;
    rep.per_trial.resize(trials);
    const double target_pairs = mu * static_cast<double>(m);

    std::atomic<std::uint64_t> retries{0};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(trials); ++t) {
        for (std::uint64_t attempt = 0;; ++attempt) {
            if (attempt >= kMaxAttempts)
                throw std::runtime_error("run_click_experiment: rescale failed repeatedly");
            RngStream rng(seed, stream_id(static_cast<std::size_t>(t), attempt));
            const ComplexMatrix c = sample_gaussian_matrix(m, m, 0.0, 1.0, rng);
            try {
                auto [lambda, tm] = rescale_to_mean_pairs(c, target_pairs);
                (void)lambda;
                rep.per_trial[t] = click_moments_exact(husimi_blocks(tm));
                break;
            } catch (const InvalidSingularValue&) {
                retries.fetch_add(1, std::memory_order_relaxed);
            }
        }
    }
    rep.retries = retries.load();

    const MeanVar md = aggregate(rep.per_trial, [](const ClickMoments& x) { return x.mean_d; });
    const MeanVar vd = aggregate(rep.per_trial, [](const ClickMoments& x) { return x.var_d; });
    const MeanVar vs = aggregate(rep.per_trial, [](const ClickMoments& x) { return x.var_sum; });
    rep.mean_of_mean_d = md.mean;
    rep.var_of_mean_d = md.var;
    rep.mean_of_var_d = vd.mean;
    rep.var_of_var_d = vd.var;
    rep.mean_of_var_sum = vs.mean;
    rep.var_of_var_sum = vs.var;
    return rep;
}

std::vector<std::uint64_t> sample_pair_numbers(const TransitionMatrix& tm, RngStream& rng) {
    std::vector<std::uint64_t> out;
    out.reserve(tm.singular_values().size());
    for (double sigma : tm.singular_values()) out.push_back(rng.geometric(sigma * sigma));
    return out;
}

ConcentrationReport n_concentration_check(std::size_t m, double alpha, std::size_t trials,
                                          double delta, std::uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("n_concentration_check: trials must be >= 1");
    set_threads(threads);

    const BoundRhs rhs = bound_rhs_evaluators(m, alpha, delta);
    ConcentrationReport rep;
    rep.m = m;
    rep.alpha = alpha;
    rep.delta = delta;
    rep.trials = trials;
    rep.bound_mean_pairs = rhs.mean_pairs_deviation;
    rep.bound_sampled_pairs = rhs.sampled_pairs_deviation;

    const double variance = 1.0 / (alpha * alpha * static_cast<double>(m));
    const double center = static_cast<double>(m) / (alpha * alpha);

    std::atomic<std::uint64_t> viol_mean{0}, viol_sampled{0};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(trials); ++t) {
        for (std::uint64_t attempt = 0;; ++attempt) {
            if (attempt >= kMaxAttempts)
                throw std::runtime_error("n_concentration_check: encode failed repeatedly");
            RngStream rng(seed, stream_id(static_cast<std::size_t>(t), attempt));
            const ComplexMatrix c = sample_gaussian_matrix(m, m, 0.0, variance, rng);
            try {
                const TransitionMatrix tm = encode(c);
                const double mean_pairs = mean_photon_pairs(tm);
                if (std::abs(mean_pairs - center) > rhs.mean_pairs_deviation)
                    viol_mean.fetch_add(1, std::memory_order_relaxed);
                std::uint64_t n = 0;
                for (std::uint64_t ni : sample_pair_numbers(tm, rng)) n += ni;
                if (std::abs(static_cast<double>(n) - center) > rhs.sampled_pairs_deviation)
                    viol_sampled.fetch_add(1, std::memory_order_relaxed);
                break;
            } catch (const InvalidSingularValue&) {
            }
        }
    }
    rep.violation_freq_mean = static_cast<double>(viol_mean.load()) / static_cast<double>(trials);
    rep.violation_freq_sampled =
        static_cast<double>(viol_sampled.load()) / static_cast<double>(trials);
    return rep;
}

}  // namespace bgbs
