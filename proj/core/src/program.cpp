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

#include "bgbs/program.hpp"

#include <cmath>
#include <numeric>

#include "bgbs/kernels.hpp"

namespace bgbs {

namespace {

constexpr double kSigmaOneMargin = 1e-12;
constexpr double kBisectTol = 1e-12;
constexpr int kBisectMaxIter = 200;

double log_factorial(std::uint64_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double mean_pairs_of_sigmas(const std::vector<double>& sigma, double lambda) {
    double total = 0.0;
    for (double s : sigma) {
        const double ls2 = (lambda * s) * (lambda * s);
        total += ls2 / (1.0 - ls2);
    }
    return total;
}

}  // namespace

double TransitionMatrix::z_norm() const { return std::exp(log_z_); }

std::uint64_t PhotonPattern::total_s() const {
    return std::accumulate(s.begin(), s.end(), std::uint64_t{0});
}

std::uint64_t PhotonPattern::total_t() const {
    return std::accumulate(t.begin(), t.end(), std::uint64_t{0});
}

TransitionMatrix encode(const ComplexMatrix& c) {
    if (!c.square()) throw std::invalid_argument("encode: transition matrix must be square");
    if (!c.all_finite()) throw std::invalid_argument("encode: non-finite entries");

    TransitionMatrix tm;
    tm.c_ = c;
    tm.svd_ = svd(c);
    tm.squeezing_.reserve(tm.svd_.sigma.size());
    double log_z = 0.0;
    for (double s : tm.svd_.sigma) {
        if (s >= 1.0 - kSigmaOneMargin)
            throw InvalidSingularValue("encode: singular value >= 1, rescale the matrix first");
        tm.squeezing_.push_back(std::atanh(s));
        log_z -= std::log1p(-s * s);
    }
    tm.log_z_ = log_z;
    return tm;
}

double mean_photon_pairs(const TransitionMatrix& tm) {
    return mean_pairs_of_sigmas(tm.singular_values(), 1.0);
}

std::pair<double, TransitionMatrix> rescale_to_mean_pairs(const ComplexMatrix& c, double target) {
    if (target <= 0.0) throw std::invalid_argument("rescale_to_mean_pairs: target must be > 0");
    SvdResult dec = svd(c);
    const double sigma_max = dec.sigma.empty() ? 0.0 : dec.sigma.front();
    if (sigma_max <= 0.0)
        throw std::invalid_argument("rescale_to_mean_pairs: zero matrix cannot reach a positive target");

    // Mean pairs diverges as lambda -> 1/sigma_max, so the root is always
    // bracketed inside (0, hi).
    double lo = 0.0;
    double hi = (1.0 - kSigmaOneMargin) / sigma_max;
    double lambda = 0.5 * hi;
    for (int it = 0; it < kBisectMaxIter; ++it) {
        lambda = 0.5 * (lo + hi);
        const double pairs = mean_pairs_of_sigmas(dec.sigma, lambda);
        if (std::abs(pairs - target) <= 1e-13 * target) break;
        (pairs < target ? lo : hi) = lambda;
        if (hi - lo <= kBisectTol * lambda) break;
    }
    return {lambda, encode(c.scaled(lambda))};
}

double outcome_probability(const TransitionMatrix& tm, const PhotonPattern& p) {
    const std::size_t m = tm.modes();
    if (p.s.size() != m || p.t.size() != m)
        throw std::invalid_argument("outcome_probability: pattern length does not match program");
    const std::uint64_t n = p.total_s();
    if (n != p.total_t())
        throw std::invalid_argument("outcome_probability: sum(s) != sum(t), permanent undefined");
    if (n > 30) throw std::invalid_argument("outcome_probability: photon total exceeds kernel cap");

    if (n == 0) return std::exp(-tm.log_z());

    const cplx per = permanent(submatrix_repeat(tm.matrix(), p.s, p.t));
    double log_fact = 0.0;
    for (auto si : p.s) log_fact += log_factorial(si);
    for (auto tj : p.t) log_fact += log_factorial(tj);
    return std::norm(per) * std::exp(-tm.log_z() - log_fact);
}

std::vector<double> pair_number_distribution(const TransitionMatrix& tm, std::size_t n_max) {
    // Convolution of per-squeezer geometric distributions.
    std::vector<double> dist(n_max + 1, 0.0);
    dist[0] = 1.0;
    for (double s : tm.singular_values()) {
        const double q = s * s;
        const double base = 1.0 - q;
        std::vector<double> next(n_max + 1, 0.0);
        for (std::size_t tot = 0; tot <= n_max; ++tot) {
            if (dist[tot] == 0.0) continue;
            double w = base;
            for (std::size_t k = 0; tot + k <= n_max; ++k) {
                next[tot + k] += dist[tot] * w;
                w *= q;
            }
        }
        dist.swap(next);
    }
    return dist;
}

namespace {

void enumerate_patterns(std::size_t m, std::size_t total,
                        std::vector<std::uint32_t>& current, std::size_t pos,
                        std::vector<std::vector<std::uint32_t>>& out) {
    if (pos + 1 == m) {
        current[pos] = static_cast<std::uint32_t>(total);
        out.push_back(current);
        return;
    }
    for (std::size_t v = 0; v <= total; ++v) {
        current[pos] = static_cast<std::uint32_t>(v);
        enumerate_patterns(m, total - v, current, pos + 1, out);
    }
}

}  // namespace

double exact_sector_mass(const TransitionMatrix& tm, std::size_t n) {
    const std::size_t m = tm.modes();
    if (m > 4 || n > 5) throw std::invalid_argument("exact_sector_mass: enumeration guard exceeded");

    std::vector<std::vector<std::uint32_t>> halves;
    std::vector<std::uint32_t> scratch(m, 0);
    enumerate_patterns(m, n, scratch, 0, halves);

    double total = 0.0;
    for (const auto& s : halves)
        for (const auto& t : halves) total += outcome_probability(tm, PhotonPattern{s, t});
    return total;
}

}  // namespace bgbs
