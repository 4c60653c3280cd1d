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

#include "bgbs/wishart.hpp"

#include <cmath>
#include <stdexcept>

#include "bgbs/sampling.hpp"
#include "bgbs/svd.hpp"

namespace bgbs {

namespace {

double log_binomial(std::uint64_t a, std::uint64_t b) {
    if (b > a) throw std::invalid_argument("log_binomial: b > a");
    return std::lgamma(static_cast<double>(a) + 1.0) - std::lgamma(static_cast<double>(b) + 1.0) -
           std::lgamma(static_cast<double>(a - b) + 1.0);
}

// log E[Z^{-1}] via the scaled Laguerre three-term recurrence, stable in
// the region y = alpha^2 m > 4m (beyond the largest Laguerre zero).
double edelman_log_by_recurrence(std::size_t m, double y) {
    constexpr double kRescale = 1e250;
    constexpr double kLogRescale = 575.6462732485114;  // log(1e250)
    double prev = 1.0;       // L_0(y)
    double curr = 1.0 - y;   // L_1(y)
    double log_scale = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
        const double dk = static_cast<double>(k);
        double next = ((2.0 * dk + 1.0 - y) * curr - dk * prev) / (dk + 1.0);
        prev = curr;
        curr = next;
        if (std::abs(curr) > kRescale) {
            prev /= kRescale;
            curr /= kRescale;
            log_scale += kLogRescale;
        }
    }
    const double dm = static_cast<double>(m);
    return std::lgamma(dm + 1.0) - dm * std::log(y) + std::log(std::abs(curr)) + log_scale;
}

}  // namespace

double wishart_trace_moment(std::size_t m, double alpha, std::size_t k) {
    if (k < 1) throw std::invalid_argument("wishart_trace_moment: k must be >= 1");
    const double log_sigma2 = -std::log(alpha * alpha * static_cast<double>(m));

    // Accumulate signed terms scaled by the largest log magnitude.
    std::vector<double> logs;
    std::vector<double> signs;
    double log_max = -INFINITY;
    for (std::size_t i = 1; i <= k && i <= m; ++i) {
        const double a = static_cast<double>(m + 1 - i);
        const double poch = std::lgamma(a + static_cast<double>(k)) - std::lgamma(a);
        const double lg = 2.0 * poch - std::lgamma(static_cast<double>(k - i) + 1.0) -
                          std::lgamma(static_cast<double>(i)) +
                          static_cast<double>(k) * log_sigma2 - std::log(static_cast<double>(k));
        logs.push_back(lg);
        signs.push_back(i % 2 == 1 ? 1.0 : -1.0);
        log_max = std::max(log_max, lg);
    }
    long double sum = 0.0L;
    for (std::size_t i = 0; i < logs.size(); ++i)
        sum += static_cast<long double>(signs[i]) * std::exp(static_cast<long double>(logs[i] - log_max));
    return static_cast<double>(sum * std::exp(static_cast<long double>(log_max)));
}

double z_inverse_expectation_log(std::size_t m, double alpha) {
    if (m < 1) throw std::invalid_argument("z_inverse_expectation: m must be >= 1");
    const double y = alpha * alpha * static_cast<double>(m);
    const double dm = static_cast<double>(m);

    // Direct alternating sum with compensated accumulation, monitored for
    // catastrophic cancellation.
    double log_max = -INFINITY;
    std::vector<double> logs(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        const double di = static_cast<double>(i);
        logs[i] = 2.0 * std::lgamma(dm + 1.0) - std::lgamma(di + 1.0) -
                  2.0 * std::lgamma(dm - di + 1.0) - di * std::log(y);
        log_max = std::max(log_max, logs[i]);
    }
    long double sum = 0.0L, comp = 0.0L;
    for (std::size_t i = 0; i <= m; ++i) {
        const long double term =
            (i % 2 == 0 ? 1.0L : -1.0L) * std::exp(static_cast<long double>(logs[i] - log_max));
        const long double t = sum + (term - comp);
        comp = (t - sum) - (term - comp);
        sum = t;
    }
    // Cancellation monitor.  Each scaled term carries absolute error of
    // order eps * (magnitude of the lgamma arguments), and the compensated
    // sum accumulates at most (m+1) of those; accept the direct sum only
    // when that error estimate is a factor 1e6 below the result.
    const long double err_est = static_cast<long double>(m + 1) * 1e-18L *
                                (1.0L + std::fabs(static_cast<long double>(log_max)) +
                                 2.0L * std::lgamma(dm + 1.0));
    if (sum > 0.0L && err_est / sum < 1e-6L)
        return log_max + static_cast<double>(std::log(sum));
    return edelman_log_by_recurrence(m, y);
}

WishartSample sample_wishart(std::size_t m, double alpha, RngStream& rng) {
    if (m < 1) throw std::invalid_argument("sample_wishart: m must be >= 1");
    const double variance = 1.0 / (alpha * alpha * static_cast<double>(m));
    const ComplexMatrix c = sample_gaussian_matrix(m, m, 0.0, variance, rng);
    SvdResult dec = svd(c);
    WishartSample ws{m, alpha, {}};
    ws.eigenvalues.reserve(m);
    for (double s : dec.sigma) ws.eigenvalues.push_back(s * s);
    return ws;
}

double z_from_sample(const WishartSample& ws) {
    double log_z = 0.0;
    for (double lam : ws.eigenvalues) {
        if (lam >= 1.0) throw std::invalid_argument("z_from_sample: eigenvalue >= 1, invalid program");
        log_z -= std::log1p(-lam);
    }
    return log_z;
}

double mean_pairs_expected(std::size_t m, double alpha) {
    if (alpha <= 2.0)
        throw std::invalid_argument("mean_pairs_expected: alpha must exceed 2 (quarter-circle support)");
    const double a2 = alpha * alpha;
    return 0.5 * static_cast<double>(m) * (a2 * (1.0 - std::sqrt(1.0 - 4.0 / a2)) - 2.0);
}

double i_ratio_log(std::size_t m, double alpha, std::uint64_t n,
                   std::optional<std::uint64_t> clicks, double log_z) {
    if (n > m) throw std::invalid_argument("i_ratio: n > m");
    double log_space;
    if (clicks) {
        const std::uint64_t c = *clicks;
        if (c > n || c > m) throw std::invalid_argument("i_ratio: clicks out of range");
        log_space = 2.0 * log_binomial(m, c) + 2.0 * log_binomial(n - 1, n - c);
    } else {
        log_space = 2.0 * log_binomial(m, n);
    }
    const double dn = static_cast<double>(n);
    return log_z + 2.0 * dn * std::log(alpha) + dn * std::log(static_cast<double>(m)) - log_space -
           std::lgamma(dn + 1.0);
}

CollisionSubspaceParams collision_subspace_params(std::size_t m, double alpha) {
    CollisionSubspaceParams out;
    const double pairs = mean_pairs_expected(m, alpha);
    out.n = static_cast<std::uint64_t>(std::llround(pairs));
    const double mu = pairs / static_cast<double>(m);
    out.c = static_cast<std::uint64_t>(std::llround(static_cast<double>(m) * mu / (1.0 + mu)));
    out.reduction_feasible = 2 * (out.n - std::min(out.n, out.c)) <= out.c;
    return out;
}

BoundRhs bound_rhs_evaluators(std::size_t m, double alpha, double delta, double beta) {
    if (beta < 4.0) throw std::invalid_argument("bound_rhs_evaluators: beta must be >= 4");
    if (alpha < 6.0 && alpha * alpha < 8.0 * beta)
        throw std::invalid_argument("bound_rhs_evaluators: alpha outside validity region");
    if (delta <= 0.0 || delta > 1.0) throw std::invalid_argument("bound_rhs_evaluators: delta in (0,1]");
    if (static_cast<double>(m) < std::log(1.0 / delta))
        throw std::invalid_argument("bound_rhs_evaluators: m < ln(1/delta)");

    const double dm = static_cast<double>(m);
    const double a2 = alpha * alpha;
    const double a4 = a2 * a2;
    BoundRhs rhs;
    rhs.mean_pairs_deviation = 32.0 * beta * beta * dm / a4 + std::sqrt(2.0 / delta) / a2;
    rhs.sampled_pairs_deviation = 2.0 * std::sqrt(dm) / (alpha * std::sqrt(delta)) +
                                  3.0 / (alpha * std::pow(delta, 0.75)) +
                                  21.0 * beta * std::sqrt(dm) / (a2 * std::sqrt(delta)) +
                                  32.0 * beta * beta * dm / a4;
    rhs.z_threshold_log = std::log(2.0 / delta) + dm / a2 + 17.0 * beta * beta * dm / a4;
    return rhs;
}

double max_eigenvalue_tail(std::size_t m, double alpha, double eps) {
    const double dm = static_cast<double>(m);
    const double a4 = alpha * alpha * alpha * alpha;
    return dm * std::exp(-dm * a4 * eps * eps / 8.0);
}

}  // namespace bgbs
