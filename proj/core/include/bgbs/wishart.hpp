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
#include <optional>
#include <vector>

#include "bgbs/rng.hpp"

namespace bgbs {

/// Spectrum of A = C C^dag for C ~ N(0, 1/(alpha^2 m))^{m x m}: the
/// eigenvalues lambda_i = sigma_i^2.
struct WishartSample {
    std::size_t m = 0;
    double alpha = 0.0;
    std::vector<double> eigenvalues;  // descending, >= 0
};

/// E[Tr(A^k)] for A ~ W(0, 1/(alpha^2 m) I_m) via the rising-Pochhammer
/// closed form; evaluated in the log domain to avoid overflow.
/// k = 1, 2, 3 give m/a^2, 2m/a^4, (5m^2+1)/(a^6 m).
double wishart_trace_moment(std::size_t m, double alpha, std::size_t k);

/// log E[Z^{-1}] for the same ensemble, where Z = prod 1/(1 - lambda_i).
/// The alternating sum is evaluated by compensated summation with a
/// cancellation monitor, falling back to a numerically stable scaled
/// Laguerre recurrence when the monitored relative error exceeds 1e-6.
double z_inverse_expectation_log(std::size_t m, double alpha);

/// Eigenvalues of C C^dag for a Gaussian draw.
WishartSample sample_wishart(std::size_t m, double alpha, RngStream& rng);

/// log Z = -sum log(1 - lambda_i); throws if any eigenvalue >= 1.
double z_from_sample(const WishartSample& ws);

/// Closed-form ensemble mean pair number,
/// (m/2) (alpha^2 (1 - sqrt(1 - 4/alpha^2)) - 2); requires alpha > 2.
double mean_pairs_expected(std::size_t m, double alpha);

/// log of the error-conversion ratio I = Z alpha^{2n} m^n / (|H| n!):
/// without clicks |H| = C(m,n)^2 (the no-collision subspace); with c
/// clicks per half |H| = C(m,c)^2 C(n-1, n-c)^2.  All via log-gamma.
double i_ratio_log(std::size_t m, double alpha, std::uint64_t n,
                   std::optional<std::uint64_t> clicks, double log_z);

struct CollisionSubspaceParams {
    std::uint64_t n = 0;  // expected photon pairs, rounded
    std::uint64_t c = 0;  // expected clicks per half, rounded
    bool reduction_feasible = false;  // 2(n - c) <= c
};

/// Round the ensemble expectations to the integer pattern parameters used
/// by the collision-subspace ratio.
CollisionSubspaceParams collision_subspace_params(std::size_t m, double alpha);

/// Right-hand sides of the empirically validated tail bounds.  Each
/// evaluator enforces its validity region (alpha >= 6, m >= ln(1/delta))
/// and throws outside it.
struct BoundRhs {
    double mean_pairs_deviation = 0.0;    // 512 m/a^4 + (1/a^2) sqrt(2/delta)
    double sampled_pairs_deviation = 0.0; // 2 sqrt(m)/(a sqrt(d)) + 3/(a d^{3/4})
                                          //   + 84 sqrt(m)/(a^2 sqrt(d)) + 512 m/a^4
    double z_threshold_log = 0.0;         // log[(2/delta) e^{m/a^2} e^{272 m/a^4}]
};

BoundRhs bound_rhs_evaluators(std::size_t m, double alpha, double delta, double beta = 4.0);

/// Tail threshold for the largest eigenvalue: Pr[lmax >= 4/a^2 + eps] <=
/// m exp(-m a^4 eps^2 / 8); returns that probability bound.
double max_eigenvalue_tail(std::size_t m, double alpha, double eps);

}  // namespace bgbs
