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
#include <functional>
#include <vector>

#include "bgbs/complex_matrix.hpp"
#include "bgbs/rng.hpp"

namespace bgbs {

/// Embedding of a c x c matrix `a` into a rectangular matrix b(z) whose
/// repeated-pattern permanent is a degree-<=k polynomial in z with constant
/// term xi * Per(a).  Row repetitions s are absorbed by k_s appended
/// columns (variables y), column repetitions t by k_t appended rows
/// (variables x); k = k_s + k_t.
///
/// Variable layout: y[l] is a c x (s_l - 1) block appended as columns
/// (empty when s_l = 1); x[l] is a (t_l - 1) x (c + k_s) block appended as
/// rows (empty when t_l = 1).  An off-anchor entry (one not in row/column
/// l of its own block) carries a factor of z.
struct RepetitionEmbedding {
    ComplexMatrix a;
    std::vector<std::uint32_t> s, t;
    std::vector<ComplexMatrix> y;  // per l: c x (s_l - 1)
    std::vector<ComplexMatrix> x;  // per l: (t_l - 1) x (c + k_s)
    std::size_t k_s = 0, k_t = 0;

    std::size_t k() const { return k_s + k_t; }

    /// The (c + k_t) x (c + k_s) matrix B[z; x, y].
    ComplexMatrix b(cplx z) const;

    /// xi = prod_i s_i! t_i! (prod_j x[i](j, i)) (prod_j y[i](i, j)); only
    /// the anchor-row/column variables enter.
    cplx xi() const;

    /// Row pattern for b: (s_1..s_c, 1 x k_t).
    std::vector<std::uint32_t> s_prime() const;
    /// Column pattern for b: (t_1..t_c, 1 x k_s).
    std::vector<std::uint32_t> t_prime() const;

    /// submatrix_repeat(b(z), s_prime, t_prime) — the square matrix whose
    /// permanent is the interpolation target.
    ComplexMatrix repeated(cplx z) const;
};

/// Row-only half of the construction: a with the y-blocks appended as
/// columns, size c x (c + k_s).  Entry (i, j) of block l is y[l](i, j) when
/// i = l and z * y[l](i, j) otherwise.
ComplexMatrix build_row_extension(const ComplexMatrix& a, const std::vector<std::uint32_t>& s,
                                  const std::vector<ComplexMatrix>& y, cplx z);

/// Assemble an embedding from given variable values; validates shapes and
/// that all entries of s, t are >= 1.
RepetitionEmbedding build_embedding(const ComplexMatrix& a, const std::vector<std::uint32_t>& s,
                                    const std::vector<std::uint32_t>& t,
                                    std::vector<ComplexMatrix> x, std::vector<ComplexMatrix> y);

/// Embedding with all x, y drawn i.i.d. standard complex Gaussian, so that
/// b(z) at |z| = 1 is itself an i.i.d. Gaussian matrix.
RepetitionEmbedding sample_embedding(const ComplexMatrix& a, const std::vector<std::uint32_t>& s,
                                     const std::vector<std::uint32_t>& t, RngStream& rng);

/// Average of the evaluator over the (k+1)-th roots of unity: recovers the
/// constant term of any polynomial of degree <= k, and per-call noise is
/// never amplified.
cplx interpolate_constant(const std::function<cplx(cplx)>& evaluator, std::size_t k);

struct RecoveryResult {
    cplx value;
    cplx xi = 0.0;
    std::size_t oracle_calls = 0;
    std::size_t resamples = 0;
};

/// Recover Per(a) from k+1 oracle evaluations of the repeated-pattern
/// permanent at roots of unity; x, y are resampled (up to 64 times) while
/// |xi| < 1e-12.  Additive oracle error eps yields error <= eps/|xi|.
RecoveryResult recover_permanent(const ComplexMatrix& a, const std::vector<std::uint32_t>& s,
                                 const std::vector<std::uint32_t>& t,
                                 const std::function<cplx(const ComplexMatrix&)>& oracle,
                                 RngStream& rng);

struct Abs2RecoveryResult {
    double value = 0.0;
    double abs_xi_sq = 0.0;
    std::size_t oracle_calls = 0;
    bool ok = false;
    double condition = 0.0;  // of the scaled interpolation system
    double gamma = 0.0;
};

/// Recover |Per(a)|^2 from 2k+1 evaluations of |Per(.)|^2 at real z evenly
/// spaced in [1-gamma, 1+gamma], gamma = delta/sqrt((c-1)k + k_s k_t), via
/// a degree-2k fit in (z-1) with column scaling, evaluated back at z = 0.
/// ok = false (with diagnostics) when the system's condition exceeds 1e12.
Abs2RecoveryResult recover_permanent_abs2(const ComplexMatrix& a,
                                          const std::vector<std::uint32_t>& s,
                                          const std::vector<std::uint32_t>& t,
                                          const std::function<double(const ComplexMatrix&)>& oracle2,
                                          double delta, RngStream& rng);

/// log E[|Per(A_{S,T})|^2] = log(n!) + sum log s_i! + sum log t_j! for
/// i.i.d. standard complex Gaussian A; requires sum s == sum t == n.
double expected_repeated_permanent_log(const std::vector<std::uint32_t>& s,
                                       const std::vector<std::uint32_t>& t);

/// Monte Carlo statistics of X = prod of k i.i.d. |N(0,1)_C| magnitudes,
/// the Gaussian part of |xi| (the factorial prefactor >= 2^k is separated
/// out analytically).
struct XiStats {
    std::size_t k = 0;
    std::size_t trials = 0;
    double prob_x_above = 0.0;         // Pr[X >= 0.7493^k]
    double mean_log_per_factor = 0.0;  // -> -gamma_EM/2 ~ -0.2886
    double var_log_per_factor = 0.0;   // -> pi^2/24 ~ 0.4112
};

XiStats xi_statistics(std::size_t k, std::size_t trials, std::uint64_t seed);

}  // namespace bgbs
