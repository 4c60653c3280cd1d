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

#include "bgbs/repetition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bgbs/kernels.hpp"
#include "bgbs/sampling.hpp"

namespace bgbs {

namespace {

constexpr double kXiThreshold = 1e-12;
constexpr std::size_t kMaxResamples = 64;

double factorial(std::uint32_t n) {
    double f = 1.0;
    for (std::uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
}

std::size_t collisions(const std::vector<std::uint32_t>& v) {
    std::size_t k = 0;
    for (std::uint32_t e : v) {
        if (e < 1) throw std::invalid_argument("repetition pattern entries must be >= 1");
        k += e - 1;
    }
    return k;
}

}  // namespace

ComplexMatrix RepetitionEmbedding::b(cplx z) const {
    const std::size_t c = a.rows();
    ComplexMatrix out(c + k_t, c + k_s);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) out(i, j) = a(i, j);
    std::size_t col = c;
    for (std::size_t l = 0; l < c; ++l)
        for (std::size_t j = 0; j + 1 < s[l]; ++j, ++col)
            for (std::size_t i = 0; i < c; ++i)
                out(i, col) = (i == l) ? y[l](i, j) : z * y[l](i, j);
    std::size_t row = c;
    for (std::size_t l = 0; l < c; ++l)
        for (std::size_t j = 0; j + 1 < t[l]; ++j, ++row)
            for (std::size_t i = 0; i < c + k_s; ++i)
                out(row, i) = (i == l) ? x[l](j, i) : z * x[l](j, i);
    return out;
}

cplx RepetitionEmbedding::xi() const {
    cplx out = 1.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out *= factorial(s[i]) * factorial(t[i]);
        for (std::size_t j = 0; j + 1 < t[i]; ++j) out *= x[i](j, i);
        for (std::size_t j = 0; j + 1 < s[i]; ++j) out *= y[i](i, j);
    }
    return out;
}

std::vector<std::uint32_t> RepetitionEmbedding::s_prime() const {
    std::vector<std::uint32_t> out = s;
    out.insert(out.end(), k_t, 1u);
    return out;
}

std::vector<std::uint32_t> RepetitionEmbedding::t_prime() const {
    std::vector<std::uint32_t> out = t;
    out.insert(out.end(), k_s, 1u);
    return out;
}

ComplexMatrix RepetitionEmbedding::repeated(cplx z) const {
    return submatrix_repeat(b(z), s_prime(), t_prime());
}

ComplexMatrix build_row_extension(const ComplexMatrix& a, const std::vector<std::uint32_t>& s,
                                  const std::vector<ComplexMatrix>& y, cplx z) {
    const std::size_t c = a.rows();
    if (a.cols() != c || s.size() != c || y.size() != c)
        throw std::invalid_argument("build_row_extension: shape mismatch");
    const std::size_t k_s = collisions(s);
    ComplexMatrix out(c, c + k_s);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) out(i, j) = a(i, j);
    std::size_t col = c;
    for (std::size_t l = 0; l < c; ++l) {
        if (s[l] > 1 && (y[l].rows() != c || y[l].cols() != s[l] - 1))
            throw std::invalid_argument("build_row_extension: y block shape mismatch");
        for (std::size_t j = 0; j + 1 < s[l]; ++j, ++col)
            for (std::size_t i = 0; i < c; ++i)
                out(i, col) = (i == l) ? y[l](i, j) : z * y[l](i, j);
    }
    return out;
}

RepetitionEmbedding build_embedding(const ComplexMatrix& a, const std::vector<std::uint32_t>& s,
                                    const std::vector<std::uint32_t>& t,
                                    std::vector<ComplexMatrix> x, std::vector<ComplexMatrix> y) {
    const std::size_t c = a.rows();
    if (a.cols() != c || s.size() != c || t.size() != c || x.size() != c || y.size() != c)
        throw std::invalid_argument("build_embedding: shape mismatch");
    RepetitionEmbedding emb;
    emb.a = a;
    emb.s = s;
    emb.t = t;
    emb.k_s = collisions(s);
    emb.k_t = collisions(t);
    for (std::size_t l = 0; l < c; ++l) {
        if (s[l] > 1 && (y[l].rows() != c || y[l].cols() != s[l] - 1))
            throw std::invalid_argument("build_embedding: y block shape mismatch");
        if (t[l] > 1 && (x[l].rows() != t[l] - 1 || x[l].cols() != c + emb.k_s))
            throw std::invalid_argument("build_embedding: x block shape mismatch");
    }
    emb.x = std::move(x);
    emb.y = std::move(y);
    return emb;
}

RepetitionEmbedding sample_embedding(const ComplexMatrix& a, const std::vector<std::uint32_t>& s,
                                     const std::vector<std::uint32_t>& t, RngStream& rng) {
    const std::size_t c = a.rows();
    const std::size_t k_s = collisions(s);
    std::vector<ComplexMatrix> y(c), x(c);
    for (std::size_t l = 0; l < c; ++l)
        y[l] = s[l] > 1 ? sample_gaussian_matrix(c, s[l] - 1, 0.0, 1.0, rng) : ComplexMatrix(c, 0);
    for (std::size_t l = 0; l < c; ++l)
        x[l] = t[l] > 1 ? sample_gaussian_matrix(t[l] - 1, c + k_s, 0.0, 1.0, rng)
                        : ComplexMatrix(0, c + k_s);
    return build_embedding(a, s, t, std::move(x), std::move(y));
}

cplx interpolate_constant(const std::function<cplx(cplx)>& evaluator, std::size_t k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                             static_cast<double>(k + 1);
        acc += evaluator(cplx(std::cos(theta), std::sin(theta)));
    }
    return acc / static_cast<double>(k + 1);
}

RecoveryResult recover_permanent(const ComplexMatrix& a, const std::vector<std::uint32_t>& s,
                                 const std::vector<std::uint32_t>& t,
                                 const std::function<cplx(const ComplexMatrix&)>& oracle,
                                 RngStream& rng) {
    RecoveryResult res;
    RepetitionEmbedding emb;
    for (std::size_t attempt = 0;; ++attempt) {
        if (attempt >= kMaxResamples)
            throw std::runtime_error("recover_permanent: |xi| persistently below threshold");
        emb = sample_embedding(a, s, t, rng);
        res.xi = emb.xi();
        if (std::abs(res.xi) >= kXiThreshold) break;
        ++res.resamples;
    }
    const std::size_t k = emb.k();
    const cplx gamma0 = interpolate_constant(
        [&](cplx z) {
            ++res.oracle_calls;
            return oracle(emb.repeated(z));
        },
        k);
    res.value = gamma0 / res.xi;
    return res;
}

Abs2RecoveryResult recover_permanent_abs2(const ComplexMatrix& a,
                                          const std::vector<std::uint32_t>& s,
                                          const std::vector<std::uint32_t>& t,
                                          const std::function<double(const ComplexMatrix&)>& oracle2,
                                          double delta, RngStream& rng) {
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("recover_permanent_abs2: delta in (0,1)");
    Abs2RecoveryResult res;
    RepetitionEmbedding emb;
    for (std::size_t attempt = 0;; ++attempt) {
        if (attempt >= kMaxResamples)
            throw std::runtime_error("recover_permanent_abs2: |xi| persistently below threshold");
        emb = sample_embedding(a, s, t, rng);
        const double axi = std::abs(emb.xi());
        if (axi >= kXiThreshold) {
            res.abs_xi_sq = axi * axi;
            break;
        }
    }
    const std::size_t c = a.rows();
    const std::size_t k = emb.k();
    // Number of z-deformed entries of b; at most delta/sqrt of it keeps the
    // deformed Gaussian ensemble within O(delta) total variation.
    const std::size_t deformed = (c > 0 ? (c - 1) * k : 0) + emb.k_s * emb.k_t;
    res.gamma = delta / std::sqrt(static_cast<double>(std::max<std::size_t>(1, deformed)));

    if (k == 0) {
        res.value = oracle2(emb.repeated(1.0)) / res.abs_xi_sq;
        res.oracle_calls = 1;
        res.condition = 1.0;
        res.ok = true;
        return res;
    }

    const std::size_t npts = 2 * k + 1;
    std::vector<double> f(npts);
    std::vector<std::vector<double>> mat(npts, std::vector<double>(npts));
    for (std::size_t i = 0; i < npts; ++i) {
        const double w = -res.gamma + 2.0 * res.gamma * static_cast<double>(i) /
                                         static_cast<double>(npts - 1);
        f[i] = oracle2(emb.repeated(cplx(1.0 + w, 0.0)));
        ++res.oracle_calls;
        double p = 1.0;
        for (std::size_t q = 0; q < npts; ++q) {
            mat[i][q] = p;
            p *= w / res.gamma;  // column scaling: coefficients in (w/gamma)^q
        }
    }

    // Explicit inverse by Gauss-Jordan (system is at most 5x5 in practice)
    // so the 1-norm condition number is available for the failure check.
    std::vector<std::vector<double>> inv(npts, std::vector<double>(npts, 0.0));
    for (std::size_t i = 0; i < npts; ++i) inv[i][i] = 1.0;
    auto work = mat;
    for (std::size_t colp = 0; colp < npts; ++colp) {
        std::size_t piv = colp;
        for (std::size_t r = colp + 1; r < npts; ++r)
            if (std::abs(work[r][colp]) > std::abs(work[piv][colp])) piv = r;
        std::swap(work[colp], work[piv]);
        std::swap(inv[colp], inv[piv]);
        const double d = work[colp][colp];
        if (d == 0.0) {
            res.ok = false;
            res.condition = INFINITY;
            return res;
        }
        for (std::size_t q = 0; q < npts; ++q) {
            work[colp][q] /= d;
            inv[colp][q] /= d;
        }
        for (std::size_t r = 0; r < npts; ++r) {
            if (r == colp) continue;
            const double m = work[r][colp];
            for (std::size_t q = 0; q < npts; ++q) {
                work[r][q] -= m * work[colp][q];
                inv[r][q] -= m * inv[colp][q];
            }
        }
    }
    auto norm1 = [npts](const std::vector<std::vector<double>>& mm) {
        double best = 0.0;
        for (std::size_t q = 0; q < npts; ++q) {
            double colsum = 0.0;
            for (std::size_t r = 0; r < npts; ++r) colsum += std::abs(mm[r][q]);
            best = std::max(best, colsum);
        }
        return best;
    };
    res.condition = norm1(mat) * norm1(inv);
    if (res.condition > 1e12) {
        res.ok = false;
        return res;
    }

    std::vector<double> beta(npts, 0.0);
    for (std::size_t r = 0; r < npts; ++r)
        for (std::size_t q = 0; q < npts; ++q) beta[r] += inv[r][q] * f[q];

    // z = 0 corresponds to w = -1, i.e. scaled variable -1/gamma.
    double value = 0.0, p = 1.0;
    for (std::size_t q = 0; q < npts; ++q) {
        value += beta[q] * p;
        p *= -1.0 / res.gamma;
    }
    res.value = value / res.abs_xi_sq;
    res.ok = true;
    return res;
}

double expected_repeated_permanent_log(const std::vector<std::uint32_t>& s,
                                       const std::vector<std::uint32_t>& t) {
    std::uint64_t ns = 0, nt = 0;
    for (std::uint32_t e : s) ns += e;
    for (std::uint32_t e : t) nt += e;
    if (ns != nt) throw std::invalid_argument("expected_repeated_permanent: sum(s) != sum(t)");
    double out = std::lgamma(static_cast<double>(ns) + 1.0);
    for (std::uint32_t e : s) out += std::lgamma(static_cast<double>(e) + 1.0);
    for (std::uint32_t e : t) out += std::lgamma(static_cast<double>(e) + 1.0);
    return out;
}

XiStats xi_statistics(std::size_t k, std::size_t trials, std::uint64_t seed) {
    if (k < 1 || trials < 1) throw std::invalid_argument("xi_statistics: k, trials >= 1");
    XiStats st;
    st.k = k;
    st.trials = trials;
    const double log_threshold = static_cast<double>(k) * std::log(0.7493);

    std::uint64_t above = 0;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        RngStream rng(seed, trial);
        double log_x = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double lg = std::log(std::abs(rng.gaussian_complex()));
            log_x += lg;
            sum += lg;
            sum_sq += lg * lg;
        }
        if (log_x >= log_threshold) ++above;
    }
    const double count = static_cast<double>(k) * static_cast<double>(trials);
    st.prob_x_above = static_cast<double>(above) / static_cast<double>(trials);
    st.mean_log_per_factor = sum / count;
    st.var_log_per_factor = sum_sq / count - st.mean_log_per_factor * st.mean_log_per_factor;
    return st;
}

}  // namespace bgbs
