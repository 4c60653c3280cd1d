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

#include "bgbs/click_stats.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bgbs {

HusimiBlocks husimi_blocks(const TransitionMatrix& tm) {
    const std::size_t m = tm.modes();
    const SvdResult& dec = tm.decomposition();

    // X = U D U^dag, Y = V D V^dag with D = 1/(1-sigma^2); W = U E V^T
    // with E = sigma/(1-sigma^2).
    HusimiBlocks hb{ComplexMatrix(m, m), ComplexMatrix(m, m), ComplexMatrix(m, m)};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            cplx x{}, y{}, w{};
            for (std::size_t k = 0; k < m; ++k) {
                const double s = dec.sigma[k];
                const double diag = 1.0 / (1.0 - s * s);
                x += dec.u(i, k) * diag * std::conj(dec.u(j, k));
                y += dec.v(i, k) * diag * std::conj(dec.v(j, k));
                w += dec.u(i, k) * (s * diag) * dec.v(j, k);
            }
            hb.x(i, j) = x;
            hb.y(i, j) = y;
            hb.w(i, j) = w;
        }
    }
    return hb;
}

namespace {

// Covariance contribution of a mode pair with joint vacuum probability
// 1/(aa*bb - |off|^2) and marginals 1/aa, 1/bb.
double pair_cov(double aa, double bb, double off2) {
    const double det = aa * bb - off2;
    if (det <= 0.0)
        throw std::invalid_argument("click_moments_exact: 2x2 positivity violated, invalid state");
    return 1.0 / det - 1.0 / (aa * bb);
}

}  // namespace

ClickMoments click_moments_exact(const HusimiBlocks& hb) {
    const std::size_t m = hb.x.rows();
    ClickMoments cm;

    std::vector<double> xd(m), yd(m);
    for (std::size_t i = 0; i < m; ++i) {
        xd[i] = hb.x(i, i).real();
        yd[i] = hb.y(i, i).real();
        if (xd[i] < 1.0 - 1e-9 || yd[i] < 1.0 - 1e-9)
            throw std::invalid_argument("click_moments_exact: diagonal below 1, invalid state");
        cm.mean_d += 1.0 - 1.0 / xd[i];
        cm.mean_e += 1.0 - 1.0 / yd[i];
        // Single-mode Bernoulli term of the variance.
        const double px = 1.0 / xd[i];
        const double py = 1.0 / yd[i];
        cm.var_d += px * (1.0 - px);
        cm.var_e += py * (1.0 - py);
    }

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i) {
                if (j > i) {
                    cm.var_d += 2.0 * pair_cov(xd[i], xd[j], std::norm(hb.x(i, j)));
                    cm.var_e += 2.0 * pair_cov(yd[i], yd[j], std::norm(hb.y(i, j)));
                }
            }
            cm.cov_de += pair_cov(xd[i], yd[j], std::norm(hb.w(i, j)));
        }
    }
    cm.var_sum = cm.var_d + cm.var_e + 2.0 * cm.cov_de;
    return cm;
}

double analytic_click_mean(std::size_t m, double mu) {
    if (mu <= 0.0 || mu >= 1.0) throw std::invalid_argument("analytic_click_mean: mu must be in (0,1)");
    return static_cast<double>(m) * mu / (1.0 + mu);
}

ClickVariancePrediction analytic_click_variances(std::size_t m, double mu) {
    if (mu <= 0.0 || mu >= 1.0)
        throw std::invalid_argument("analytic_click_variances: mu must be in (0,1)");
    const double dm = static_cast<double>(m);
    ClickVariancePrediction out;
    out.var_d = dm * mu * (1.0 - mu * mu + mu) / ((1.0 - mu) * std::pow(1.0 + mu, 3));
    out.var_sum = 2.0 * dm * (2.0 - mu) * mu / ((1.0 - mu) * (1.0 + mu) * (1.0 + mu));
    out.cov_de = out.var_d / (1.0 - mu * mu + mu);
    out.corr = 1.0 / (1.0 + mu - mu * mu);
    return out;
}

double alpha_of_mu(double mu) {
    if (mu <= 0.0) throw std::invalid_argument("alpha_of_mu: mu must be > 0");
    return (1.0 + mu) / std::sqrt(mu);
}

double quarter_circle_pdf(double sigma, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("quarter_circle_pdf: alpha must be > 0");
    if (sigma < 0.0 || sigma > 2.0 / alpha) return 0.0;
    return (alpha / std::numbers::pi) * std::sqrt(4.0 - alpha * alpha * sigma * sigma);
}

}  // namespace bgbs
