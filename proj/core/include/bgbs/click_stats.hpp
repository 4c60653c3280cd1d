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

#include "bgbs/complex_matrix.hpp"
#include "bgbs/program.hpp"

namespace bgbs {

/// The X, Y, W blocks of the Husimi covariance matrix of an encoded
/// program:
///   X = U 1/(1-sigma^2) U^dag,  Y = V 1/(1-sigma^2) V^dag,
///   W = U sigma/(1-sigma^2) V^T.
/// X and Y are Hermitian with real diagonal >= 1 (X_ii = 1 + mean photon
/// number of mode i).
struct HusimiBlocks {
    ComplexMatrix x;
    ComplexMatrix y;
    ComplexMatrix w;
};

/// First and second moments of the click counts d (first half) and e
/// (second half) under threshold detection.
struct ClickMoments {
    double mean_d = 0.0;
    double mean_e = 0.0;
    double var_d = 0.0;
    double var_e = 0.0;
    double cov_de = 0.0;
    double var_sum = 0.0;  // var_d + var_e + 2 cov_de
};

/// Husimi covariance blocks computed directly from the SVD factors.
HusimiBlocks husimi_blocks(const TransitionMatrix& tm);

/// Exact click moments from one- and two-mode vacuum probabilities:
/// <d> = m - sum_i 1/X_ii and pairwise covariances from the closed 2x2
/// determinant forms.  Throws if the 2x2 positivity (uncertainty relation)
/// is violated.
ClickMoments click_moments_exact(const HusimiBlocks& hb);

/// Ensemble prediction E(<d>) = m mu/(1+mu) for photon-number density mu.
double analytic_click_mean(std::size_t m, double mu);

struct ClickVariancePrediction {
    double var_d = 0.0;
    double var_sum = 0.0;
    double cov_de = 0.0;
    double corr = 0.0;
};

/// Closed-form ensemble predictions for the click variances:
///   E(D^2 d)     = m mu (1 - mu^2 + mu) / ((1-mu)(1+mu)^3)
///   E(D^2 (d+e)) = 2m (2-mu) mu / ((1-mu)(1+mu)^2)
///   Corr(e,d)    = 1 / (1 + mu - mu^2)
ClickVariancePrediction analytic_click_variances(std::size_t m, double mu);

/// Scale factor alpha(mu) = (1+mu)/sqrt(mu).
double alpha_of_mu(double mu);

/// Quarter-circle density p_alpha(sigma) = (alpha/pi) sqrt(4 - alpha^2
/// sigma^2) on [0, 2/alpha], zero outside.
double quarter_circle_pdf(double sigma, double alpha);

}  // namespace bgbs
