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

#include "bgbs/complex_matrix.hpp"
#include "bgbs/svd.hpp"

namespace bgbs {

/// Thrown by encode() when a singular value reaches 1 (the program would
/// need infinite squeezing); callers must rescale first.
struct InvalidSingularValue : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A validated device program for an m x m transition matrix: the matrix,
/// its SVD, per-pair squeezing parameters r_i = arctanh(sigma_i), and the
/// normalization Z = prod 1/(1 - sigma_i^2).  Immutable after construction.
class TransitionMatrix {
public:
    const ComplexMatrix& matrix() const { return c_; }
    const SvdResult& decomposition() const { return svd_; }
    const std::vector<double>& singular_values() const { return svd_.sigma; }
    const std::vector<double>& squeezing() const { return squeezing_; }
    std::size_t modes() const { return c_.rows(); }

    double log_z() const { return log_z_; }
    /// Z in linear scale; may overflow to +inf for extreme programs, use
    /// log_z() then.
    double z_norm() const;

private:
    friend TransitionMatrix encode(const ComplexMatrix& c);

    ComplexMatrix c_;
    SvdResult svd_;
    std::vector<double> squeezing_;
    double log_z_ = 0.0;
};

/// Outcome (S;T): per-mode photon counts on the two halves.  Sum(s) !=
/// sum(t) is representable but rejected by outcome_probability.
struct PhotonPattern {
    std::vector<std::uint32_t> s;
    std::vector<std::uint32_t> t;

    std::uint64_t total_s() const;
    std::uint64_t total_t() const;
};

/// Validate and encode an arbitrary complex matrix as a device program.
/// Fails with InvalidSingularValue rather than silently rescaling.
TransitionMatrix encode(const ComplexMatrix& c);

/// Mean number of photon pairs, sum_i sigma_i^2 / (1 - sigma_i^2).
double mean_photon_pairs(const TransitionMatrix& tm);

/// Find lambda in (0, 1/sigma_max) such that the rescaled program lambda*c
/// has the requested mean pair number, by bisection on the strictly
/// increasing map lambda -> mean pairs.  Returns (lambda, program).
std::pair<double, TransitionMatrix> rescale_to_mean_pairs(const ComplexMatrix& c, double target);

/// Exact outcome probability Pr(S;T) = (1/Z) |Per(C_{S,T})|^2 / (prod s_i!
/// prod t_j!).  Vacuum gives 1/Z.
double outcome_probability(const TransitionMatrix& tm, const PhotonPattern& p);

/// Pr(n) for total pair number n = 0..n_max: each squeezer emits a
/// geometric number of pairs, Pr(n_i) = (1 - sigma_i^2) sigma_i^{2 n_i};
/// the total is the convolution over squeezers.
std::vector<double> pair_number_distribution(const TransitionMatrix& tm, std::size_t n_max);

/// Normalization oracle: total probability of the n-pair sector by full
/// enumeration of photon patterns.  Guards m <= 4, n <= 5.
double exact_sector_mass(const TransitionMatrix& tm, std::size_t n);

}  // namespace bgbs
