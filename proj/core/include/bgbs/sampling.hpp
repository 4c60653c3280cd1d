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
#include "bgbs/rng.hpp"

namespace bgbs {

/// Matrix of i.i.d. complex Gaussian entries.  `variance` is E[|x - mean|^2];
/// real and imaginary parts each carry variance/2.
inline ComplexMatrix sample_gaussian_matrix(std::size_t rows, std::size_t cols, double mean,
                                            double variance, RngStream& rng) {
    if (variance <= 0.0) throw std::invalid_argument("sample_gaussian_matrix: variance must be > 0");
    const double scale = std::sqrt(variance);
    ComplexMatrix out(rows, cols);
    for (auto& v : out.data()) v = mean + scale * rng.gaussian_complex();
    return out;
}

}  // namespace bgbs
