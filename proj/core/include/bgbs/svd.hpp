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

#include <vector>

#include "bgbs/complex_matrix.hpp"

namespace bgbs {

/// Decomposition input = u * diag(sigma) * transpose(v) with u, v unitary
/// and sigma sorted descending.
struct SvdResult {
    ComplexMatrix u;
    std::vector<double> sigma;
    ComplexMatrix v;
};

/// Singular value decomposition by one-sided Jacobi iteration.  Convergence
/// tolerance 1e-12 on the relative off-diagonal mass of the implicit Gram
/// matrix; throws after the iteration cap (pathological input).
SvdResult svd(const ComplexMatrix& m);

}  // namespace bgbs
