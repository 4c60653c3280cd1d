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

namespace bgbs {

/// Permanent of a square matrix by Glynn's formula with Gray-code updates,
/// O(n 2^n) arithmetic.  Exact up to floating rounding.  Throws for
/// non-square input or n > 30.
cplx permanent(const ComplexMatrix& m);

/// Permanent by summing over all n! permutations.  Independent oracle for
/// the Gray-code kernel; n <= 9.
cplx permanent_naive(const ComplexMatrix& m);

/// Hafnian of a symmetric 2n x 2n matrix by enumerating the (2n-1)!!
/// perfect matchings.  n <= 7; input must be symmetric within 1e-12.
cplx hafnian_naive(const ComplexMatrix& a);

/// Submatrix with repeated rows and columns: row i of c is dropped when
/// s[i] == 0 and repeated s[i] times otherwise; columns analogously via t.
/// Row/column order preserves ascending index with consecutive repeats.
/// Requires sum(s) == sum(t) so the result is square.
ComplexMatrix submatrix_repeat(const ComplexMatrix& c, const std::vector<std::uint32_t>& s,
                               const std::vector<std::uint32_t>& t);

}  // namespace bgbs
