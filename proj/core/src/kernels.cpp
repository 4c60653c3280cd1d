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

#include "bgbs/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bgbs {

cplx permanent(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("permanent: matrix must be square");
    const std::size_t n = m.rows();
    if (n > 30) throw std::invalid_argument("permanent: n > 30 exceeds the cost guard");
    if (n == 0) return {1.0, 0.0};

    // Glynn: Per(m) = 2^{1-n} sum_{d in {+-1}^n, d_1 = 1} (prod_i d_i)
    //                 prod_j (sum_i d_i m_ij).
    // Column sums are updated incrementally along a Gray code over d_2..d_n.
    // Extended precision throughout: the alternating sum over 2^{n-1} terms
    // cancels heavily, and double accumulation loses ~1e-8 relative accuracy
    // by n = 20.
    using lcplx = std::complex<long double>;
    std::vector<lcplx> entries(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = m(i, j);

    std::vector<lcplx> colsum(n);
    for (std::size_t j = 0; j < n; ++j) {
        lcplx s{};
        for (std::size_t i = 0; i < n; ++i) s += entries[i * n + j];
        colsum[j] = s;
    }
    auto product = [&]() {
        lcplx p{1.0L, 0.0L};
        for (std::size_t j = 0; j < n; ++j) p *= colsum[j];
        return p;
    };

    lcplx total = product();
    long double sign = 1.0L;
    const std::uint64_t steps = 1ULL << (n - 1);
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < steps; ++k) {
        const std::uint64_t next_gray = k ^ (k >> 1);
        const std::uint64_t changed = gray ^ next_gray;
        const std::size_t row = 1 + static_cast<std::size_t>(std::countr_zero(changed));
        // Bit set means d_row = -1.
        const long double delta = (next_gray & changed) ? -2.0L : 2.0L;
        const lcplx* mrow = entries.data() + row * n;
        for (std::size_t j = 0; j < n; ++j) colsum[j] += delta * mrow[j];
        gray = next_gray;
        sign = -sign;
        total += sign * product();
    }
    total *= std::ldexp(1.0L, -static_cast<int>(n - 1));
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

cplx permanent_naive(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("permanent_naive: matrix must be square");
    const std::size_t n = m.rows();
    if (n > 9) throw std::invalid_argument("permanent_naive: n > 9 exceeds the cost guard");
    if (n == 0) return {1.0, 0.0};

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    cplx total{};
    do {
        cplx term{1.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

namespace {

cplx hafnian_rec(const ComplexMatrix& a, std::vector<std::size_t>& free_idx) {
    const std::size_t n = free_idx.size();
    if (n == 0) return {1.0, 0.0};
    const std::size_t i0 = free_idx[0];
    cplx total{};
    for (std::size_t pos = 1; pos < n; ++pos) {
        const std::size_t j = free_idx[pos];
        std::vector<std::size_t> rest;
        rest.reserve(n - 2);
        for (std::size_t q = 1; q < n; ++q)
            if (q != pos) rest.push_back(free_idx[q]);
        total += a(i0, j) * hafnian_rec(a, rest);
    }
    return total;
}

}  // namespace

cplx hafnian_naive(const ComplexMatrix& a) {
    if (!a.square() || a.rows() % 2 != 0)
        throw std::invalid_argument("hafnian_naive: matrix must be square with even dimension");
    const std::size_t dim = a.rows();
    if (dim > 14) throw std::invalid_argument("hafnian_naive: dimension > 14 exceeds the cost guard");
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            if (std::abs(a(i, j) - a(j, i)) > 1e-12)
                throw std::invalid_argument("hafnian_naive: matrix is not symmetric");

    std::vector<std::size_t> all(dim);
    std::iota(all.begin(), all.end(), 0);
    return hafnian_rec(a, all);
}

ComplexMatrix submatrix_repeat(const ComplexMatrix& c, const std::vector<std::uint32_t>& s,
                               const std::vector<std::uint32_t>& t) {
    if (s.size() != c.rows() || t.size() != c.cols())
        throw std::invalid_argument("submatrix_repeat: pattern length does not match matrix");
    const std::uint64_t total_s = std::accumulate(s.begin(), s.end(), std::uint64_t{0});
    const std::uint64_t total_t = std::accumulate(t.begin(), t.end(), std::uint64_t{0});
    if (total_s != total_t)
        throw std::invalid_argument("submatrix_repeat: sum(s) != sum(t), result would not be square");

    std::vector<std::size_t> row_map, col_map;
    row_map.reserve(total_s);
    col_map.reserve(total_t);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::uint32_t r = 0; r < s[i]; ++r) row_map.push_back(i);
    for (std::size_t j = 0; j < t.size(); ++j)
        for (std::uint32_t r = 0; r < t[j]; ++r) col_map.push_back(j);

    ComplexMatrix out(row_map.size(), col_map.size());
    for (std::size_t i = 0; i < row_map.size(); ++i)
        for (std::size_t j = 0; j < col_map.size(); ++j) out(i, j) = c(row_map[i], col_map[j]);
    return out;
}

}  // namespace bgbs
