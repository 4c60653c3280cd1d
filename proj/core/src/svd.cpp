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

#include "bgbs/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bgbs {

namespace {

constexpr double kOrthoTol = 1e-12;
constexpr int kMaxSweeps = 100;

// Column-major working storage so the hot inner loops touch contiguous
// memory.
struct ColMat {
    std::size_t rows, cols;
    std::vector<cplx> d;  // column j at d[j * rows]

    ColMat(std::size_t r, std::size_t c) : rows(r), cols(c), d(r * c) {}
    explicit ColMat(const ComplexMatrix& m) : rows(m.rows()), cols(m.cols()), d(rows * cols) {
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) d[j * rows + i] = m(i, j);
    }

    cplx* col(std::size_t j) { return d.data() + j * rows; }
    const cplx* col(std::size_t j) const { return d.data() + j * rows; }
};

double col_norm2(const ColMat& m, std::size_t j) {
    const cplx* p = m.col(j);
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) s += std::norm(p[i]);
    return s;
}

cplx col_dot(const ColMat& m, std::size_t p, std::size_t q) {
    const cplx* a = m.col(p);
    const cplx* b = m.col(q);
    cplx s{};
    for (std::size_t i = 0; i < m.rows; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// One complex Jacobi rotation on columns (p, q) of both a and v.
void rotate(ColMat& a, ColMat& v, std::size_t p, std::size_t q, double app, double aqq, cplx apq) {
    const double g = std::abs(apq);
    const cplx phase = apq / g;  // e^{i phi}
    const double tau = (aqq - app) / (2.0 * g);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const cplx sp = s * std::conj(phase);
    const cplx sq = s * phase;

    auto apply = [&](ColMat& m) {
        cplx* cp = m.col(p);
        cplx* cq = m.col(q);
        for (std::size_t i = 0; i < m.rows; ++i) {
            const cplx vp = cp[i];
            const cplx vq = cq[i];
            cp[i] = c * vp - sp * vq;
            cq[i] = sq * vp + c * vq;
        }
    };
    apply(a);
    apply(v);
}

// Extend the first `have` orthonormal columns of u to a full basis.
void complete_basis(ColMat& u, std::size_t have) {
    std::size_t next = have;
    for (std::size_t e = 0; e < u.rows && next < u.cols; ++e) {
        std::vector<cplx> cand(u.rows, cplx{});
        cand[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < next; ++j) {
                const cplx* cj = u.col(j);
                cplx proj{};
                for (std::size_t i = 0; i < u.rows; ++i) proj += std::conj(cj[i]) * cand[i];
                for (std::size_t i = 0; i < u.rows; ++i) cand[i] -= proj * cj[i];
            }
        }
        double nrm = 0.0;
        for (const auto& x : cand) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8) continue;  // candidate was in the span, try the next axis
        cplx* out = u.col(next);
        for (std::size_t i = 0; i < u.rows; ++i) out[i] = cand[i] / nrm;
        ++next;
    }
    if (next < u.cols) throw std::runtime_error("svd: failed to complete orthonormal basis");
}

ComplexMatrix to_row_major(const ColMat& m) {
    ComplexMatrix out(m.rows, m.cols);
    for (std::size_t j = 0; j < m.cols; ++j)
        for (std::size_t i = 0; i < m.rows; ++i) out(i, j) = m.col(j)[i];
    return out;
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
    if (!m.all_finite()) throw std::invalid_argument("svd: input has non-finite entries");
    if (m.rows() < m.cols()) {
        // Decompose the transpose and swap the factors.
        SvdResult t = svd(m.transpose());
        return SvdResult{std::move(t.v), std::move(t.sigma), std::move(t.u)};
    }

    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    ColMat a(m);
    ColMat vacc(cols, cols);
    for (std::size_t j = 0; j < cols; ++j) vacc.col(j)[j] = 1.0;

    std::vector<double> norm2(cols);
    for (std::size_t j = 0; j < cols; ++j) norm2[j] = col_norm2(a, j);

    bool converged = cols < 2;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        std::size_t rotations = 0;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                const cplx apq = col_dot(a, p, q);
                if (std::abs(apq) <= kOrthoTol * std::sqrt(norm2[p] * norm2[q])) continue;
                rotate(a, vacc, p, q, norm2[p], norm2[q], apq);
                norm2[p] = col_norm2(a, p);
                norm2[q] = col_norm2(a, q);
                ++rotations;
            }
        }
        converged = rotations == 0;
    }
    if (!converged) throw std::runtime_error("svd: one-sided Jacobi did not converge");

    // Sort by singular value descending.
    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norm2[x] > norm2[y]; });

    ColMat u(rows, rows);
    ColMat vout(cols, cols);
    std::vector<double> sigma(cols);
    const double sigma_max = std::sqrt(norm2[order[0]]);
    std::size_t rank = 0;
    for (std::size_t j = 0; j < cols; ++j) {
        const std::size_t src = order[j];
        sigma[j] = std::sqrt(norm2[src]);
        const cplx* vc = vacc.col(src);
        cplx* vo = vout.col(j);
        // A = U diag(sigma) V^T requires V = conj(accumulated rotations).
        for (std::size_t i = 0; i < cols; ++i) vo[i] = std::conj(vc[i]);
        if (sigma[j] > sigma_max * 1e-14 && sigma[j] > 0.0) {
            const cplx* ac = a.col(src);
            cplx* uc = u.col(j);
            for (std::size_t i = 0; i < rows; ++i) uc[i] = ac[i] / sigma[j];
            rank = j + 1;
        } else {
            sigma[j] = 0.0;
        }
    }
    complete_basis(u, rank);

    return SvdResult{to_row_major(u), std::move(sigma), to_row_major(vout)};
}

}  // namespace bgbs
