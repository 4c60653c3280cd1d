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

#include "bgbs/matrix_json.hpp"

#include <stdexcept>

namespace bgbs {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    std::vector<double> re, im;
    re.reserve(m.rows() * m.cols());
    im.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            re.push_back(m(i, j).real());
            im.push_back(m(i, j).imag());
        }
    return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != rows * cols || im.size() != rows * cols)
        throw std::invalid_argument("matrix_from_json: re/im length mismatch");
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t jj = 0; jj < cols; ++jj)
            m(i, jj) = cplx(re[i * cols + jj], im[i * cols + jj]);
    return m;
}

nlohmann::json program_to_json(const TransitionMatrix& tm, double lambda) {
    std::vector<double> r;
    r.reserve(tm.squeezing().size());
    for (double ri : tm.squeezing()) r.push_back(ri);
    return nlohmann::json{{"matrix", matrix_to_json(tm.matrix())},
                          {"lambda", lambda},
                          {"sigma", tm.singular_values()},
                          {"r", r},
                          {"logZ", tm.log_z()}};
}

}  // namespace bgbs
