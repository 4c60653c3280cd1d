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

#include <string>

#include <json.hpp>

#include "bgbs/complex_matrix.hpp"
#include "bgbs/program.hpp"

namespace bgbs {

/// Matrix wire format: {"rows": r, "cols": c, "re": [...], "im": [...]},
/// entries in row-major order.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Encoded-program wire format:
/// {"matrix": <matrix>, "lambda": l, "sigma": [...], "r": [...], "logZ": z}.
nlohmann::json program_to_json(const TransitionMatrix& tm, double lambda);

}  // namespace bgbs
