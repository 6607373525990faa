// Copyright 2026 The qdeco Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDECO_CIRCUIT_JSON_H_
#define QDECO_CIRCUIT_JSON_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qdeco/complex_matrix.h"
#include "qdeco/medium.h"

namespace qdeco {

/// Malformed circuit text. The message names the line and column for syntax
/// errors, or the offending field path (e.g. "gates[3].targets") otherwise.
class CircuitFormatError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

// Circuit files look like
//
//   { "n": 2, "eta": 0.1, "lifetimes": [[0, 3], [0, 3]], "result_qubits": [0, 1],
//     "fault": {"observable": M},
//     "gates": [{"kind": "unitary", "time": 0, "targets": [0, 1], "matrix": M}] }
//
// where a matrix M is row-major nested arrays of [re, im] pairs. "fault" is
// optional and defaults to the Pauli-Z collapse.

/// Parses the structure only; semantic checks live in validate().
Medium parse_circuit_json(std::string_view text);
std::string to_circuit_json(const Medium &medium);

/// Reads, parses and validates. Errors name the file.
Medium load_circuit_file(const std::filesystem::path &path);
void save_circuit_file(const std::filesystem::path &path, const Medium &medium);

/// A bare matrix, or an object {"observable": matrix}.
ComplexMatrix parse_matrix_json(std::string_view text);

}  // namespace qdeco

#endif
