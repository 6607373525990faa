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

#include "qdeco/circuit_json.h"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace qdeco {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string &path, const std::string &what) {
    throw CircuitFormatError(path + ": " + what);
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t k = 0; k < end; k++) {
            if (text[k] == '\n') {
                line++;
                col = 1;
            } else {
                col++;
            }
        }
        std::string what = e.what();
        if (auto p = what.find("syntax error"); p != std::string::npos) {
            what = what.substr(p);
        }
        throw CircuitFormatError(
            "JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
    }
}

const json &member(const json &obj, const std::string &path, const char *key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        field_error(path.empty() ? key : path + "." + key, "missing field");
    }
    return *it;
}

int as_int(const json &v, const std::string &path) {
    if (!v.is_number_integer()) {
        field_error(path, "expected an integer");
    }
    return v.get<int>();
}

double as_double(const json &v, const std::string &path) {
    if (!v.is_number()) {
        field_error(path, "expected a number");
    }
    return v.get<double>();
}

std::vector<int> as_int_list(const json &v, const std::string &path) {
    if (!v.is_array()) {
        field_error(path, "expected an array of integers");
    }
    std::vector<int> out;
    for (std::size_t k = 0; k < v.size(); k++) {
        out.push_back(as_int(v[k], path + "[" + std::to_string(k) + "]"));
    }
    return out;
}

Complex as_complex(const json &v, const std::string &path) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        field_error(path, "expected a complex number [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

ComplexMatrix as_matrix(const json &v, const std::string &path) {
    if (!v.is_array() || v.empty()) {
        field_error(path, "expected a non-empty array of rows");
    }
    const std::size_t rows = v.size();
    std::size_t cols = 0;
    std::vector<Complex> entries;
    for (std::size_t r = 0; r < rows; r++) {
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        const json &row = v[r];
        if (!row.is_array()) {
            field_error(row_path, "expected an array of complex entries");
        }
        if (r == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            field_error(row_path, "row length differs from row 0");
        }
        for (std::size_t c = 0; c < row.size(); c++) {
            entries.push_back(as_complex(row[c], row_path + "[" + std::to_string(c) + "]"));
        }
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); c++) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Observable as_observable(const json &v, const std::string &path) {
    ComplexMatrix m = as_matrix(v, path);
    if (m.rows() != 2 || m.cols() != 2) {
        field_error(path, "fault observable must be 2x2");
    }
    try {
        return Observable::from_hermitian(m);
    } catch (const std::invalid_argument &e) {
        field_error(path, e.what());
    }
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open file '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Medium parse_circuit_json(std::string_view text) {
    const json root = parse_text(text);
    if (!root.is_object()) {
        field_error("(root)", "expected a JSON object");
    }
    Medium m;
    m.num_qubits = as_int(member(root, "", "n"), "n");
    m.eta = as_double(member(root, "", "eta"), "eta");

    const json &lifetimes = member(root, "", "lifetimes");
    if (!lifetimes.is_array()) {
        field_error("lifetimes", "expected an array of [birth, death] pairs");
    }
    for (std::size_t q = 0; q < lifetimes.size(); q++) {
        const std::string path = "lifetimes[" + std::to_string(q) + "]";
        const auto pair = as_int_list(lifetimes[q], path);
        if (pair.size() != 2) {
            field_error(path, "expected [birth, death]");
        }
        m.lifetimes.push_back(Lifetime{pair[0], pair[1]});
    }

    m.result_qubits = as_int_list(member(root, "", "result_qubits"), "result_qubits");

    if (auto it = root.find("fault"); it != root.end()) {
        if (!it->is_object()) {
            field_error("fault", "expected an object with an \"observable\" matrix");
        }
        m.fault.observable = as_observable(member(*it, "fault", "observable"), "fault.observable");
    }

    const json &gates = member(root, "", "gates");
    if (!gates.is_array()) {
        field_error("gates", "expected an array");
    }
    for (std::size_t g = 0; g < gates.size(); g++) {
        const std::string path = "gates[" + std::to_string(g) + "]";
        const json &obj = gates[g];
        if (!obj.is_object()) {
            field_error(path, "expected an object");
        }
        GateSpec spec;
        const json &kind = member(obj, path, "kind");
        if (kind == "unitary") {
            spec.kind = GateKind::kUnitary;
        } else if (kind == "measurement") {
            spec.kind = GateKind::kMeasurement;
        } else {
            field_error(path + ".kind", "expected \"unitary\" or \"measurement\"");
        }
        spec.time = as_int(member(obj, path, "time"), path + ".time");
        spec.targets = as_int_list(member(obj, path, "targets"), path + ".targets");
        spec.matrix = as_matrix(member(obj, path, "matrix"), path + ".matrix");
        m.gates.push_back(std::move(spec));
    }
    return m;
}

std::string to_circuit_json(const Medium &medium) {
    json root;
    root["n"] = medium.num_qubits;
    root["eta"] = medium.eta;
    json lifetimes = json::array();
    for (const auto &life : medium.lifetimes) {
        lifetimes.push_back(json::array({life.birth, life.death}));
    }
    root["lifetimes"] = std::move(lifetimes);
    root["result_qubits"] = medium.result_qubits;
    root["fault"] = json{{"observable", matrix_to_json(medium.fault.observable.matrix())}};
    json gates = json::array();
    for (const auto &g : medium.gates) {
        gates.push_back(json{
            {"kind", gate_kind_name(g.kind)},
            {"time", g.time},
            {"targets", g.targets},
            {"matrix", matrix_to_json(g.matrix)},
        });
    }
    root["gates"] = std::move(gates);
    return root.dump(1) + "\n";
}

Medium load_circuit_file(const std::filesystem::path &path) {
    const std::string text = read_file(path);
    Medium m;
    try {
        m = parse_circuit_json(text);
    } catch (const CircuitFormatError &e) {
        throw CircuitFormatError("'" + path.string() + "': " + e.what());
    }
    const auto violations = validate(m);
    if (!violations.empty()) {
        std::string msg = "'" + path.string() + "': invalid circuit:";
        for (const auto &v : violations) {
            msg += "\n  " + v.kind + ": " + v.message;
        }
        throw CircuitFormatError(msg);
    }
    return m;
}

void save_circuit_file(const std::filesystem::path &path, const Medium &medium) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write file '" + path.string() + "'");
    }
    out << to_circuit_json(medium);
}

ComplexMatrix parse_matrix_json(std::string_view text) {
    const json root = parse_text(text);
    if (root.is_object()) {
        return as_matrix(member(root, "", "observable"), "observable");
    }
    return as_matrix(root, "(root)");
}

}  // namespace qdeco
