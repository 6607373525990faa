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

#include "qdeco/medium.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qdeco {

const char *gate_kind_name(GateKind kind) {
    return kind == GateKind::kUnitary ? "unitary" : "measurement";
}

int Medium::horizon() const {
    int t = -1;
    for (const auto &life : lifetimes) {
        t = std::max(t, life.death);
    }
    return t;
}

bool Medium::alive(int qubit, int time) const {
    if (qubit < 0 || static_cast<std::size_t>(qubit) >= lifetimes.size()) {
        return false;
    }
    const auto &life = lifetimes[static_cast<std::size_t>(qubit)];
    return life.birth <= time && time <= life.death;
}

FaultPath::FaultPath(std::vector<Site> sites) : sites_(std::move(sites)) {
    std::sort(sites_.begin(), sites_.end());
    if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end()) {
        throw std::invalid_argument("FaultPath: repeated (qubit, time) site");
    }
}

bool FaultPath::contains(Site s) const {
    return std::binary_search(sites_.begin(), sites_.end(), s);
}

namespace {

std::string gate_label(std::size_t g) {
    return "gates[" + std::to_string(g) + "]";
}

}  // namespace

std::vector<Violation> validate(const Medium &medium, const MediumLimits &limits) {
    std::vector<Violation> out;
    auto report = [&](std::string kind, std::string message, int gate = -1, int qubit = -1) {
        out.push_back(Violation{std::move(kind), std::move(message), gate, qubit});
    };

    const int n = medium.num_qubits;
    if (n < 0) {
        report("qubit count", "n must be non-negative");
        return out;
    }
    const bool lifetimes_ok = medium.lifetimes.size() == static_cast<std::size_t>(n);
    if (!lifetimes_ok) {
        report(
            "lifetime count",
            "expected " + std::to_string(n) + " lifetimes, got " + std::to_string(medium.lifetimes.size()));
    } else {
        int earliest = n > 0 ? medium.lifetimes[0].birth : 0;
        for (int q = 0; q < n; q++) {
            const auto &life = medium.lifetimes[static_cast<std::size_t>(q)];
            earliest = std::min(earliest, life.birth);
            if (life.birth < 0 || life.death < life.birth) {
                report(
                    "bad lifetime",
                    "qubit " + std::to_string(q) + " has lifetime [" + std::to_string(life.birth) + ", " +
                        std::to_string(life.death) + "]",
                    -1,
                    q);
            }
        }
        if (n > 0 && earliest != 0) {
            report("timing start", "no qubit is born at step 0");
        }
    }
    if (!(medium.eta >= 0 && medium.eta <= 1)) {
        report("eta out of range", "eta must lie in [0, 1]");
    }
    if (medium.fault.observable.num_qubits() != 1) {
        report("fault observable", "the fault observable must act on one qubit");
    }

    std::map<std::pair<int, int>, std::size_t> occupied;  // (time, qubit) -> gate
    for (std::size_t g = 0; g < medium.gates.size(); g++) {
        const auto &gate = medium.gates[g];
        const int gi = static_cast<int>(g);
        if (gate.time < 0) {
            report("negative time", gate_label(g) + " has time " + std::to_string(gate.time), gi);
        }
        const auto k = static_cast<int>(gate.targets.size());
        if (k == 0) {
            report("fan-in", gate_label(g) + " has no targets", gi);
        } else if (k > limits.max_fan_in) {
            report(
                "fan-in exceeded",
                gate_label(g) + " acts on " + std::to_string(k) + " qubits, limit is " +
                    std::to_string(limits.max_fan_in),
                gi);
        }
        if (gate.matrix.qubit_count() != k) {
            report("matrix shape", gate_label(g) + " matrix does not match its " + std::to_string(k) + " targets", gi);
        } else if (gate.kind == GateKind::kUnitary && !gate.matrix.is_unitary(1e-10)) {
            report("not unitary", gate_label(g) + " matrix is not unitary", gi);
        } else if (gate.kind == GateKind::kMeasurement && !gate.matrix.is_hermitian(1e-10)) {
            report("not hermitian", gate_label(g) + " measurement matrix is not hermitian", gi);
        }
        for (int a = 0; a < k; a++) {
            const int q = gate.targets[static_cast<std::size_t>(a)];
            if (q < 0 || q >= n) {
                report("target out of range", gate_label(g) + " targets qubit " + std::to_string(q), gi, q);
                continue;
            }
            if (std::find(gate.targets.begin(), gate.targets.begin() + a, q) != gate.targets.begin() + a) {
                report("duplicate target", gate_label(g) + " repeats qubit " + std::to_string(q), gi, q);
                continue;
            }
            if (lifetimes_ok && !medium.alive(q, gate.time)) {
                report(
                    "target not alive",
                    gate_label(g) + " acts on qubit " + std::to_string(q) + " at step " + std::to_string(gate.time) +
                        " outside its lifetime",
                    gi,
                    q);
            }
            auto [it, inserted] = occupied.emplace(std::pair{gate.time, q}, g);
            if (!inserted) {
                report(
                    "time collision",
                    gate_label(g) + " and " + gate_label(it->second) + " both act on qubit " + std::to_string(q) +
                        " at step " + std::to_string(gate.time),
                    gi,
                    q);
            }
        }
    }

    const int horizon = medium.horizon();
    for (std::size_t r = 0; r < medium.result_qubits.size(); r++) {
        const int q = medium.result_qubits[r];
        if (q < 0 || q >= n) {
            report("result qubit out of range", "result qubit " + std::to_string(q) + " does not exist", -1, q);
            continue;
        }
        if (std::find(medium.result_qubits.begin(), medium.result_qubits.begin() + static_cast<std::ptrdiff_t>(r), q) !=
            medium.result_qubits.begin() + static_cast<std::ptrdiff_t>(r)) {
            report("duplicate result qubit", "result qubit " + std::to_string(q) + " is listed twice", -1, q);
            continue;
        }
        if (lifetimes_ok && medium.lifetimes[static_cast<std::size_t>(q)].death != horizon) {
            report(
                "result qubit not alive at end",
                "result qubit " + std::to_string(q) + " dies before the final step " + std::to_string(horizon),
                -1,
                q);
        }
    }
    return out;
}

void require_valid(const Medium &medium, const MediumLimits &limits) {
    const auto violations = validate(medium, limits);
    if (violations.empty()) {
        return;
    }
    std::ostringstream ss;
    ss << "invalid medium:";
    for (const auto &v : violations) {
        ss << "\n  " << v.kind << ": " << v.message;
    }
    throw std::invalid_argument(ss.str());
}

std::vector<Site> fault_site_list(const Medium &medium) {
    std::vector<Site> sites;
    for (int q = 0; q < medium.num_qubits; q++) {
        const auto &life = medium.lifetimes[static_cast<std::size_t>(q)];
        for (int t = life.birth; t <= life.death; t++) {
            sites.push_back(Site{t, q});
        }
    }
    std::sort(sites.begin(), sites.end());
    return sites;
}

std::size_t fault_sites(const Medium &medium) {
    std::size_t v = 0;
    for (const auto &life : medium.lifetimes) {
        v += static_cast<std::size_t>(life.death - life.birth + 1);
    }
    return v;
}

double path_weight(const Medium &medium, const FaultPath &sigma) {
    for (const Site &s : sigma.sites()) {
        if (!medium.alive(s.qubit, s.time)) {
            throw std::invalid_argument(
                "path_weight: site (qubit " + std::to_string(s.qubit) + ", step " + std::to_string(s.time) +
                ") lies outside the qubit's lifetime");
        }
    }
    const auto faulted = static_cast<double>(sigma.size());
    const auto clean = static_cast<double>(fault_sites(medium)) - faulted;
    return std::pow(medium.eta, faulted) * std::pow(1 - medium.eta, clean);
}

FaultPath sample_fault_path(const Medium &medium, Rng &rng) {
    std::vector<Site> chosen;
    for (const Site &s : fault_site_list(medium)) {
        if (rng.bernoulli(medium.eta)) {
            chosen.push_back(s);
        }
    }
    return FaultPath(std::move(chosen));
}

std::vector<std::pair<FaultPath, double>> enumerate_fault_paths(const Medium &medium, std::size_t cap) {
    const std::vector<Site> sites = fault_site_list(medium);
    if (sites.size() > cap) {
        throw std::invalid_argument(
            "enumerate_fault_paths: " + std::to_string(sites.size()) + " fault sites exceed the cap of " +
            std::to_string(cap));
    }
    const std::size_t count = std::size_t{1} << sites.size();
    std::vector<std::pair<FaultPath, double>> out;
    out.reserve(count);
    std::vector<Site> chosen;
    for (std::size_t mask = 0; mask < count; mask++) {
        chosen.clear();
        for (std::size_t j = 0; j < sites.size(); j++) {
            if ((mask >> j) & 1) {
                chosen.push_back(sites[j]);
            }
        }
        const auto faulted = static_cast<double>(chosen.size());
        const double w =
            std::pow(medium.eta, faulted) * std::pow(1 - medium.eta, static_cast<double>(sites.size()) - faulted);
        out.emplace_back(FaultPath(chosen), w);
    }
    return out;
}

Schedule make_schedule(const Medium &medium) {
    require_valid(medium);
    Schedule s;
    s.horizon = medium.horizon();
    const auto steps = static_cast<std::size_t>(std::max(0, s.horizon + 1));
    s.births.resize(steps);
    s.deaths.resize(steps + 1);
    s.gates.resize(steps);
    for (int q = 0; q < medium.num_qubits; q++) {
        const auto &life = medium.lifetimes[static_cast<std::size_t>(q)];
        s.births[static_cast<std::size_t>(life.birth)].push_back(q);
        s.deaths[static_cast<std::size_t>(life.death + 1)].push_back(q);
        if (life.birth == 0) {
            s.initial_qubits.push_back(q);
        }
    }
    s.deaths.resize(steps);
    s.measurement.resize(medium.gates.size());
    for (std::size_t g = 0; g < medium.gates.size(); g++) {
        const auto &gate = medium.gates[g];
        s.gates[static_cast<std::size_t>(gate.time)].push_back(g);
        if (gate.kind == GateKind::kMeasurement) {
            s.measurement[g] = Observable::from_hermitian(gate.matrix);
        }
    }
    return s;
}

}  // namespace qdeco
