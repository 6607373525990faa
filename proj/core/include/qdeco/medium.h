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

#ifndef QDECO_MEDIUM_H_
#define QDECO_MEDIUM_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdeco/complex_matrix.h"
#include "qdeco/observable.h"
#include "qdeco/rng.h"

namespace qdeco {

enum class GateKind { kUnitary, kMeasurement };

const char *gate_kind_name(GateKind kind);

/// A gate placed at a time step. Measurement gates carry a hermitian matrix
/// and act as unconditioned measurements of it.
struct GateSpec {
    GateKind kind = GateKind::kUnitary;
    ComplexMatrix matrix;
    std::vector<int> targets;
    int time = 0;

    bool operator==(const GateSpec &other) const = default;
};

/// Steps [birth, death], both inclusive.
struct Lifetime {
    int birth = 0;
    int death = 0;

    bool operator==(const Lifetime &other) const = default;
};

/// Single-qubit collapse fault: a measurement of `observable`.
struct FaultSpec {
    Observable observable = Observable::pauli_z();

    static FaultSpec z() { return FaultSpec{Observable::pauli_z()}; }
    static FaultSpec x() { return FaultSpec{Observable::pauli_x()}; }

    bool operator==(const FaultSpec &other) const = default;
};

/// Timed circuit with a decoherence rate.
///
/// Within a step the order is fixed: qubits whose lifetime ended at t-1 are
/// removed, qubits born at t are added, gates at t run, then faults at t.
/// The horizon T is the largest death step.
struct Medium {
    int num_qubits = 0;
    std::vector<Lifetime> lifetimes;
    std::vector<GateSpec> gates;
    double eta = 0;
    std::vector<int> result_qubits;
    FaultSpec fault;

    int horizon() const;
    bool alive(int qubit, int time) const;

    bool operator==(const Medium &other) const = default;
};

/// One (qubit, time) fault location. Ordered by time, then qubit.
struct Site {
    int time = 0;
    int qubit = 0;

    auto operator<=>(const Site &other) const = default;
};

/// A set of fault sites, kept sorted.
class FaultPath {
   public:
    FaultPath() = default;
    /// Throws on duplicate sites.
    explicit FaultPath(std::vector<Site> sites);

    std::span<const Site> sites() const { return sites_; }
    std::size_t size() const { return sites_.size(); }
    bool empty() const { return sites_.empty(); }
    bool contains(Site s) const;

    bool operator==(const FaultPath &other) const = default;

   private:
    std::vector<Site> sites_;
};

struct Violation {
    std::string kind;
    std::string message;
    int gate = -1;
    int qubit = -1;
};

struct MediumLimits {
    int max_fan_in = 2;
};

/// Every invariant violation of the medium. Empty means valid.
std::vector<Violation> validate(const Medium &medium, const MediumLimits &limits = {});

/// Throws std::invalid_argument listing every violation.
void require_valid(const Medium &medium, const MediumLimits &limits = {});

/// All fault sites, ordered by time then qubit.
std::vector<Site> fault_site_list(const Medium &medium);

/// V = sum over qubits of (death - birth + 1).
std::size_t fault_sites(const Medium &medium);

/// w(sigma) = eta^|sigma| (1 - eta)^(V - |sigma|). Throws if a site lies
/// outside its qubit's lifetime.
double path_weight(const Medium &medium, const FaultPath &sigma);

/// Includes each site independently with probability eta.
FaultPath sample_fault_path(const Medium &medium, Rng &rng);

inline constexpr std::size_t kDefaultPathCap = 20;

/// All 2^V paths with their weights. Throws if V exceeds `cap`.
std::vector<std::pair<FaultPath, double>> enumerate_fault_paths(const Medium &medium, std::size_t cap = kDefaultPathCap);

/// Per-step view of a medium shared by both simulators.
struct Schedule {
    int horizon = -1;
    std::vector<std::vector<int>> births;  // births[t]: qubits with birth == t
    std::vector<std::vector<int>> deaths;  // deaths[t]: qubits with death == t - 1
    std::vector<std::vector<std::size_t>> gates;  // gate indices at step t
    std::vector<std::optional<Observable>> measurement;  // per gate, for measurement gates
    std::vector<int> initial_qubits;
};

Schedule make_schedule(const Medium &medium);

}  // namespace qdeco

#endif
