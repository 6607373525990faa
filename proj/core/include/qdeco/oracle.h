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

#ifndef QDECO_ORACLE_H_
#define QDECO_ORACLE_H_

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qdeco/density_matrix.h"
#include "qdeco/distribution.h"
#include "qdeco/medium.h"

namespace qdeco {

/// A single-qubit fault map rho -> sum_i w_i M_i(rho), where M_i is the
/// unconditioned measurement of observable i and the weights sum to one.
/// An empty term list is the identity map.
class FaultChannel {
   public:
    FaultChannel() = default;
    FaultChannel(const FaultSpec &fault);  // NOLINT: implicit on purpose

    static FaultChannel mixture(std::vector<std::pair<double, Observable>> terms);

    std::span<const std::pair<double, Observable>> terms() const { return terms_; }
    bool is_identity() const { return terms_.empty(); }

    /// Applies the map to `position` of rho.
    DensityMatrix apply(const DensityMatrix &rho, int position) const;

   private:
    std::vector<std::pair<double, Observable>> terms_;
};

struct CompositeFault {
    FaultChannel channel;
    double eta = 0;
};

/// Folds several faults (F_i, eta_i) into one channel with eta = sum eta_i,
/// F = (1/eta) sum eta_i F_i. Throws on negative eta_i or a sum above one.
CompositeFault composite_fault(std::span<const std::pair<FaultSpec, double>> faults);

/// (1 - eta) rho + eta F^q(rho).
DensityMatrix weak_fault_step(const DensityMatrix &rho, int position, const FaultChannel &fault, double eta);

struct OracleOptions {
    int dense_cap = 12;
    std::size_t path_cap = kDefaultPathCap;
    unsigned threads = 1;
};

/// Dense state over the live qubits, positions in ascending qubit order.
struct DenseState {
    std::vector<int> qubits;
    DensityMatrix rho;
};

/// Weak-fault evolution to the end of the horizon. `input` has one bit per
/// qubit of the medium.
DenseState evolve_exact(
    const Medium &medium, const FaultChannel &fault, std::span<const int> input, const OracleOptions &options = {});

/// The sigma-trajectory endpoint: unconditioned fault maps exactly at the
/// sites of sigma.
DenseState evolve_by_path(
    const Medium &medium, const FaultChannel &fault, const FaultPath &sigma, std::span<const int> input,
    const OracleOptions &options = {});

/// sum over all 2^V paths of w(sigma) evolve_by_path(sigma).
DenseState path_sum_exact(
    const Medium &medium, const FaultChannel &fault, std::span<const int> input, const OracleOptions &options = {});

/// Distribution of the result qubits' basis measurement on evolve_exact.
Distribution output_distribution_exact(
    const Medium &medium, const FaultChannel &fault, std::span<const int> input, const OracleOptions &options = {});

/// Distribution of the result qubits of a final dense state.
Distribution result_distribution(const Medium &medium, const DenseState &state);

/// Trajectory with conditioned faults: at each site of sigma the fault
/// observable is measured and the state is conditioned on the outcome given
/// in `outcomes` for that site. Returns the state after the faults of every
/// step, index t.
std::vector<DenseState> conditioned_trajectory(
    const Medium &medium, const FaultSpec &fault, const FaultPath &sigma, std::span<const int> input,
    const std::map<Site, std::size_t> &outcomes, const OracleOptions &options = {});

}  // namespace qdeco

#endif
