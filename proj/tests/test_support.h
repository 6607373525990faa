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

#ifndef QDECO_TESTS_TEST_SUPPORT_H_
#define QDECO_TESTS_TEST_SUPPORT_H_

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qdeco/circuit_json.h"
#include "qdeco/clustersim.h"
#include "qdeco/complex_matrix.h"
#include "qdeco/density_matrix.h"
#include "qdeco/medium.h"
#include "qdeco/oracle.h"
#include "qdeco/rng.h"

namespace qdeco::testing {

struct FixtureCase {
    const char *name;
    const char *input;
};

// Small circuits shared by the simulator comparisons; inputs cover both bit
// values and a qubit born after step 0 (staggered).
inline const std::vector<FixtureCase> &fixture_cases() {
    static const std::vector<FixtureCase> cases = {
        {"ghz3", "000"},     {"bell_measure", "00"}, {"staggered", "010"}, {"single_h", "0"},
        {"rotations", "10"}, {"swap_chain", "001"},  {"zz_measure", "00"}, {"mixed_small", "101"},
    };
    return cases;
}

inline std::filesystem::path fixture_path(const std::string &name) {
    return std::filesystem::path(QDECO_FIXTURE_DIR) / (name + ".json");
}

inline Medium load_fixture(const std::string &name) { return load_circuit_file(fixture_path(name)); }

inline Medium with_eta(Medium m, double eta) {
    m.eta = eta;
    return m;
}

/// Haar-ish random unitary: QR of a complex Gaussian matrix.
inline ComplexMatrix random_unitary(int num_qubits, Rng &rng) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index r = 0; r < dim; r++) {
        for (Eigen::Index c = 0; c < dim; c++) {
            g(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
    ComplexMatrix out(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (Eigen::Index r = 0; r < dim; r++) {
        for (Eigen::Index c = 0; c < dim; c++) {
            out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = q(r, c);
        }
    }
    return out;
}

/// Random full-rank density matrix A A^dagger / tr.
inline DensityMatrix random_density(int num_qubits, Rng &rng) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    std::normal_distribution<double> normal;
    ComplexMatrix a(dim, dim);
    for (auto &x : a.data()) {
        x = Complex(normal(rng), normal(rng));
    }
    ComplexMatrix rho = a * a.adjoint();
    rho *= Complex(1.0 / rho.trace().real());
    // Symmetrize away rounding so validation sees an exact hermitian matrix.
    ComplexMatrix sym = Complex(0.5) * (rho + rho.adjoint());
    return DensityMatrix::from_matrix(std::move(sym));
}

inline ComplexMatrix random_hermitian(int num_qubits, Rng &rng) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    std::normal_distribution<double> normal;
    ComplexMatrix a(dim, dim);
    for (auto &x : a.data()) {
        x = Complex(normal(rng), normal(rng));
    }
    return Complex(0.5) * (a + a.adjoint());
}

/// Runs the cluster simulation along `sigma` with outcomes drawn from
/// `seed`, replays the same outcomes through the dense conditioned
/// trajectory, and returns the largest entrywise gap over all steps. The
/// global state and the dense state must also cover the same qubits.
inline double max_trajectory_gap(
    const Medium &medium, const FaultSpec &fault, std::span<const int> input, const FaultPath &sigma,
    uint64_t seed) {
    Rng rng(seed);
    std::vector<std::size_t> drawn;
    const OutcomeChooser chooser = [&](std::span<const double> probs) {
        const std::size_t pick = draw_outcome(probs, rng);
        drawn.push_back(pick);
        return pick;
    };
    std::vector<DensityMatrix> cluster_states;
    std::vector<std::vector<int>> cluster_qubits;
    run_trial_with_path(medium, fault, input, sigma, chooser, {}, [&](int, const Configuration &conf) {
        conf.audit();
        cluster_states.push_back(conf.global_state());
        cluster_qubits.push_back(conf.live_qubits());
    });
    std::map<Site, std::size_t> outcomes;
    for (std::size_t i = 0; i < sigma.size(); i++) {
        outcomes[sigma.sites()[i]] = drawn.at(i);
    }
    const auto dense = conditioned_trajectory(medium, fault, sigma, input, outcomes);
    if (dense.size() != cluster_states.size()) {
        return INFINITY;
    }
    double gap = 0;
    for (std::size_t t = 0; t < dense.size(); t++) {
        if (dense[t].qubits != cluster_qubits[t] || dense[t].rho.num_qubits() != cluster_states[t].num_qubits()) {
            return INFINITY;
        }
        gap = std::max(gap, dense[t].rho.max_abs_diff(cluster_states[t]));
    }
    return gap;
}

}  // namespace qdeco::testing

#endif
