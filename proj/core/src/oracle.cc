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

#include "qdeco/oracle.h"

#include <algorithm>
#include <string>

#include "qdeco/parallel.h"

namespace qdeco {

FaultChannel::FaultChannel(const FaultSpec &fault) {
    if (fault.observable.num_qubits() != 1) {
        throw std::invalid_argument("fault observable must act on one qubit");
    }
    terms_.emplace_back(1.0, fault.observable);
}

FaultChannel FaultChannel::mixture(std::vector<std::pair<double, Observable>> terms) {
    double total = 0;
    for (const auto &[w, obs] : terms) {
        if (w < 0) {
            throw std::invalid_argument("FaultChannel: negative weight");
        }
        if (obs.num_qubits() != 1) {
            throw std::invalid_argument("FaultChannel: observable must act on one qubit");
        }
        total += w;
    }
    if (!terms.empty() && std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("FaultChannel: weights must sum to one");
    }
    FaultChannel channel;
    channel.terms_ = std::move(terms);
    return channel;
}

DensityMatrix FaultChannel::apply(const DensityMatrix &rho, int position) const {
    if (terms_.empty()) {
        return rho;
    }
    const int pos[1] = {position};
    if (terms_.size() == 1) {
        return measure_unconditioned(rho, terms_[0].second, pos);
    }
    ComplexMatrix sum = ComplexMatrix::zeros(rho.dim(), rho.dim());
    for (const auto &[w, obs] : terms_) {
        sum += Complex(w) * measure_unconditioned(rho, obs, pos).matrix();
    }
    return DensityMatrix::adopt(std::move(sum));
}

CompositeFault composite_fault(std::span<const std::pair<FaultSpec, double>> faults) {
    CompositeFault out;
    std::vector<std::pair<double, Observable>> terms;
    for (const auto &[fault, eta] : faults) {
        if (eta < 0) {
            throw std::invalid_argument("composite_fault: negative rate " + std::to_string(eta));
        }
        out.eta += eta;
    }
    if (out.eta > 1 + 1e-12) {
        throw std::invalid_argument("composite_fault: rates sum to " + std::to_string(out.eta) + " > 1");
    }
    if (out.eta > 0) {
        for (const auto &[fault, eta] : faults) {
            if (eta > 0) {
                terms.emplace_back(eta / out.eta, fault.observable);
            }
        }
        // Renormalize so rounding in eta_i / eta cannot trip the sum check.
        double total = 0;
        for (const auto &t : terms) {
            total += t.first;
        }
        for (auto &t : terms) {
            t.first /= total;
        }
    }
    out.channel = FaultChannel::mixture(std::move(terms));
    return out;
}

DensityMatrix weak_fault_step(const DensityMatrix &rho, int position, const FaultChannel &fault, double eta) {
    if (!(eta >= 0 && eta <= 1)) {
        throw std::invalid_argument("weak_fault_step: eta must lie in [0, 1]");
    }
    const int pos[1] = {position};
    detail::check_positions(pos, rho.num_qubits(), "weak_fault_step");
    if (eta == 0) {
        return rho;
    }
    DensityMatrix faulted = fault.apply(rho, position);
    if (eta == 1) {
        return faulted;
    }
    ComplexMatrix out = Complex(1 - eta) * rho.matrix();
    out += Complex(eta) * faulted.matrix();
    return DensityMatrix::adopt(std::move(out));
}

namespace {

int position_of(const DenseState &state, int qubit) {
    auto it = std::lower_bound(state.qubits.begin(), state.qubits.end(), qubit);
    if (it == state.qubits.end() || *it != qubit) {
        throw std::logic_error("oracle: qubit " + std::to_string(qubit) + " is not live");
    }
    return static_cast<int>(it - state.qubits.begin());
}

void check_input(const Medium &medium, std::span<const int> input, const OracleOptions &options) {
    if (medium.num_qubits > options.dense_cap) {
        throw std::invalid_argument(
            "dense cap exceeded: medium has " + std::to_string(medium.num_qubits) + " qubits, cap is " +
            std::to_string(options.dense_cap));
    }
    if (input.size() != static_cast<std::size_t>(medium.num_qubits)) {
        throw std::invalid_argument(
            "input has " + std::to_string(input.size()) + " bits, medium has " + std::to_string(medium.num_qubits) +
            " qubits");
    }
    for (int b : input) {
        if (b != 0 && b != 1) {
            throw std::invalid_argument("input bits must be 0 or 1");
        }
    }
}

void remove_qubit(DenseState &state, int qubit) {
    const int pos = position_of(state, qubit);
    std::vector<int> keep;
    for (int p = 0; p < static_cast<int>(state.qubits.size()); p++) {
        if (p != pos) {
            keep.push_back(p);
        }
    }
    state.rho = keep.empty() ? DensityMatrix() : reduce(state.rho, keep);
    state.qubits.erase(state.qubits.begin() + pos);
}

void add_qubit(DenseState &state, int qubit, int bit) {
    DensityMatrix grown = tensor(state.rho, DensityMatrix::basis_state(bit));
    std::vector<int> concat = state.qubits;
    concat.push_back(qubit);
    std::vector<int> sorted = concat;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> source_of(sorted.size());
    for (std::size_t p = 0; p < sorted.size(); p++) {
        source_of[p] = static_cast<int>(std::find(concat.begin(), concat.end(), sorted[p]) - concat.begin());
    }
    state.rho = permute_qubits(grown, source_of);
    state.qubits = std::move(sorted);
}

/// Shared driver; `faults(t, state)` applies the fault stage of step t.
template <typename FaultStage>
DenseState evolve(const Medium &medium, const Schedule &schedule, std::span<const int> input, FaultStage &&faults) {
    DenseState state;
    for (int t = 0; t <= schedule.horizon; t++) {
        const auto ts = static_cast<std::size_t>(t);
        for (int q : schedule.deaths[ts]) {
            remove_qubit(state, q);
        }
        for (int q : schedule.births[ts]) {
            add_qubit(state, q, input[static_cast<std::size_t>(q)]);
        }
        for (std::size_t g : schedule.gates[ts]) {
            const auto &gate = medium.gates[g];
            std::vector<int> positions;
            for (int q : gate.targets) {
                positions.push_back(position_of(state, q));
            }
            if (gate.kind == GateKind::kUnitary) {
                state.rho = apply_unitary(std::move(state.rho), gate.matrix, positions);
            } else {
                state.rho = measure_unconditioned(state.rho, *schedule.measurement[g], positions);
            }
        }
        faults(t, state);
    }
    return state;
}

void check_path(const Medium &medium, const FaultPath &sigma) {
    for (const Site &s : sigma.sites()) {
        if (s.qubit < 0 || s.qubit >= medium.num_qubits || !medium.alive(s.qubit, s.time)) {
            throw std::invalid_argument(
                "fault site (t=" + std::to_string(s.time) + ", q=" + std::to_string(s.qubit) +
                ") is outside the qubit's lifetime");
        }
    }
}

}  // namespace

DenseState evolve_exact(
    const Medium &medium, const FaultChannel &fault, std::span<const int> input, const OracleOptions &options) {
    const Schedule schedule = make_schedule(medium);
    check_input(medium, input, options);
    return evolve(medium, schedule, input, [&](int, DenseState &state) {
        for (int p = 0; p < static_cast<int>(state.qubits.size()); p++) {
            state.rho = weak_fault_step(state.rho, p, fault, medium.eta);
        }
    });
}

DenseState evolve_by_path(
    const Medium &medium, const FaultChannel &fault, const FaultPath &sigma, std::span<const int> input,
    const OracleOptions &options) {
    const Schedule schedule = make_schedule(medium);
    check_input(medium, input, options);
    check_path(medium, sigma);
    const auto sites = sigma.sites();
    std::size_t next = 0;
    return evolve(medium, schedule, input, [&](int t, DenseState &state) {
        for (; next < sites.size() && sites[next].time == t; next++) {
            state.rho = fault.apply(state.rho, position_of(state, sites[next].qubit));
        }
    });
}

DenseState path_sum_exact(
    const Medium &medium, const FaultChannel &fault, std::span<const int> input, const OracleOptions &options) {
    check_input(medium, input, options);
    const auto paths = enumerate_fault_paths(medium, options.path_cap);
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < paths.size(); i++) {
        if (paths[i].second > 0) {
            live.push_back(i);
        }
    }
    // Fixed chunks, each summed in path order, then chunks summed in order:
    // the result does not depend on the thread count.
    constexpr std::size_t kChunk = 64;
    const std::size_t chunks = (live.size() + kChunk - 1) / kChunk;
    std::vector<DenseState> partial(chunks);
    parallel_for(chunks, options.threads, [&](std::size_t c) {
        const std::size_t end = std::min(live.size(), (c + 1) * kChunk);
        std::vector<int> qubits;
        ComplexMatrix acc;
        for (std::size_t k = c * kChunk; k < end; k++) {
            const auto &[sigma, weight] = paths[live[k]];
            DenseState s = evolve_by_path(medium, fault, sigma, input, options);
            ComplexMatrix term = Complex(weight) * std::move(s.rho).release();
            if (k == c * kChunk) {
                acc = std::move(term);
                qubits = std::move(s.qubits);
            } else {
                acc += term;
            }
        }
        partial[c] = {std::move(qubits), DensityMatrix::adopt(std::move(acc))};
    });
    DenseState out = std::move(partial.front());
    ComplexMatrix acc = std::move(out.rho).release();
    for (std::size_t c = 1; c < chunks; c++) {
        acc += partial[c].rho.matrix();
    }
    out.rho = DensityMatrix::adopt(std::move(acc));
    return out;
}

Distribution result_distribution(const Medium &medium, const DenseState &state) {
    std::vector<int> positions;
    for (int q : medium.result_qubits) {
        positions.push_back(position_of(state, q));
    }
    return marginal_distribution(state.rho, positions);
}

Distribution output_distribution_exact(
    const Medium &medium, const FaultChannel &fault, std::span<const int> input, const OracleOptions &options) {
    return result_distribution(medium, evolve_exact(medium, fault, input, options));
}

std::vector<DenseState> conditioned_trajectory(
    const Medium &medium, const FaultSpec &fault, const FaultPath &sigma, std::span<const int> input,
    const std::map<Site, std::size_t> &outcomes, const OracleOptions &options) {
    const Schedule schedule = make_schedule(medium);
    check_input(medium, input, options);
    check_path(medium, sigma);
    std::vector<DenseState> trajectory;
    const auto sites = sigma.sites();
    std::size_t next = 0;
    evolve(medium, schedule, input, [&](int t, DenseState &state) {
        for (; next < sites.size() && sites[next].time == t; next++) {
            auto it = outcomes.find(sites[next]);
            if (it == outcomes.end()) {
                throw std::invalid_argument("conditioned_trajectory: no outcome for a fault site");
            }
            const int pos[1] = {position_of(state, sites[next].qubit)};
            state.rho = condition_on_outcome(state.rho, fault.observable, it->second, pos);
        }
        trajectory.push_back(state);
    });
    return trajectory;
}

}  // namespace qdeco
