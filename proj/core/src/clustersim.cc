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

#include "qdeco/clustersim.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qdeco/parallel.h"

namespace qdeco {

namespace {

uint64_t entries_of(int cluster_size) { return uint64_t{1} << (2 * cluster_size); }

}  // namespace

int CostStats::peak_cluster() const {
    int peak = 0;
    for (int m : max_cluster) {
        peak = std::max(peak, m);
    }
    return peak;
}

ClusterCapExceeded::ClusterCapExceeded(int requested, int cap)
    : std::runtime_error(
          "cluster of " + std::to_string(requested) + " qubits exceeds the cap of " + std::to_string(cap) +
          "; simulation infeasible at this size"),
      requested_(requested),
      cap_(cap) {}

std::size_t draw_outcome(std::span<const double> probs, Rng &rng) {
    if (probs.empty()) {
        throw std::invalid_argument("draw_outcome: no outcomes");
    }
    const double u = rng.uniform();
    double cumulative = 0;
    std::size_t last_possible = probs.size();
    for (std::size_t i = 0; i < probs.size(); i++) {
        if (probs[i] < kZeroProbability) {
            continue;
        }
        last_possible = i;
        cumulative += probs[i];
        if (u < cumulative) {
            return i;
        }
    }
    // Rounding left u above the accumulated mass.
    if (last_possible == probs.size()) {
        throw std::invalid_argument("draw_outcome: every outcome has zero probability");
    }
    return last_possible;
}

OutcomeChooser sampling_chooser(Rng &rng) {
    return [&rng](std::span<const double> probs) { return draw_outcome(probs, rng); };
}

Configuration::Configuration(int num_qubits) {
    if (num_qubits < 0) {
        throw std::invalid_argument("Configuration: negative qubit count");
    }
    locator_.resize(static_cast<std::size_t>(num_qubits));
}

bool Configuration::is_live(int qubit) const {
    return qubit >= 0 && qubit < capacity() && locator_[static_cast<std::size_t>(qubit)].cluster >= 0;
}

void Configuration::require_live(int qubit, const char *what) const {
    if (!is_live(qubit)) {
        throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(qubit) + " is not live");
    }
}

int Configuration::cluster_size_of(int qubit) const {
    return static_cast<int>(cluster_of(qubit).qubits.size());
}

const Configuration::Cluster &Configuration::cluster_of(int qubit) const {
    require_live(qubit, "cluster_of");
    return clusters_[static_cast<std::size_t>(locator_[static_cast<std::size_t>(qubit)].cluster)];
}

std::vector<int> Configuration::live_qubits() const {
    std::vector<int> out;
    for (int q = 0; q < capacity(); q++) {
        if (is_live(q)) {
            out.push_back(q);
        }
    }
    return out;
}

void Configuration::reindex(std::size_t cluster) {
    const auto &qubits = clusters_[cluster].qubits;
    for (std::size_t p = 0; p < qubits.size(); p++) {
        locator_[static_cast<std::size_t>(qubits[p])] = {static_cast<int>(cluster), static_cast<int>(p)};
    }
}

// Swap-with-last removal; the moved cluster gets its locator entries fixed.
void Configuration::erase_cluster(std::size_t cluster) {
    const std::size_t last = clusters_.size() - 1;
    if (cluster != last) {
        clusters_[cluster] = std::move(clusters_[last]);
    }
    clusters_.pop_back();
    if (cluster != last) {
        reindex(cluster);
    }
}

void Configuration::add_qubit(int qubit, int bit) {
    if (qubit < 0 || qubit >= capacity()) {
        throw std::invalid_argument("add_qubit: qubit " + std::to_string(qubit) + " out of range");
    }
    if (is_live(qubit)) {
        throw std::invalid_argument("add_qubit: qubit " + std::to_string(qubit) + " is already live");
    }
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("add_qubit: bit must be 0 or 1");
    }
    clusters_.push_back({{qubit}, DensityMatrix::basis_state(bit)});
    reindex(clusters_.size() - 1);
}

void Configuration::remove_qubit(int qubit) {
    require_live(qubit, "remove_qubit");
    const Slot slot = locator_[static_cast<std::size_t>(qubit)];
    auto &cluster = clusters_[static_cast<std::size_t>(slot.cluster)];
    locator_[static_cast<std::size_t>(qubit)] = {};
    if (cluster.qubits.size() == 1) {
        erase_cluster(static_cast<std::size_t>(slot.cluster));
        return;
    }
    std::vector<int> keep;
    for (int p = 0; p < static_cast<int>(cluster.qubits.size()); p++) {
        if (p != slot.position) {
            keep.push_back(p);
        }
    }
    cluster.rho = reduce(cluster.rho, keep);
    cluster.qubits.erase(cluster.qubits.begin() + slot.position);
    reindex(static_cast<std::size_t>(slot.cluster));
}

void Configuration::apply_gate(const GateSpec &gate, int cluster_cap) {
    if (gate.kind == GateKind::kMeasurement) {
        const Observable obs = Observable::from_hermitian(gate.matrix);
        apply_gate(gate, &obs, cluster_cap);
    } else {
        apply_gate(gate, nullptr, cluster_cap);
    }
}

void Configuration::apply_gate(const GateSpec &gate, const Observable *measurement, int cluster_cap) {
    if (gate.kind == GateKind::kMeasurement && measurement == nullptr) {
        throw std::invalid_argument("apply_gate: measurement gate without observable");
    }
    std::vector<int> involved;  // cluster indices, first-touch order
    for (int q : gate.targets) {
        require_live(q, "apply_gate");
        const int c = locator_[static_cast<std::size_t>(q)].cluster;
        if (std::find(involved.begin(), involved.end(), c) == involved.end()) {
            involved.push_back(c);
        }
    }
    if (involved.empty()) {
        throw std::invalid_argument("apply_gate: gate has no targets");
    }

    std::size_t home = static_cast<std::size_t>(involved.front());
    if (involved.size() > 1) {
        std::vector<int> concat;
        for (int c : involved) {
            const auto &qs = clusters_[static_cast<std::size_t>(c)].qubits;
            concat.insert(concat.end(), qs.begin(), qs.end());
        }
        const int merged_size = static_cast<int>(concat.size());
        if (merged_size > cluster_cap) {
            throw ClusterCapExceeded(merged_size, cluster_cap);
        }
        DensityMatrix merged = clusters_[static_cast<std::size_t>(involved[0])].rho;
        for (std::size_t i = 1; i < involved.size(); i++) {
            merged = tensor(merged, clusters_[static_cast<std::size_t>(involved[i])].rho);
        }
        std::vector<int> sorted = concat;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> source_of(sorted.size());
        for (std::size_t p = 0; p < sorted.size(); p++) {
            source_of[p] = static_cast<int>(std::find(concat.begin(), concat.end(), sorted[p]) - concat.begin());
        }
        merged = permute_qubits(merged, source_of);

        // Keep the smallest index as the merged cluster's home; erase the
        // others from the back so earlier indices stay valid.
        std::vector<int> order = involved;
        std::sort(order.begin(), order.end());
        home = static_cast<std::size_t>(order.front());
        clusters_[home] = {std::move(sorted), std::move(merged)};
        for (auto it = order.rbegin(); it != order.rend() - 1; ++it) {
            erase_cluster(static_cast<std::size_t>(*it));
        }
        reindex(home);
    }

    auto &cluster = clusters_[home];
    std::vector<int> positions;
    positions.reserve(gate.targets.size());
    for (int q : gate.targets) {
        positions.push_back(locator_[static_cast<std::size_t>(q)].position);
    }
    if (gate.kind == GateKind::kUnitary) {
        cluster.rho = apply_unitary(std::move(cluster.rho), gate.matrix, positions);
    } else {
        cluster.rho = measure_unconditioned(cluster.rho, *measurement, positions);
    }
}

std::size_t Configuration::apply_collapse(int qubit, const Observable &obs, const OutcomeChooser &choose) {
    require_live(qubit, "apply_collapse");
    if (obs.num_qubits() != 1) {
        throw std::invalid_argument("apply_collapse: observable must act on one qubit");
    }
    const Slot slot = locator_[static_cast<std::size_t>(qubit)];
    auto &cluster = clusters_[static_cast<std::size_t>(slot.cluster)];
    const int pos[1] = {slot.position};
    const std::vector<double> probs = outcome_probabilities(cluster.rho, obs, pos);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::runtime_error(
            "apply_collapse: outcome probabilities sum to " + std::to_string(total) + " (numeric drift)");
    }
    const std::size_t outcome = choose(probs);
    if (outcome >= probs.size()) {
        throw std::invalid_argument("apply_collapse: chooser returned an invalid outcome");
    }
    // A single projector (the identity) leaves every state unchanged.
    if (obs.num_outcomes() == 1) {
        return outcome;
    }
    if (probs[outcome] < kZeroProbability) {
        throw std::invalid_argument("apply_collapse: chosen outcome has zero probability");
    }
    DensityMatrix qubit_state = DensityMatrix::adopt(obs.eigenspaces()[outcome].projector);
    if (cluster.qubits.size() == 1) {
        cluster.rho = std::move(qubit_state);
        return outcome;
    }
    const DensityMatrix conditioned = condition_on_outcome(cluster.rho, obs, outcome, pos);
    std::vector<int> rest;
    for (int p = 0; p < static_cast<int>(cluster.qubits.size()); p++) {
        if (p != slot.position) {
            rest.push_back(p);
        }
    }
    cluster.rho = reduce(conditioned, rest);
    cluster.qubits.erase(cluster.qubits.begin() + slot.position);
    reindex(static_cast<std::size_t>(slot.cluster));
    clusters_.push_back({{qubit}, std::move(qubit_state)});
    reindex(clusters_.size() - 1);
    return outcome;
}

int Configuration::non_individual_count() const {
    int k = 0;
    for (const auto &c : clusters_) {
        if (c.qubits.size() >= 2) {
            k += static_cast<int>(c.qubits.size());
        }
    }
    return k;
}

int Configuration::max_cluster_size() const {
    int m = 0;
    for (const auto &c : clusters_) {
        m = std::max(m, static_cast<int>(c.qubits.size()));
    }
    return m;
}

uint64_t Configuration::entry_count() const {
    uint64_t total = 0;
    for (const auto &c : clusters_) {
        total += entries_of(static_cast<int>(c.qubits.size()));
    }
    return total;
}

DensityMatrix Configuration::global_state() const {
    DensityMatrix product;
    std::vector<int> concat;
    for (const auto &c : clusters_) {
        product = tensor(product, c.rho);
        concat.insert(concat.end(), c.qubits.begin(), c.qubits.end());
    }
    std::vector<int> sorted = concat;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> source_of(sorted.size());
    for (std::size_t p = 0; p < sorted.size(); p++) {
        source_of[p] = static_cast<int>(std::find(concat.begin(), concat.end(), sorted[p]) - concat.begin());
    }
    return permute_qubits(product, source_of);
}

void Configuration::audit() const {
    std::vector<int> seen(locator_.size(), 0);
    for (std::size_t c = 0; c < clusters_.size(); c++) {
        const auto &cluster = clusters_[c];
        if (cluster.qubits.empty()) {
            throw std::logic_error("audit: empty cluster " + std::to_string(c));
        }
        if (!std::is_sorted(cluster.qubits.begin(), cluster.qubits.end())) {
            throw std::logic_error("audit: cluster " + std::to_string(c) + " is not sorted");
        }
        if (cluster.rho.num_qubits() != static_cast<int>(cluster.qubits.size())) {
            throw std::logic_error("audit: cluster " + std::to_string(c) + " matrix size mismatch");
        }
        for (std::size_t p = 0; p < cluster.qubits.size(); p++) {
            const int q = cluster.qubits[p];
            if (q < 0 || q >= capacity()) {
                throw std::logic_error("audit: qubit id out of range");
            }
            if (seen[static_cast<std::size_t>(q)]++) {
                throw std::logic_error("audit: qubit " + std::to_string(q) + " in two clusters");
            }
            const Slot &slot = locator_[static_cast<std::size_t>(q)];
            if (slot.cluster != static_cast<int>(c) || slot.position != static_cast<int>(p)) {
                throw std::logic_error("audit: locator of qubit " + std::to_string(q) + " is stale");
            }
        }
    }
    for (std::size_t q = 0; q < locator_.size(); q++) {
        if (!seen[q] && locator_[q].cluster >= 0) {
            throw std::logic_error("audit: dangling locator for qubit " + std::to_string(q));
        }
    }
}

Configuration init_configuration(std::span<const int> bits) {
    Configuration conf(static_cast<int>(bits.size()));
    for (std::size_t q = 0; q < bits.size(); q++) {
        conf.add_qubit(static_cast<int>(q), bits[q]);
    }
    return conf;
}

std::vector<int> parse_bits(std::string_view text) {
    std::vector<int> bits;
    bits.reserve(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
        bits.push_back(ch - '0');
    }
    return bits;
}

TrialResult run_trial(
    const Medium &medium, const FaultSpec &fault, std::span<const int> input, Rng &rng,
    const ClusterSimOptions &options) {
    const FaultPath sigma = sample_fault_path(medium, rng);
    return run_trial_with_path(medium, fault, input, sigma, sampling_chooser(rng), options);
}

TrialResult run_trial_with_path(
    const Medium &medium, const FaultSpec &fault, std::span<const int> input, const FaultPath &sigma,
    const OutcomeChooser &choose, const ClusterSimOptions &options, const StepObserver &observer) {
    const Schedule schedule = make_schedule(medium);
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
    if (fault.observable.num_qubits() != 1) {
        throw std::invalid_argument("fault observable must act on one qubit");
    }
    for (const Site &s : sigma.sites()) {
        if (s.qubit < 0 || s.qubit >= medium.num_qubits || !medium.alive(s.qubit, s.time)) {
            throw std::invalid_argument(
                "fault site (t=" + std::to_string(s.time) + ", q=" + std::to_string(s.qubit) +
                ") is outside the qubit's lifetime");
        }
    }

    TrialResult result;
    CostStats &stats = result.stats;
    Configuration conf(medium.num_qubits);
    const auto sites = sigma.sites();
    std::size_t next_site = 0;
    try {
        for (int t = 0; t <= schedule.horizon; t++) {
            const auto ts = static_cast<std::size_t>(t);
            for (int q : schedule.deaths[ts]) {
                conf.remove_qubit(q);
            }
            for (int q : schedule.births[ts]) {
                conf.add_qubit(q, input[static_cast<std::size_t>(q)]);
            }
            for (std::size_t g : schedule.gates[ts]) {
                const auto &m = schedule.measurement[g];
                conf.apply_gate(medium.gates[g], m ? &*m : nullptr, options.cluster_cap);
            }
            stats.k_star.push_back(conf.non_individual_count());
            stats.max_cluster.push_back(conf.max_cluster_size());
            stats.entries_written += conf.entry_count();

            for (; next_site < sites.size() && sites[next_site].time == t; next_site++) {
                conf.apply_collapse(sites[next_site].qubit, fault.observable, choose);
            }
            stats.k.push_back(conf.non_individual_count());
            stats.entries_written += conf.entry_count();
            stats.entries_cumulative.push_back(stats.entries_written);
            for (const auto &c : conf.clusters()) {
                const std::size_t size = c.qubits.size();
                if (stats.cluster_size_samples.size() <= size) {
                    stats.cluster_size_samples.resize(size + 1);
                }
                stats.cluster_size_samples[size] += size;
                stats.live_qubit_steps += size;
            }
            if (observer) {
                observer(t, conf);
            }
        }
    } catch (ClusterCapExceeded &e) {
        e.partial_stats = stats;
        throw;
    }

    const Observable basis = Observable::computational_basis();
    result.output.reserve(medium.result_qubits.size());
    for (int q : medium.result_qubits) {
        const std::size_t outcome = conf.apply_collapse(q, basis, choose);
        result.output.push_back(basis.eigenspaces()[outcome].eigenvalue > 0.5 ? '1' : '0');
    }
    return result;
}

OutputSample sample_output_distribution(
    const Medium &medium, const FaultSpec &fault, std::span<const int> input, uint64_t trials, uint64_t seed,
    const SampleOptions &options) {
    if (trials < 1) {
        throw std::invalid_argument("sample_output_distribution: trials must be at least 1");
    }
    require_valid(medium);
    std::vector<std::string> outputs(trials);
    std::vector<CostStats> stats(trials);
    std::vector<uint8_t> exhausted(trials, 0);
    parallel_for(trials, options.threads, [&](std::size_t i) {
        Rng rng = Rng::derived(seed, {i});
        try {
            TrialResult r = run_trial(medium, fault, input, rng, options.sim);
            outputs[i] = std::move(r.output);
            stats[i] = std::move(r.stats);
        } catch (const ClusterCapExceeded &e) {
            exhausted[i] = 1;
            stats[i] = e.partial_stats;
        }
    });

    OutputSample sample;
    sample.trials = trials;
    double entries_sum = 0;
    for (std::size_t i = 0; i < trials; i++) {
        if (exhausted[i]) {
            sample.exhausted++;
            continue;
        }
        sample.completed++;
        sample.counts[outputs[i]]++;
        entries_sum += static_cast<double>(stats[i].entries_written);
        sample.max_cluster_histogram[stats[i].peak_cluster()]++;
    }
    if (sample.completed > 0) {
        for (const auto &[key, count] : sample.counts) {
            sample.distribution[key] = static_cast<double>(count) / static_cast<double>(sample.completed);
        }
        sample.mean_entries = entries_sum / static_cast<double>(sample.completed);
    }
    if (options.keep_trial_stats) {
        sample.trial_stats = std::move(stats);
        sample.trial_exhausted = std::move(exhausted);
    }
    return sample;
}

}  // namespace qdeco
