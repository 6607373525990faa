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

#ifndef QDECO_CLUSTERSIM_H_
#define QDECO_CLUSTERSIM_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdeco/density_matrix.h"
#include "qdeco/distribution.h"
#include "qdeco/medium.h"
#include "qdeco/rng.h"

namespace qdeco {

/// Cost counters of one trial, indexed by time step.
///
/// For step t, `k_star[t]` and `max_cluster[t]` describe the configuration
/// right after the gates (conf*(t)), `k[t]` the one after the faults
/// (conf(t+1)). K counts qubits in clusters of size >= 2. Entries written is
/// the number of density-matrix entries in both configurations, summed over
/// steps; a cluster of size s contributes 4^s.
struct CostStats {
    std::vector<int> k;
    std::vector<int> k_star;
    std::vector<int> max_cluster;
    std::vector<uint64_t> entries_cumulative;
    uint64_t entries_written = 0;
    uint64_t live_qubit_steps = 0;
    /// Histogram of K_q(t) over live qubits q and steps t (index = size).
    std::vector<uint64_t> cluster_size_samples;

    int steps() const { return static_cast<int>(k.size()); }
    int peak_cluster() const;
};

/// A merge would create a cluster above the configured cap. This is a
/// reported outcome (the simulation is infeasible), not a bug.
class ClusterCapExceeded : public std::runtime_error {
   public:
    ClusterCapExceeded(int requested, int cap);
    int requested() const { return requested_; }
    int cap() const { return cap_; }

    /// Filled in by run_trial before the exception leaves it.
    CostStats partial_stats;

   private:
    int requested_;
    int cap_;
};

inline constexpr int kDefaultClusterCap = 13;

struct ClusterSimOptions {
    int cluster_cap = kDefaultClusterCap;
};

/// Picks an outcome index given the probability of every outcome.
using OutcomeChooser = std::function<std::size_t(std::span<const double>)>;

/// Draws an index with the given probabilities using one uniform from rng.
std::size_t draw_outcome(std::span<const double> probs, Rng &rng);
OutcomeChooser sampling_chooser(Rng &rng);

/// The factorized state: a list of clusters, each a density matrix over a
/// sorted list of qubit ids, whose tensor product is the global state.
class Configuration {
   public:
    struct Cluster {
        std::vector<int> qubits;  // sorted; position p of rho is qubits[p]
        DensityMatrix rho;
    };

    /// Room for qubit ids [0, num_qubits), none of them live.
    explicit Configuration(int num_qubits = 0);

    /// Adds `qubit` as a fresh singleton in |bit><bit|.
    void add_qubit(int qubit, int bit);
    /// Traces `qubit` out of its cluster.
    void remove_qubit(int qubit);

    /// Merges the clusters of the gate's targets and applies the gate to the
    /// merged matrix (unitary: U rho U^dagger, measurement: unconditioned).
    /// `measurement` must be the gate's observable for measurement gates.
    void apply_gate(const GateSpec &gate, const Observable *measurement, int cluster_cap);
    void apply_gate(const GateSpec &gate, int cluster_cap = kDefaultClusterCap);

    /// Measures `qubit` in the eigenbasis of `obs`, conditioned on the outcome
    /// picked by `choose`. A non-degenerate outcome splits the qubit off into
    /// its own cluster. Returns the outcome index.
    std::size_t apply_collapse(int qubit, const Observable &obs, const OutcomeChooser &choose);

    int capacity() const { return static_cast<int>(locator_.size()); }
    bool is_live(int qubit) const;
    int cluster_size_of(int qubit) const;
    std::size_t num_clusters() const { return clusters_.size(); }
    std::span<const Cluster> clusters() const { return clusters_; }
    const Cluster &cluster_of(int qubit) const;
    std::vector<int> live_qubits() const;

    int non_individual_count() const;
    int max_cluster_size() const;
    uint64_t entry_count() const;

    /// Tensor product of all clusters over live_qubits() in ascending order.
    DensityMatrix global_state() const;

    /// Checks that clusters partition the live qubits, matrix sizes match and
    /// the locator agrees. Throws std::logic_error.
    void audit() const;

   private:
    struct Slot {
        int cluster = -1;
        int position = -1;
    };

    void require_live(int qubit, const char *what) const;
    void reindex(std::size_t cluster);
    void erase_cluster(std::size_t cluster);

    std::vector<Cluster> clusters_;
    std::vector<Slot> locator_;
};

/// One singleton |b><b| cluster per input bit, qubit ids 0..len-1.
Configuration init_configuration(std::span<const int> bits);

/// Parses "0110" into bits; throws on other characters.
std::vector<int> parse_bits(std::string_view text);

struct TrialResult {
    std::string output;
    CostStats stats;
};

/// Called after the faults of step t with conf(t+1).
using StepObserver = std::function<void(int t, const Configuration &conf)>;

/// One run of the cluster simulation: samples a fault path, then for every
/// step applies deaths, births, gates and the collapses of that step, and
/// finally measures the result qubits in the computational basis.
///
/// `input` holds one bit per qubit of the medium; qubits born later start in
/// their bit's basis state at birth. Throws ClusterCapExceeded.
TrialResult run_trial(
    const Medium &medium, const FaultSpec &fault, std::span<const int> input, Rng &rng,
    const ClusterSimOptions &options = {});

/// Same as run_trial with the fault path and the collapse outcomes supplied
/// by the caller.
TrialResult run_trial_with_path(
    const Medium &medium, const FaultSpec &fault, std::span<const int> input, const FaultPath &sigma,
    const OutcomeChooser &choose, const ClusterSimOptions &options = {}, const StepObserver &observer = {});

struct SampleOptions {
    ClusterSimOptions sim;
    unsigned threads = 1;
    bool keep_trial_stats = true;
};

struct OutputSample {
    std::map<std::string, uint64_t> counts;
    /// Frequencies over completed trials.
    Distribution distribution;
    uint64_t trials = 0;
    uint64_t completed = 0;
    uint64_t exhausted = 0;
    double mean_entries = 0;
    /// Peak cluster size of each completed trial -> number of trials.
    std::map<int, uint64_t> max_cluster_histogram;
    /// Per trial, in trial order; exhausted trials hold their partial stats.
    std::vector<CostStats> trial_stats;
    std::vector<uint8_t> trial_exhausted;
};

/// Runs `trials` independent trials; trial i draws from
/// Rng::derived(seed, {i}), so the result depends only on the arguments and
/// not on the thread count.
OutputSample sample_output_distribution(
    const Medium &medium, const FaultSpec &fault, std::span<const int> input, uint64_t trials, uint64_t seed,
    const SampleOptions &options = {});

}  // namespace qdeco

#endif
