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

#ifndef QDECO_PHASELAB_H_
#define QDECO_PHASELAB_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdeco/rng.h"

namespace qdeco::phaselab {

/// Abstract clusters over n sites: union-find with union by size and path
/// halving. Splitting is done by rebuilding (see decohere_step).
class ClusterPartition {
   public:
    explicit ClusterPartition(int n);

    int size() const { return static_cast<int>(parent_.size()); }
    int find(int site);
    void unite(int a, int b);
    int cluster_size(int site);

    int num_clusters() const { return num_clusters_; }
    int max_cluster() const;
    /// Sizes of all clusters, one entry per root.
    std::vector<int> cluster_sizes() const;

    int step() const { return step_; }
    void advance() { step_++; }

    /// Replaces the structure so that `separated` sites are singletons and
    /// every other site stays with the survivors of its old cluster.
    void rebuild(const std::vector<uint8_t> &separated);

    /// Sizes sum to n and every root has size >= 1.
    bool check_invariants() const;

   private:
    int root_of(int site) const;

    std::vector<int> parent_;
    std::vector<int> size_;
    int num_clusters_ = 0;
    int step_ = 0;
};

enum class Topology { kRandom, kLine };
const char *topology_name(Topology topology);
Topology parse_topology(const std::string &name);

/// Unions the two ends of every pair of a uniformly random matching; with n
/// odd one random site stays unmatched.
void matching_step_random(ClusterPartition &p, Rng &rng);

/// Line without wraparound: pairs (2i, 2i+1) for even parity, (2i+1, 2i+2)
/// for odd parity.
void matching_step_1d(ClusterPartition &p, int parity);

/// Each site independently becomes a singleton with probability eta.
void decohere_step(ClusterPartition &p, double eta, Rng &rng);

struct DynamicsOptions {
    /// Matching happens on steps t with t % matching_period == 0;
    /// decoherence happens on every step.
    int matching_period = 1;
};

struct Trajectory {
    std::vector<int> max_cluster;  // after the decoherence of step t
    std::vector<int> num_clusters;
    int n = 0;
    /// Fraction of sites in clusters larger than log2(n) after the last step.
    double tail_fraction = 0;
    double final_fraction() const;
};

Trajectory run_dynamics(
    int n, int steps, double eta, Topology topology, Rng &rng, const DynamicsOptions &options = {});

struct ScanConfig {
    int n = 2000;
    int steps = 200;
    std::vector<double> eta_grid;
    int trials = 20;
    Topology topology = Topology::kRandom;
    uint64_t seed = 1;
    double threshold = 0.01;
    int matching_period = 1;
    unsigned threads = 1;
};

/// eta_min, eta_min + step, ... up to eta_max (inclusive, rounding-safe).
std::vector<double> make_grid(double eta_min, double eta_max, double step);

struct PhaseScanReport {
    ScanConfig config;
    /// trajectories[e][trial].
    std::vector<std::vector<Trajectory>> trajectories;
    std::vector<double> median_final_fraction;
    /// Mean over trials of the final fraction of sites in clusters of size
    /// above log2(n).
    std::vector<double> mean_tail_fraction;
    std::vector<uint8_t> supercritical;
    /// First grid point whose median drops below the threshold.
    std::optional<double> eta0;
    double resolution = 0;
};

/// Trial r at grid index e draws from Rng::derived(seed, {e, r}).
PhaseScanReport scan_transition(const ScanConfig &config);

/// Fixed point 2 - 1/s of the mean-field recursion, s the per-step survival
/// probability. Throws unless s lies in (0.5, 1].
double mean_field_fixed_point(double survival);

/// (2 - alpha) s: one-step multiplier of a cluster holding a fraction alpha.
double growth_factor(double alpha, double survival);

/// 1 - (1 - eta)^nu.
double effective_rate(double eta, int nu);

struct GrowthMeasurement {
    double predicted = 0;
    double mean_factor = 0;
    double std_error = 0;
    int repetitions = 0;
};

/// Seeds one cluster of round(alpha n) sites, applies one random matching
/// and one decoherence step with rate 1 - s, and averages the new size of
/// the seeded cluster divided by its initial size.
GrowthMeasurement measure_growth(int n, double alpha, double survival, int repetitions, uint64_t seed);

struct BranchingConfig {
    double a = 30;
    /// Offspring pmf; empty means geometric Pr(z = j) = (1 - 1/a) a^-j.
    std::vector<double> pmf;
    uint64_t tree_cap = 1'000'000;
};

/// Throws unless a > 8, the pmf sums to one and Pr(z = j) <= a^-j.
void validate(const BranchingConfig &config);

struct BranchingRow {
    int i = 0;
    uint64_t count = 0;
    double empirical = 0;
    double bound = 0;
    bool violated = false;
};

struct BranchingReport {
    BranchingConfig config;
    uint64_t samples = 0;
    uint64_t overflow = 0;
    std::vector<BranchingRow> rows;  // one per observed value of L
    int violations() const;
};

/// a (sqrt 2 - 1)^2 (sqrt(8 / a))^i.
double branching_bound(double a, int i);

/// Samples L = 2 T_a + 2 T_b - 2 for pairs of independent trees. A value is
/// flagged when it was seen at least 100 times and its frequency exceeds the
/// bound by more than three binomial standard errors.
BranchingReport branching_tail_check(const BranchingConfig &config, uint64_t samples, Rng &rng);

}  // namespace qdeco::phaselab

#endif
