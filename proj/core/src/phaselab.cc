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

#include "qdeco/phaselab.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qdeco/parallel.h"

namespace qdeco::phaselab {

ClusterPartition::ClusterPartition(int n) {
    if (n < 0) {
        throw std::invalid_argument("ClusterPartition: negative size");
    }
    parent_.resize(static_cast<std::size_t>(n));
    size_.assign(static_cast<std::size_t>(n), 1);
    for (int i = 0; i < n; i++) {
        parent_[static_cast<std::size_t>(i)] = i;
    }
    num_clusters_ = n;
}

int ClusterPartition::find(int site) {
    auto x = static_cast<std::size_t>(site);
    while (parent_[x] != static_cast<int>(x)) {
        parent_[x] = parent_[static_cast<std::size_t>(parent_[x])];
        x = static_cast<std::size_t>(parent_[x]);
    }
    return static_cast<int>(x);
}

int ClusterPartition::root_of(int site) const {
    while (parent_[static_cast<std::size_t>(site)] != site) {
        site = parent_[static_cast<std::size_t>(site)];
    }
    return site;
}

void ClusterPartition::unite(int a, int b) {
    int ra = find(a);
    int rb = find(b);
    if (ra == rb) {
        return;
    }
    if (size_[static_cast<std::size_t>(ra)] < size_[static_cast<std::size_t>(rb)]) {
        std::swap(ra, rb);
    }
    parent_[static_cast<std::size_t>(rb)] = ra;
    size_[static_cast<std::size_t>(ra)] += size_[static_cast<std::size_t>(rb)];
    num_clusters_--;
}

int ClusterPartition::cluster_size(int site) { return size_[static_cast<std::size_t>(find(site))]; }

int ClusterPartition::max_cluster() const {
    int m = 0;
    for (std::size_t i = 0; i < parent_.size(); i++) {
        if (parent_[i] == static_cast<int>(i)) {
            m = std::max(m, size_[i]);
        }
    }
    return m;
}

std::vector<int> ClusterPartition::cluster_sizes() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < parent_.size(); i++) {
        if (parent_[i] == static_cast<int>(i)) {
            out.push_back(size_[i]);
        }
    }
    return out;
}

void ClusterPartition::rebuild(const std::vector<uint8_t> &separated) {
    const int n = size();
    if (separated.size() != parent_.size()) {
        throw std::invalid_argument("rebuild: mask size mismatch");
    }
    std::vector<int> old_root(static_cast<std::size_t>(n));
    for (int i = 0; i < n; i++) {
        old_root[static_cast<std::size_t>(i)] = find(i);
    }
    // First surviving member of each old cluster becomes its new root.
    std::vector<int> leader(static_cast<std::size_t>(n), -1);
    std::fill(size_.begin(), size_.end(), 0);
    num_clusters_ = 0;
    for (int i = 0; i < n; i++) {
        const auto si = static_cast<std::size_t>(i);
        if (separated[si]) {
            parent_[si] = i;
            size_[si] = 1;
            num_clusters_++;
            continue;
        }
        int &lead = leader[static_cast<std::size_t>(old_root[si])];
        if (lead < 0) {
            lead = i;
            num_clusters_++;
        }
        parent_[si] = lead;
        size_[static_cast<std::size_t>(lead)]++;
    }
}

bool ClusterPartition::check_invariants() const {
    long long total = 0;
    int roots = 0;
    for (std::size_t i = 0; i < parent_.size(); i++) {
        if (parent_[i] == static_cast<int>(i)) {
            if (size_[i] < 1) {
                return false;
            }
            total += size_[i];
            roots++;
        }
    }
    std::vector<int> counted(parent_.size(), 0);
    for (int i = 0; i < size(); i++) {
        counted[static_cast<std::size_t>(root_of(i))]++;
    }
    for (std::size_t i = 0; i < parent_.size(); i++) {
        if (parent_[i] == static_cast<int>(i) && counted[i] != size_[i]) {
            return false;
        }
    }
    return total == size() && roots == num_clusters_;
}

const char *topology_name(Topology topology) { return topology == Topology::kRandom ? "random" : "1d"; }

Topology parse_topology(const std::string &name) {
    if (name == "random") {
        return Topology::kRandom;
    }
    if (name == "1d") {
        return Topology::kLine;
    }
    throw std::invalid_argument("unknown topology '" + name + "' (expected random or 1d)");
}

void matching_step_random(ClusterPartition &p, Rng &rng) {
    const int n = p.size();
    if (n < 2) {
        return;
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; i++) {
        perm[static_cast<std::size_t>(i)] = i;
    }
    for (int i = n - 1; i > 0; i--) {
        const auto j = rng.below(static_cast<uint64_t>(i) + 1);
        std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
    }
    for (int i = 0; i + 1 < n; i += 2) {
        p.unite(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i) + 1]);
    }
}

void matching_step_1d(ClusterPartition &p, int parity) {
    for (int a = parity & 1; a + 1 < p.size(); a += 2) {
        p.unite(a, a + 1);
    }
}

void decohere_step(ClusterPartition &p, double eta, Rng &rng) {
    if (!(eta >= 0 && eta <= 1)) {
        throw std::invalid_argument("decohere_step: eta must lie in [0, 1]");
    }
    std::vector<uint8_t> separated(static_cast<std::size_t>(p.size()));
    bool any = false;
    for (auto &s : separated) {
        s = rng.bernoulli(eta) ? 1 : 0;
        any = any || s;
    }
    if (any) {
        p.rebuild(separated);
    }
}

double Trajectory::final_fraction() const {
    if (max_cluster.empty() || n == 0) {
        return 0;
    }
    return static_cast<double>(max_cluster.back()) / n;
}

Trajectory run_dynamics(int n, int steps, double eta, Topology topology, Rng &rng, const DynamicsOptions &options) {
    if (n < 2) {
        throw std::invalid_argument("run_dynamics: n must be at least 2");
    }
    if (steps < 1) {
        throw std::invalid_argument("run_dynamics: steps must be at least 1");
    }
    if (options.matching_period < 1) {
        throw std::invalid_argument("run_dynamics: matching period must be at least 1");
    }
    if (!(eta >= 0 && eta <= 1)) {
        throw std::invalid_argument("run_dynamics: eta must lie in [0, 1]");
    }
    ClusterPartition p(n);
    Trajectory traj;
    traj.n = n;
    traj.max_cluster.reserve(static_cast<std::size_t>(steps));
    traj.num_clusters.reserve(static_cast<std::size_t>(steps));
    for (int t = 0; t < steps; t++) {
        if (t % options.matching_period == 0) {
            if (topology == Topology::kRandom) {
                matching_step_random(p, rng);
            } else {
                matching_step_1d(p, (t / options.matching_period) % 2);
            }
        }
        decohere_step(p, eta, rng);
        p.advance();
        traj.max_cluster.push_back(p.max_cluster());
        traj.num_clusters.push_back(p.num_clusters());
    }
    const double cutoff = std::log2(static_cast<double>(n));
    long long in_tail = 0;
    for (int s : p.cluster_sizes()) {
        if (s > cutoff) {
            in_tail += s;
        }
    }
    traj.tail_fraction = static_cast<double>(in_tail) / n;
    return traj;
}

std::vector<double> make_grid(double eta_min, double eta_max, double step) {
    if (!(step > 0)) {
        throw std::invalid_argument("grid step must be positive");
    }
    if (eta_min > eta_max) {
        throw std::invalid_argument("eta-min must not exceed eta-max");
    }
    if (eta_min < 0 || eta_max > 1) {
        throw std::invalid_argument("grid must lie within [0, 1]");
    }
    std::vector<double> grid;
    const auto count = static_cast<long long>(std::floor((eta_max - eta_min) / step + 1e-9));
    for (long long i = 0; i <= count; i++) {
        // Round to 12 digits so 0.5 + 14 * 0.01 prints as 0.64.
        grid.push_back(std::round((eta_min + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return grid;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

}  // namespace

PhaseScanReport scan_transition(const ScanConfig &config) {
    if (config.eta_grid.empty()) {
        throw std::invalid_argument("scan_transition: empty grid");
    }
    for (std::size_t i = 0; i < config.eta_grid.size(); i++) {
        const double e = config.eta_grid[i];
        if (!(e >= 0 && e <= 1)) {
            throw std::invalid_argument("scan_transition: grid must lie within [0, 1]");
        }
        if (i > 0 && !(e > config.eta_grid[i - 1])) {
            throw std::invalid_argument("scan_transition: grid must be strictly increasing");
        }
    }
    if (config.trials < 1) {
        throw std::invalid_argument("scan_transition: trials must be at least 1");
    }
    const std::size_t grid = config.eta_grid.size();
    const auto trials = static_cast<std::size_t>(config.trials);
    PhaseScanReport report;
    report.config = config;
    report.trajectories.assign(grid, std::vector<Trajectory>(trials));
    const DynamicsOptions dyn{config.matching_period};
    parallel_for(grid * trials, config.threads, [&](std::size_t k) {
        const std::size_t e = k / trials;
        const std::size_t r = k % trials;
        Rng rng = Rng::derived(config.seed, {e, r});
        report.trajectories[e][r] = run_dynamics(config.n, config.steps, config.eta_grid[e], config.topology, rng, dyn);
    });
    for (std::size_t e = 0; e < grid; e++) {
        std::vector<double> finals;
        double tail = 0;
        for (const auto &traj : report.trajectories[e]) {
            finals.push_back(traj.final_fraction());
            tail += traj.tail_fraction;
        }
        const double med = median(finals);
        report.median_final_fraction.push_back(med);
        report.mean_tail_fraction.push_back(tail / static_cast<double>(trials));
        report.supercritical.push_back(med >= config.threshold ? 1 : 0);
        if (!report.eta0 && med < config.threshold) {
            report.eta0 = config.eta_grid[e];
        }
    }
    report.resolution = grid > 1 ? config.eta_grid[1] - config.eta_grid[0] : 0;
    return report;
}

double mean_field_fixed_point(double survival) {
    if (!(survival > 0.5 && survival <= 1)) {
        throw std::invalid_argument("mean_field_fixed_point: survival must lie in (0.5, 1]");
    }
    return 2 - 1 / survival;
}

double growth_factor(double alpha, double survival) {
    if (!(alpha >= 0 && alpha <= 1)) {
        throw std::invalid_argument("growth_factor: alpha must lie in [0, 1]");
    }
    return (2 - alpha) * survival;
}

double effective_rate(double eta, int nu) {
    if (!(eta >= 0 && eta <= 1)) {
        throw std::invalid_argument("effective_rate: eta must lie in [0, 1]");
    }
    if (nu < 1) {
        throw std::invalid_argument("effective_rate: nu must be at least 1");
    }
    return 1 - std::pow(1 - eta, nu);
}

GrowthMeasurement measure_growth(int n, double alpha, double survival, int repetitions, uint64_t seed) {
    if (n < 2 || repetitions < 2) {
        throw std::invalid_argument("measure_growth: need n >= 2 and at least two repetitions");
    }
    const int seeded = static_cast<int>(std::lround(alpha * n));
    if (seeded < 1 || seeded > n) {
        throw std::invalid_argument("measure_growth: alpha * n must be between 1 and n");
    }
    GrowthMeasurement out;
    out.predicted = growth_factor(alpha, survival);
    out.repetitions = repetitions;
    double sum = 0;
    double sum_sq = 0;
    for (int r = 0; r < repetitions; r++) {
        Rng rng = Rng::derived(seed, {static_cast<uint64_t>(r)});
        ClusterPartition p(n);
        for (int i = 1; i < seeded; i++) {
            p.unite(0, i);
        }
        matching_step_random(p, rng);
        // Sites of the grown cluster, remembered before the split.
        const int root = p.find(0);
        std::vector<uint8_t> member(static_cast<std::size_t>(n));
        for (int i = 0; i < n; i++) {
            member[static_cast<std::size_t>(i)] = p.find(i) == root;
        }
        long long survivors = 0;
        for (int i = 0; i < n; i++) {
            const bool separated = rng.bernoulli(1 - survival);
            survivors += member[static_cast<std::size_t>(i)] && !separated;
        }
        const double factor = static_cast<double>(survivors) / seeded;
        sum += factor;
        sum_sq += factor * factor;
    }
    const double reps = repetitions;
    out.mean_factor = sum / reps;
    const double var = std::max(0.0, (sum_sq - reps * out.mean_factor * out.mean_factor) / (reps - 1));
    out.std_error = std::sqrt(var / reps);
    return out;
}

void validate(const BranchingConfig &config) {
    if (!(config.a > 8)) {
        throw std::invalid_argument("branching check requires a > 8");
    }
    if (config.tree_cap < 1) {
        throw std::invalid_argument("tree cap must be positive");
    }
    if (config.pmf.empty()) {
        return;
    }
    double total = 0;
    for (std::size_t j = 0; j < config.pmf.size(); j++) {
        const double pj = config.pmf[j];
        if (pj < 0) {
            throw std::invalid_argument("offspring pmf has a negative entry");
        }
        if (pj > std::pow(config.a, -static_cast<double>(j)) + 1e-15) {
            throw std::invalid_argument("offspring pmf violates Pr(z = j) <= a^-j at j = " + std::to_string(j));
        }
        total += pj;
    }
    if (std::abs(total - 1) > 1e-9) {
        throw std::invalid_argument("offspring pmf must sum to one");
    }
}

double branching_bound(double a, int i) {
    const double c = std::sqrt(2.0) - 1;
    return a * c * c * std::pow(std::sqrt(8 / a), i);
}

int BranchingReport::violations() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const BranchingRow &r) { return r.violated; }));
}

namespace {

uint64_t draw_offspring(const BranchingConfig &config, Rng &rng) {
    const double u = rng.uniform();
    if (config.pmf.empty()) {
        // Pr(z >= j) = a^-j.
        return static_cast<uint64_t>(std::floor(-std::log1p(-u) / std::log(config.a)));
    }
    double cumulative = 0;
    for (std::size_t j = 0; j < config.pmf.size(); j++) {
        cumulative += config.pmf[j];
        if (u < cumulative) {
            return j;
        }
    }
    return config.pmf.size() - 1;
}

/// Total progeny of one tree, or 0 when it passes the cap.
uint64_t tree_size(const BranchingConfig &config, Rng &rng) {
    uint64_t pending = 1;
    uint64_t nodes = 0;
    while (pending > 0) {
        pending--;
        nodes++;
        if (nodes > config.tree_cap) {
            return 0;
        }
        pending += draw_offspring(config, rng);
    }
    return nodes;
}

}  // namespace

BranchingReport branching_tail_check(const BranchingConfig &config, uint64_t samples, Rng &rng) {
    validate(config);
    if (samples < 1) {
        throw std::invalid_argument("branching check needs at least one sample");
    }
    BranchingReport report;
    report.config = config;
    report.samples = samples;
    std::map<uint64_t, uint64_t> counts;
    for (uint64_t s = 0; s < samples; s++) {
        const uint64_t ta = tree_size(config, rng);
        const uint64_t tb = tree_size(config, rng);
        if (ta == 0 || tb == 0) {
            report.overflow++;
            continue;
        }
        counts[2 * ta + 2 * tb - 2]++;
    }
    const double total = static_cast<double>(samples);
    for (const auto &[value, count] : counts) {
        BranchingRow row;
        row.i = static_cast<int>(value);
        row.count = count;
        row.empirical = static_cast<double>(count) / total;
        row.bound = branching_bound(config.a, row.i);
        const double se = std::sqrt(row.empirical * (1 - row.empirical) / total);
        row.violated = count >= 100 && row.empirical - row.bound > 3 * se;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace qdeco::phaselab
