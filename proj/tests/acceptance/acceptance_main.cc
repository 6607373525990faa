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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Pass criterion numbers as arguments to
// run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "qdeco/clustersim.h"
#include "qdeco/gates.h"
#include "qdeco/generators.h"
#include "qdeco/oracle.h"
#include "qdeco/parallel.h"
#include "qdeco/phaselab.h"
#include "test_support.h"

namespace qdeco {
namespace {

namespace fs = std::filesystem;

// Tolerances and protocol sizes.
constexpr double kTvLimit = 0.01;
constexpr uint64_t kSamplerTrials = 100000;
constexpr double kIdentityLimit = 1e-10;
constexpr double kTrajectoryLimit = 1e-9;
constexpr double kRandomEtaLow = 0.60;
constexpr double kRandomEtaHigh = 0.68;
constexpr double kLineEtaLow = 0.45;
constexpr double kLineEtaHigh = 0.55;
constexpr uint64_t kBranchingSamples = 1000000;
constexpr double kGrowthSigmas = 3;
constexpr int kGrowthN = 10000;
constexpr int kGrowthRepetitions = 1000;
constexpr double kCostExponentLimit = 2;
constexpr int kHighEtaClusterLimit = 12;
constexpr double kHighEtaEntriesLimit = 1e6;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

Outcome sampler_matches_exact() {
    const unsigned threads = default_thread_count();
    double worst = 0;
    std::string worst_case;
    int cases = 0;
    for (const auto &c : testing::fixture_cases()) {
        const auto input = parse_bits(c.input);
        for (double eta : {0.0, 0.3, 0.8, 1.0}) {
            const Medium m = testing::with_eta(testing::load_fixture(c.name), eta);
            for (const FaultSpec &fault : {FaultSpec::z(), FaultSpec::x()}) {
                const Distribution exact = output_distribution_exact(m, fault, input);
                const uint64_t seed = derive_seed(2026, {static_cast<uint64_t>(cases)});
                const OutputSample s =
                    sample_output_distribution(m, fault, input, kSamplerTrials, seed, {{}, threads, false});
                const double tv = s.exhausted ? INFINITY : tv_distance(exact, s.distribution);
                if (tv > worst) {
                    worst = tv;
                    worst_case = std::string(c.name) + " eta=" + fmt(eta) +
                                 (fault == FaultSpec::z() ? " Z" : " X");
                }
                cases++;
            }
        }
    }
    return {worst <= kTvLimit, "worst TV " + fmt(worst) + " (" + worst_case + ") over " + std::to_string(cases) +
                                   " cases, limit " + fmt(kTvLimit)};
}

Outcome path_sum_identity() {
    Rng rng(77);
    double worst = 0;
    int circuits = 0;
    for (int i = 0; i < 20; i++) {
        const int n = 2 + i % 2;
        const int horizon = n == 2 ? 5 : 3;  // V = 12
        GeneratorOptions opts{n, horizon, 0.05 + 0.9 * rng.uniform(), i % 2 ? FaultSpec::x() : FaultSpec::z(),
                              {testing::random_unitary(2, rng), gates::entangler()}};
        Medium m = i % 3 == 0 ? sequential_circuit(opts, rng) : random_matching_circuit(opts, rng);
        if (i % 4 == 3 && !m.gates.empty()) {
            // Swap the first gate for a measurement of a random observable.
            m.gates[0].kind = GateKind::kMeasurement;
            m.gates[0].matrix = testing::random_hermitian(2, rng);
        }
        std::vector<int> input;
        for (int q = 0; q < n; q++) {
            input.push_back(static_cast<int>(rng.below(2)));
        }
        if (fault_sites(m) > 12) {
            return {false, "generated circuit has V > 12"};
        }
        const double gap = evolve_exact(m, m.fault, input).rho.max_abs_diff(path_sum_exact(m, m.fault, input).rho);
        worst = std::max(worst, gap);
        circuits++;
    }
    return {worst <= kIdentityLimit,
            "max entrywise gap " + fmt(worst) + " over " + std::to_string(circuits) + " circuits, limit " +
                fmt(kIdentityLimit)};
}

Outcome global_state_equivalence() {
    double worst = 0;
    int runs = 0;
    for (const auto &c : testing::fixture_cases()) {
        const auto input = parse_bits(c.input);
        for (double eta : {0.3, 0.8}) {
            const Medium m = testing::with_eta(testing::load_fixture(c.name), eta);
            for (const FaultSpec &fault : {FaultSpec::z(), FaultSpec::x()}) {
                for (uint64_t k = 0; k < 5; k++) {
                    Rng rng = Rng::derived(31, {static_cast<uint64_t>(runs)});
                    const FaultPath sigma = sample_fault_path(m, rng);
                    worst = std::max(worst, testing::max_trajectory_gap(m, fault, input, sigma, rng()));
                    runs++;
                }
            }
        }
    }
    return {worst <= kTrajectoryLimit, "max entrywise gap " + fmt(worst) + " over " + std::to_string(runs) +
                                           " injected runs, limit " + fmt(kTrajectoryLimit)};
}

Outcome transition(phaselab::Topology topology, double lo, double hi, double low_bound, double high_bound) {
    phaselab::ScanConfig config;
    config.n = 2000;
    config.steps = 200;
    config.trials = 20;
    config.topology = topology;
    config.eta_grid = phaselab::make_grid(lo, hi, 0.01);
    config.seed = 2026;
    config.threads = default_thread_count();
    const auto report = phaselab::scan_transition(config);
    if (!report.eta0) {
        return {false, "no grid point fell below the threshold"};
    }
    const double eta0 = *report.eta0;
    return {eta0 >= low_bound && eta0 <= high_bound,
            "eta0 = " + fmt(eta0) + ", window [" + fmt(low_bound) + ", " + fmt(high_bound) + "]"};
}

Outcome branching_bound() {
    int flagged = 0;
    uint64_t overflow = 0;
    for (double a : {10.0, 30.0, 100.0}) {
        Rng rng(derive_seed(5, {static_cast<uint64_t>(a)}));
        const auto report = phaselab::branching_tail_check({a, {}, 1000000}, kBranchingSamples, rng);
        flagged += report.violations();
        overflow += report.overflow;
    }
    return {flagged == 0, std::to_string(flagged) + " flagged values across a in {10, 30, 100}, " +
                              std::to_string(overflow) + " overflowed trees"};
}

Outcome mean_field_step() {
    bool ok = true;
    std::string detail;
    uint64_t seed = 40;
    for (double alpha : {0.1, 0.3}) {
        for (double s : {0.6, 0.8}) {
            const auto g = phaselab::measure_growth(kGrowthN, alpha, s, kGrowthRepetitions, seed++);
            const double z = (g.mean_factor - g.predicted) / g.std_error;
            ok = ok && std::abs(z) <= kGrowthSigmas;
            detail += "a=" + fmt(alpha) + ",s=" + fmt(s) + ": " + fmt(g.mean_factor) + " vs " + fmt(g.predicted) +
                      " (z=" + fmt(z) + ") ";
        }
    }
    detail.pop_back();
    return {ok, detail};
}

/// Least-squares slope of y against x.
double slope(const std::vector<double> &x, const std::vector<double> &y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome sequential_cost() {
    const unsigned threads = default_thread_count();
    const int n = 30;
    const double eta = 0.1;
    const uint64_t trials = 500;
    std::vector<double> horizons;
    std::vector<double> entries;
    std::vector<uint64_t> k_counts;
    uint64_t k_samples = 0;
    uint64_t exhausted = 0;
    std::string means;
    for (int horizon : {50, 100, 200}) {
        Rng gen(derive_seed(8, {static_cast<uint64_t>(horizon)}));
        const Medium m = sequential_circuit({n, horizon, eta, {}, {}}, gen);
        const std::vector<int> input(static_cast<std::size_t>(n), 0);
        const OutputSample s = sample_output_distribution(m, m.fault, input, trials, 9, {{}, threads, true});
        exhausted += s.exhausted;
        horizons.push_back(std::log(static_cast<double>(horizon)));
        entries.push_back(std::log(s.mean_entries));
        means += (means.empty() ? "" : ", ") + fmt(s.mean_entries) + " at T=" + std::to_string(horizon);
        if (horizon == 200) {
            for (const CostStats &st : s.trial_stats) {
                for (int k : st.k) {
                    if (k_counts.size() <= static_cast<std::size_t>(k)) {
                        k_counts.resize(static_cast<std::size_t>(k) + 1);
                    }
                    k_counts[static_cast<std::size_t>(k)]++;
                    k_samples++;
                }
            }
        }
    }
    // Tail Pr(K >= j) over the values of j that were observed.
    std::vector<double> js;
    std::vector<double> log_tail;
    uint64_t at_least = k_samples;
    bool monotone = true;
    for (std::size_t j = 0; j < k_counts.size(); j++) {
        if (j > 0 && at_least > 0) {
            const double lt = std::log(static_cast<double>(at_least) / static_cast<double>(k_samples));
            if (!log_tail.empty() && lt >= log_tail.back() && k_counts[j - 1] > 0) {
                monotone = false;
            }
            js.push_back(static_cast<double>(j));
            log_tail.push_back(lt);
        }
        at_least -= k_counts[j];
    }
    const double tail_slope = js.size() >= 2 ? slope(js, log_tail) : 0;
    const double exponent = slope(horizons, entries);
    const bool ok = exhausted == 0 && monotone && tail_slope < 0 && exponent < kCostExponentLimit;
    return {ok, "tail slope " + fmt(tail_slope) + " over K<=" + std::to_string(k_counts.size() - 1) +
                    (monotone ? ", monotone" : ", NOT monotone") + "; cost exponent in T " + fmt(exponent) +
                    " (limit " + fmt(kCostExponentLimit) + "), mean entries " + means + "; exhausted " +
                    std::to_string(exhausted)};
}

Outcome high_decoherence() {
    Rng gen(12);
    const Medium m = random_matching_circuit({40, 100, 0.97, {}, {}}, gen);
    const std::vector<int> input(40, 0);
    const OutputSample s = sample_output_distribution(m, m.fault, input, 100, 13, {{}, default_thread_count(), true});
    int peak = 0;
    for (const CostStats &st : s.trial_stats) {
        peak = std::max(peak, st.peak_cluster());
    }
    const bool ok = s.exhausted == 0 && peak <= kHighEtaClusterLimit && s.mean_entries < kHighEtaEntriesLimit;
    return {ok, "peak cluster " + std::to_string(peak) + " (limit " + std::to_string(kHighEtaClusterLimit) +
                    "), mean entries " + fmt(s.mean_entries) + " (limit " + fmt(kHighEtaEntriesLimit) + ")"};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome reproducibility() {
    const fs::path root = fs::temp_directory_path() / "qdeco_acceptance_repro";
    fs::remove_all(root);
    const std::string ghz = testing::fixture_path("ghz3").string();
    const std::string mixed = testing::fixture_path("mixed_small").string();
    const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
        {"simulate", {"simulate", "--circuit", mixed, "--eta-override", "0.4", "--fault", "x", "--trials", "5000",
                      "--seed", "3"}},
        {"oracle", {"oracle", "--circuit", ghz, "--mode", "pathsum", "--eta-override", "0.2"}},
        {"compare", {"compare", "--circuit", ghz, "--trials", "2000", "--tolerance", "1", "--seed", "4"}},
        {"phase", {"phase-scan", "--n", "400", "--steps", "60", "--trials", "4", "--eta-min", "0.5", "--eta-max",
                   "0.7", "--eta-step", "0.05", "--seed", "6"}},
        {"branching", {"branching-check", "--a", "30", "--samples", "20000", "--seed", "7"}},
        {"generate", {"generate", "--kind", "1d", "--n", "6", "--horizon", "4", "--seed", "8"}},
    };
    int compared = 0;
    for (const auto &[name, base] : commands) {
        std::vector<fs::path> dirs;
        for (const char *threads : {"1", "2"}) {
            std::vector<std::string> args = {"qdeco"};
            args.insert(args.end(), base.begin(), base.end());
            const fs::path dir = root / (name + "_" + threads);
            args.insert(args.end(), {"--out", dir.string()});
            if (name != "branching" && name != "generate") {
                args.insert(args.end(), {"--threads", threads});
            }
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            if (code != cli::kOk) {
                return {false, name + " exited with " + std::to_string(code) + ": " + err.str()};
            }
            dirs.push_back(dir);
        }
        for (const auto &entry : fs::directory_iterator(dirs[0])) {
            const std::string file = entry.path().filename().string();
            if (file == "manifest.json") {
                continue;
            }
            if (slurp(entry.path()) != slurp(dirs[1] / file)) {
                return {false, name + "/" + file + " differs between runs"};
            }
            compared++;
        }
    }
    fs::remove_all(root);
    return {true, std::to_string(compared) + " data files byte-identical across two runs of " +
                      std::to_string(commands.size()) + " commands (1 and 2 threads)"};
}

struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
};

}  // namespace
}  // namespace qdeco

int main(int argc, char **argv) {
    using namespace qdeco;
    const std::vector<Criterion> criteria = {
        {1, "cluster sampler matches exact output distribution", sampler_matches_exact},
        {2, "weak-fault evolution equals fault-path sum", path_sum_identity},
        {3, "tensor of clusters equals conditioned dense trajectory", global_state_equivalence},
        {4, "random-matching transition point",
         [] { return transition(phaselab::Topology::kRandom, 0.50, 0.80, kRandomEtaLow, kRandomEtaHigh); }},
        {5, "1D nearest-neighbour transition point",
         [] { return transition(phaselab::Topology::kLine, 0.35, 0.65, kLineEtaLow, kLineEtaHigh); }},
        {6, "tree-size tail bound", branching_bound},
        {7, "mean-field one-step growth", mean_field_step},
        {8, "sequential medium cost shape", sequential_cost},
        {9, "high-decoherence cluster sizes", high_decoherence},
        {10, "CLI outputs reproducible", reproducibility},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; i++) {
        selected.insert(std::atoi(argv[i]));
    }
    int failures = 0;
    for (const auto &c : criteria) {
        if (!selected.empty() && !selected.contains(c.id)) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << ": " << o.detail
                  << " [" << fmt(seconds) << " s]" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
