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

#include "cli.h"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qdeco/circuit_json.h"
#include "qdeco/clustersim.h"
#include "qdeco/generators.h"
#include "qdeco/oracle.h"
#include "qdeco/parallel.h"
#include "qdeco/phaselab.h"
#include "qdeco/report.h"

namespace qdeco::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char *kExitCodes =
    "Exit codes: 0 ok, 1 usage or input error, 2 resource limit (cluster cap), 3 check failed.";

/// Raised for bad flag combinations found after parsing.
class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct CircuitArgs {
    std::string circuit;
    std::string fault = "circuit";
    std::string input;
    double eta_override = -1;
};

void add_circuit_args(CLI::App *cmd, CircuitArgs &a) {
    cmd->add_option("--circuit", a.circuit, "Circuit JSON file")->required();
    cmd->add_option("--fault", a.fault, "Fault basis: z, x, circuit, or a file with a 2x2 hermitian matrix");
    cmd->add_option("--input", a.input, "Input bits, one per qubit (default all zeros)");
    cmd->add_option("--eta-override", a.eta_override, "Replace the circuit's decoherence rate")
        ->check(CLI::Range(0.0, 1.0));
}

struct LoadedCircuit {
    Medium medium;
    FaultSpec fault;
    std::vector<int> input;
};

LoadedCircuit load(const CircuitArgs &a) {
    LoadedCircuit c;
    c.medium = load_circuit_file(a.circuit);
    if (a.eta_override >= 0) {
        c.medium.eta = a.eta_override;
    }
    if (a.fault == "circuit") {
        c.fault = c.medium.fault;
    } else if (a.fault == "z" || a.fault == "Z") {
        c.fault = FaultSpec::z();
    } else if (a.fault == "x" || a.fault == "X") {
        c.fault = FaultSpec::x();
    } else {
        std::ifstream in(a.fault);
        if (!in) {
            throw UsageError("cannot open fault matrix file '" + a.fault + "'");
        }
        std::stringstream text;
        text << in.rdbuf();
        const ComplexMatrix m = parse_matrix_json(text.str());
        if (m.rows() != 2 || m.cols() != 2) {
            throw UsageError("fault matrix in '" + a.fault + "' must be 2x2");
        }
        c.fault = FaultSpec{Observable::from_hermitian(m)};
    }
    if (a.input.empty()) {
        c.input.assign(static_cast<std::size_t>(c.medium.num_qubits), 0);
    } else {
        c.input = parse_bits(a.input);
        if (c.input.size() != static_cast<std::size_t>(c.medium.num_qubits)) {
            throw UsageError(
                "--input has " + std::to_string(c.input.size()) + " bits but the circuit has " +
                std::to_string(c.medium.num_qubits) + " qubits");
        }
    }
    return c;
}

std::string bits_string(std::span<const int> bits) {
    std::string s;
    for (int b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << text;
}

/// Every option of the subcommand with its effective value, so the manifest
/// alone is enough to rerun the command.
json collect_parameters(const CLI::App *cmd) {
    json params = json::object();
    for (const CLI::Option *opt : cmd->get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name.empty()) {
            continue;
        }
        if (opt->count() > 0) {
            const auto results = opt->reduced_results();
            params[name] = results.size() == 1 ? json(results.front()) : json(results);
        } else {
            params[name] = opt->get_default_str();
        }
    }
    return params;
}

class RunRecord {
   public:
    RunRecord(const CLI::App *cmd, std::string dir)
        : cmd_(cmd), dir_(std::move(dir)), start_(std::chrono::steady_clock::now()) {
        if (!dir_.empty()) {
            fs::create_directories(dir_);
        }
    }

    bool enabled() const { return !dir_.empty(); }

    void write(const std::string &name, const std::string &text) {
        write_text(fs::path(dir_) / name, text);
        outputs_.push_back(name);
    }

    void finish(uint64_t seed) {
        if (!enabled()) {
            return;
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json manifest;
        manifest["command"] = cmd_->get_name();
        manifest["parameters"] = collect_parameters(cmd_);
        manifest["seed"] = seed;
        manifest["version"] = QDECO_VERSION;
        manifest["duration_seconds"] = seconds;
        manifest["outputs"] = outputs_;
        write_text(fs::path(dir_) / "manifest.json", manifest.dump(2) + "\n");
    }

   private:
    const CLI::App *cmd_;
    std::string dir_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> outputs_;
};

void print_distribution(std::ostream &out, const Distribution &d) {
    for (const auto &[key, p] : d) {
        out << "  " << key << "  " << format_double(p) << "\n";
    }
}

int cmd_simulate(const CLI::App *cmd, const CircuitArgs &ca, uint64_t trials, uint64_t seed, int cap,
                 unsigned threads, const std::string &out_dir, std::ostream &out, std::ostream &err) {
    if (trials < 1) {
        throw UsageError("--trials must be at least 1");
    }
    const LoadedCircuit c = load(ca);
    RunRecord record(cmd, out_dir);
    SampleOptions opts{{cap}, threads, true};
    const OutputSample sample = sample_output_distribution(c.medium, c.fault, c.input, trials, seed, opts);
    if (record.enabled()) {
        record.write("distribution.json", sample_summary_json(sample));
        std::ostringstream csv;
        write_cost_csv(csv, sample);
        record.write("cost.csv", csv.str());
    }
    record.finish(seed);
    out << "completed " << sample.completed << " of " << sample.trials << " trials; mean entries written "
        << format_double(sample.mean_entries) << "\n";
    print_distribution(out, sample.distribution);
    if (sample.exhausted > 0) {
        err << sample.exhausted << " trial(s) exceeded the cluster cap of " << cap
            << "; partial stats are in the cost CSV\n";
        return kResource;
    }
    return kOk;
}

int cmd_oracle(const CLI::App *cmd, const CircuitArgs &ca, const std::string &mode, int dense_cap,
               unsigned threads, const std::string &out_dir, std::ostream &out) {
    const LoadedCircuit c = load(ca);
    OracleOptions opts;
    opts.dense_cap = dense_cap;
    opts.threads = threads;
    RunRecord record(cmd, out_dir);
    DenseState state;
    if (mode == "exact") {
        state = evolve_exact(c.medium, c.fault, c.input, opts);
    } else {
        state = path_sum_exact(c.medium, c.fault, c.input, opts);
    }
    const Distribution d = result_distribution(c.medium, state);
    if (record.enabled()) {
        record.write("distribution.json", distribution_json(d));
    }
    record.finish(0);
    print_distribution(out, d);
    return kOk;
}

int cmd_compare(const CLI::App *cmd, const CircuitArgs &ca, uint64_t trials, uint64_t seed, double tolerance,
                int cap, unsigned threads, const std::string &out_dir, std::ostream &out, std::ostream &err) {
    if (trials < 1) {
        throw UsageError("--trials must be at least 1");
    }
    const LoadedCircuit c = load(ca);
    RunRecord record(cmd, out_dir);
    const Distribution exact = output_distribution_exact(c.medium, c.fault, c.input);
    const OutputSample sample =
        sample_output_distribution(c.medium, c.fault, c.input, trials, seed, {{cap}, threads, false});
    if (sample.exhausted > 0) {
        err << sample.exhausted << " trial(s) exceeded the cluster cap of " << cap << "\n";
        record.finish(seed);
        return kResource;
    }
    const double tv = tv_distance(exact, sample.distribution);
    const bool passed = tv <= tolerance;
    if (record.enabled()) {
        json j;
        j["tv_distance"] = tv;
        j["tolerance"] = tolerance;
        j["passed"] = passed;
        j["trials"] = trials;
        j["exact"] = exact;
        j["sampled"] = sample.distribution;
        record.write("comparison.json", j.dump(2) + "\n");
    }
    record.finish(seed);
    out << "tv_distance " << format_double(tv) << " (tolerance " << format_double(tolerance) << "): "
        << (passed ? "ok" : "FAILED") << "\n";
    return passed ? kOk : kAssertionFailed;
}

int cmd_phase_scan(const CLI::App *cmd, phaselab::ScanConfig config, const std::string &topology, double eta_min,
                   double eta_max, double eta_step, const std::string &out_dir, std::ostream &out) {
    config.topology = phaselab::parse_topology(topology);
    if (eta_min > eta_max) {
        throw UsageError("--eta-min must not exceed --eta-max");
    }
    if (config.n < 2 || config.steps < 1 || config.trials < 1) {
        throw UsageError("need --n >= 2, --steps >= 1 and --trials >= 1");
    }
    config.eta_grid = phaselab::make_grid(eta_min, eta_max, eta_step);
    RunRecord record(cmd, out_dir);
    const phaselab::PhaseScanReport report = phaselab::scan_transition(config);
    if (record.enabled()) {
        std::ostringstream csv;
        write_phase_csv(csv, report);
        record.write("phase.csv", csv.str());
        record.write("phase_summary.json", phase_summary_json(report));
    }
    record.finish(config.seed);
    for (std::size_t e = 0; e < config.eta_grid.size(); e++) {
        out << "  eta " << format_double(config.eta_grid[e]) << "  median max-cluster fraction "
            << format_double(report.median_final_fraction[e]) << "\n";
    }
    if (report.eta0) {
        out << "eta0 " << format_double(*report.eta0) << " (grid step " << format_double(report.resolution)
            << ", threshold " << format_double(config.threshold) << ")\n";
    } else {
        out << "eta0 not found: every grid point is supercritical\n";
    }
    return kOk;
}

int cmd_branching(const CLI::App *cmd, const phaselab::BranchingConfig &config, uint64_t samples, uint64_t seed,
                  const std::string &out_dir, std::ostream &out) {
    phaselab::validate(config);
    if (samples < 1) {
        throw UsageError("--samples must be at least 1");
    }
    RunRecord record(cmd, out_dir);
    Rng rng(derive_seed(seed, {}));
    const phaselab::BranchingReport report = phaselab::branching_tail_check(config, samples, rng);
    if (record.enabled()) {
        std::ostringstream csv;
        write_branching_csv(csv, report);
        record.write("branching.csv", csv.str());
        record.write("branching.json", branching_summary_json(report));
    }
    record.finish(seed);
    out << report.rows.size() << " values of L observed, " << report.overflow << " overflow, "
        << report.violations() << " flagged\n";
    return report.violations() == 0 ? kOk : kAssertionFailed;
}

int cmd_generate(const CLI::App *cmd, const std::string &kind, GeneratorOptions opts, uint64_t seed,
                 const std::string &out_dir, std::ostream &out) {
    Rng rng(derive_seed(seed, {}));
    Medium m;
    if (kind == "random") {
        m = random_matching_circuit(opts, rng);
    } else if (kind == "1d") {
        m = nearest_neighbor_circuit(opts, rng);
    } else if (kind == "sequential") {
        m = sequential_circuit(opts, rng);
    } else {
        throw UsageError("unknown generator '" + kind + "' (expected random, 1d or sequential)");
    }
    RunRecord record(cmd, out_dir);
    record.write("circuit.json", to_circuit_json(m));
    record.finish(seed);
    out << "wrote " << (fs::path(out_dir) / "circuit.json").string() << " with " << m.gates.size() << " gates\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulation of noisy quantum circuits with decoherence-split clusters", "qdeco"};
    app.footer(kExitCodes);
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.set_version_flag("--version", std::string(QDECO_VERSION));

    const unsigned default_threads = default_thread_count();

    CircuitArgs sim_circuit;
    uint64_t sim_trials = 10000;
    uint64_t sim_seed = 1;
    int sim_cap = kDefaultClusterCap;
    unsigned sim_threads = default_threads;
    std::string sim_out;
    CLI::App *simulate = app.add_subcommand("simulate", "Sample output strings with the cluster simulation");
    add_circuit_args(simulate, sim_circuit);
    simulate->add_option("--trials", sim_trials, "Number of trials");
    simulate->add_option("--seed", sim_seed, "Root seed");
    simulate->add_option("--cluster-cap", sim_cap, "Largest cluster allowed")->check(CLI::Range(1, 30));
    simulate->add_option("--threads", sim_threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    simulate->add_option("--out", sim_out, "Output directory")->required();

    CircuitArgs or_circuit;
    std::string or_mode = "exact";
    int or_cap = 12;
    unsigned or_threads = default_threads;
    std::string or_out;
    CLI::App *oracle = app.add_subcommand("oracle", "Exact output distribution from dense evolution");
    add_circuit_args(oracle, or_circuit);
    oracle->add_option("--mode", or_mode, "exact (weak faults) or pathsum (all fault paths)")
        ->check(CLI::IsMember({"exact", "pathsum"}));
    oracle->add_option("--dense-cap", or_cap, "Largest qubit count for dense matrices");
    oracle->add_option("--threads", or_threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    oracle->add_option("--out", or_out, "Output directory")->required();

    CircuitArgs cmp_circuit;
    uint64_t cmp_trials = 100000;
    uint64_t cmp_seed = 1;
    double cmp_tol = 0.01;
    int cmp_cap = kDefaultClusterCap;
    unsigned cmp_threads = default_threads;
    std::string cmp_out;
    CLI::App *compare = app.add_subcommand("compare", "Total-variation distance between sampler and oracle");
    add_circuit_args(compare, cmp_circuit);
    compare->add_option("--trials", cmp_trials, "Number of trials");
    compare->add_option("--seed", cmp_seed, "Root seed");
    compare->add_option("--tolerance", cmp_tol, "Largest acceptable distance");
    compare->add_option("--cluster-cap", cmp_cap, "Largest cluster allowed")->check(CLI::Range(1, 30));
    compare->add_option("--threads", cmp_threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    compare->add_option("--out", cmp_out, "Output directory (optional)");

    phaselab::ScanConfig scan;
    scan.threads = default_threads;
    std::string scan_topology = "random";
    double eta_min = -1;
    double eta_max = -1;
    double eta_step = 0.01;
    std::string scan_out;
    CLI::App *phase = app.add_subcommand("phase-scan", "Locate the giant-cluster transition");
    phase->add_option("--topology", scan_topology, "random or 1d")->check(CLI::IsMember({"random", "1d"}));
    phase->add_option("--n", scan.n, "Number of sites");
    phase->add_option("--steps", scan.steps, "Steps per run");
    phase->add_option("--eta-min", eta_min, "Grid start (default 0.50 random, 0.35 1d)");
    phase->add_option("--eta-max", eta_max, "Grid end (default 0.80 random, 0.65 1d)");
    phase->add_option("--eta-step", eta_step, "Grid step");
    phase->add_option("--trials", scan.trials, "Trials per grid point");
    phase->add_option("--seed", scan.seed, "Root seed");
    phase->add_option("--threshold", scan.threshold, "Median max-cluster fraction marking the subcritical side");
    phase->add_option("--matching-period", scan.matching_period, "Steps between matchings");
    phase->add_option("--threads", scan.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    phase->add_option("--out", scan_out, "Output directory")->required();

    phaselab::BranchingConfig branching;
    uint64_t br_samples = 1000000;
    uint64_t br_seed = 1;
    std::string br_out;
    CLI::App *branch = app.add_subcommand("branching-check", "Monte Carlo check of the tree-size tail bound");
    branch->add_option("--a", branching.a, "Tail base, must exceed 8");
    branch->add_option("--samples", br_samples, "Tree pairs to sample");
    branch->add_option("--tree-cap", branching.tree_cap, "Largest tree simulated before overflow");
    branch->add_option("--seed", br_seed, "Root seed");
    branch->add_option("--out", br_out, "Output directory")->required();

    GeneratorOptions gen;
    std::string gen_kind = "random";
    uint64_t gen_seed = 1;
    std::string gen_out;
    CLI::App *generate = app.add_subcommand("generate", "Write a generated circuit");
    generate->add_option("--kind", gen_kind, "random, 1d or sequential");
    generate->add_option("--n", gen.num_qubits, "Number of qubits");
    generate->add_option("--horizon", gen.horizon, "Last time step");
    generate->add_option("--eta", gen.eta, "Decoherence rate")->check(CLI::Range(0.0, 1.0));
    generate->add_option("--seed", gen_seed, "Root seed");
    generate->add_option("--out", gen_out, "Output directory")->required();

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (simulate->parsed()) {
            return cmd_simulate(simulate, sim_circuit, sim_trials, sim_seed, sim_cap, sim_threads, sim_out, out, err);
        }
        if (oracle->parsed()) {
            return cmd_oracle(oracle, or_circuit, or_mode, or_cap, or_threads, or_out, out);
        }
        if (compare->parsed()) {
            return cmd_compare(compare, cmp_circuit, cmp_trials, cmp_seed, cmp_tol, cmp_cap, cmp_threads, cmp_out,
                               out, err);
        }
        if (phase->parsed()) {
            const bool line = scan_topology == "1d";
            if (eta_min < 0) {
                eta_min = line ? 0.35 : 0.50;
            }
            if (eta_max < 0) {
                eta_max = line ? 0.65 : 0.80;
            }
            return cmd_phase_scan(phase, scan, scan_topology, eta_min, eta_max, eta_step, scan_out, out);
        }
        if (branch->parsed()) {
            return cmd_branching(branch, branching, br_samples, br_seed, br_out, out);
        }
        if (generate->parsed()) {
            return cmd_generate(generate, gen_kind, gen, gen_seed, gen_out, out);
        }
    } catch (const ClusterCapExceeded &e) {
        err << "error: " << e.what() << "\n";
        return kResource;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace qdeco::cli
