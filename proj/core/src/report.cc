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

#include "qdeco/report.h"

#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>

namespace qdeco {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

std::string distribution_json(const Distribution &d) {
    json j = json::object();
    for (const auto &[key, p] : d) {
        j[key] = p;
    }
    return j.dump(2) + "\n";
}

void write_cost_csv(std::ostream &out, const OutputSample &sample) {
    out << "trial,t,K,K_star,max_cluster,entries_written\r\n";
    for (std::size_t trial = 0; trial < sample.trial_stats.size(); trial++) {
        const CostStats &s = sample.trial_stats[trial];
        for (std::size_t t = 0; t < s.k.size(); t++) {
            out << trial << ',' << t << ',' << s.k[t] << ',' << s.k_star[t] << ',' << s.max_cluster[t] << ','
                << s.entries_cumulative[t] << "\r\n";
        }
    }
}

std::string sample_summary_json(const OutputSample &sample) {
    json j;
    j["distribution"] = json::object();
    for (const auto &[key, p] : sample.distribution) {
        j["distribution"][key] = p;
    }
    j["counts"] = json::object();
    for (const auto &[key, c] : sample.counts) {
        j["counts"][key] = c;
    }
    j["mean_entries"] = sample.mean_entries;
    j["max_cluster_histogram"] = json::object();
    for (const auto &[size, c] : sample.max_cluster_histogram) {
        j["max_cluster_histogram"][std::to_string(size)] = c;
    }
    j["trials"] = sample.trials;
    j["completed"] = sample.completed;
    j["exhausted"] = sample.exhausted;
    return j.dump(2) + "\n";
}

void write_phase_csv(std::ostream &out, const phaselab::PhaseScanReport &report) {
    out << "eta,trial,t,max_cluster,n_clusters\r\n";
    for (std::size_t e = 0; e < report.trajectories.size(); e++) {
        const std::string eta = format_double(report.config.eta_grid[e]);
        for (std::size_t r = 0; r < report.trajectories[e].size(); r++) {
            const auto &traj = report.trajectories[e][r];
            for (std::size_t t = 0; t < traj.max_cluster.size(); t++) {
                out << eta << ',' << r << ',' << t << ',' << traj.max_cluster[t] << ',' << traj.num_clusters[t]
                    << "\r\n";
            }
        }
    }
}

std::string phase_summary_json(const phaselab::PhaseScanReport &report) {
    const auto &c = report.config;
    json j;
    j["topology"] = phaselab::topology_name(c.topology);
    j["n"] = c.n;
    j["steps"] = c.steps;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["matching_period"] = c.matching_period;
    j["criterion"] = "median final max-cluster fraction < threshold";
    j["threshold"] = c.threshold;
    j["eta_grid"] = c.eta_grid;
    j["median_final_fraction"] = report.median_final_fraction;
    j["mean_tail_fraction"] = report.mean_tail_fraction;
    std::vector<bool> super(report.supercritical.begin(), report.supercritical.end());
    j["supercritical"] = super;
    j["eta0"] = report.eta0 ? json(*report.eta0) : json(nullptr);
    j["resolution"] = report.resolution;
    return j.dump(2) + "\n";
}

void write_branching_csv(std::ostream &out, const phaselab::BranchingReport &report) {
    out << "i,count,empirical,bound,violated\r\n";
    for (const auto &row : report.rows) {
        out << row.i << ',' << row.count << ',' << format_double(row.empirical) << ',' << format_double(row.bound)
            << ',' << (row.violated ? 1 : 0) << "\r\n";
    }
}

std::string branching_summary_json(const phaselab::BranchingReport &report) {
    json j;
    j["a"] = report.config.a;
    j["pmf"] = report.config.pmf.empty() ? json("geometric") : json(report.config.pmf);
    j["tree_cap"] = report.config.tree_cap;
    j["samples"] = report.samples;
    j["overflow"] = report.overflow;
    j["violations"] = report.violations();
    j["observed_values"] = report.rows.size();
    return j.dump(2) + "\n";
}

}  // namespace qdeco
