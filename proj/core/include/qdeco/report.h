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

#ifndef QDECO_REPORT_H_
#define QDECO_REPORT_H_

#include <ostream>
#include <string>

#include "qdeco/clustersim.h"
#include "qdeco/distribution.h"
#include "qdeco/phaselab.h"

namespace qdeco {

/// {"bitstring": probability, ...} with sorted keys.
std::string distribution_json(const Distribution &d);

/// trial,t,K,K_star,max_cluster,entries_written (cumulative per trial).
void write_cost_csv(std::ostream &out, const OutputSample &sample);

/// {distribution, mean_entries, max_cluster_histogram, trials, completed,
/// exhausted}.
std::string sample_summary_json(const OutputSample &sample);

/// eta,trial,t,max_cluster,n_clusters.
void write_phase_csv(std::ostream &out, const phaselab::PhaseScanReport &report);
std::string phase_summary_json(const phaselab::PhaseScanReport &report);

/// i,count,empirical,bound,violated.
void write_branching_csv(std::ostream &out, const phaselab::BranchingReport &report);
std::string branching_summary_json(const phaselab::BranchingReport &report);

/// Shortest decimal text that reads back as the same double.
std::string format_double(double value);

}  // namespace qdeco

#endif
