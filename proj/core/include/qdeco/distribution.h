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

#ifndef QDECO_DISTRIBUTION_H_
#define QDECO_DISTRIBUTION_H_

#include <map>
#include <span>
#include <string>

#include "qdeco/density_matrix.h"

namespace qdeco {

/// Bitstring -> probability. Character i is the bit of the i-th result qubit.
using Distribution = std::map<std::string, double>;

/// Half the L1 distance over the union of supports.
double tv_distance(const Distribution &a, const Distribution &b);

double total_probability(const Distribution &d);

/// Computational-basis distribution of the given positions of rho (in that
/// order), from the diagonal. Strings with zero probability are omitted.
Distribution marginal_distribution(const DensityMatrix &rho, std::span<const int> positions);

}  // namespace qdeco

#endif
