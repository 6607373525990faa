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

#ifndef QDECO_RNG_H_
#define QDECO_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace qdeco {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a root seed and a path of
/// indices, e.g. derive_seed(seed, {eta_index, trial}).
constexpr uint64_t derive_seed(uint64_t seed, std::initializer_list<uint64_t> path) {
    uint64_t h = splitmix64(seed);
    for (uint64_t p : path) {
        h = splitmix64(h ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

/// Random source used throughout. Wraps mt19937_64 with distribution code
/// written out explicitly, so draws are identical across standard libraries.
class Rng {
   public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed) : engine_(seed) {}
    static Rng derived(uint64_t seed, std::initializer_list<uint64_t> path) { return Rng(derive_seed(seed, path)); }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// True with probability p. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n) by rejection; n must be > 0.
    uint64_t below(uint64_t n) {
        const uint64_t limit = max() - max() % n;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace qdeco

#endif
