// Copyright 2026 The clusterstate Authors
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

#include "clusterstate/rng.h"

#include <cmath>
#include <limits>

namespace clusterstate {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t trial_index)
    : engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(trial_index + 0x632be59bd9b4e019ULL))) {
}

double RngStream::uniform() {
    return double(engine_() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(double p) {
    return uniform() < p;
}

std::uint64_t RngStream::geometric_failures(double p) {
    if (p >= 1.0) {
        return 0;
    }
    // Inversion: P(G >= k) = (1-p)^k.
    double u = uniform();
    double g = std::floor(std::log1p(-u) / std::log1p(-p));
    if (!(g < 1.8e19)) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return std::uint64_t(g);
}

std::uint64_t RngStream::binomial(std::uint64_t trials, double p) {
    if (trials == 0 || p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return trials;
    }
    std::binomial_distribution<std::uint64_t> dist(trials, p);
    return dist(engine_);
}

}  // namespace clusterstate
