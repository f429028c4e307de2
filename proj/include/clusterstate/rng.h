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

#pragma once

#include <cstdint>
#include <random>

namespace clusterstate {

std::uint64_t splitmix64(std::uint64_t x);

/// Private random stream of one Monte Carlo trial.
///
/// Streams are keyed by (master_seed, trial_index) so that a trial draws the
/// same numbers no matter which thread runs it or in which order.
class RngStream {
   public:
    RngStream(std::uint64_t master_seed, std::uint64_t trial_index);
    explicit RngStream(std::uint64_t seed) : RngStream(seed, 0) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    bool bernoulli(double p);
    /// Failures before the first success of Bernoulli(p) trials. Saturates at UINT64_MAX.
    std::uint64_t geometric_failures(double p);
    std::uint64_t binomial(std::uint64_t trials, double p);
    std::uint64_t next_u64() { return engine_(); }

   private:
    std::mt19937_64 engine_;
};

/// One CPF gate attempt: succeeds with probability p.
inline bool attempt_cpf(RngStream &rng, double p) {
    return rng.bernoulli(p);
}

}  // namespace clusterstate
