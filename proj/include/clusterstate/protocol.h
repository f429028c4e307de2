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
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clusterstate/graph.h"
#include "clusterstate/layout.h"
#include "clusterstate/rng.h"
#include "clusterstate/tableau.h"

namespace clusterstate {

/// How the two inputs of a merge are timed.
///
/// Mirrored: the second input replays the first one's realization, so a
/// merge costs T_prev time and 2 M_prev attempts, which is exactly the
/// expected-value recursion for restart-on-failure doubling and splicing.
/// Independent: both inputs are sampled separately and the merge waits for
/// the slower one (max of the two).
enum class SubchainTiming : std::uint8_t { Mirrored, Independent };

const char *timing_name(SubchainTiming t);
SubchainTiming parse_timing(const std::string &s);

struct AttemptCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProtocolParams {
    double p = 0.5;
    double t_a = 1;
    double epsilon = 0.1;
    std::uint64_t master_seed = 0;
    OutcomePolicy outcome;
    SubchainTiming timing = SubchainTiming::Mirrored;
    std::uint64_t attempt_cap = std::uint64_t{1} << 62;
    bool topology = false;  // maintain explicit graphs alongside the counts

    void validate() const;
};

struct StageCost {
    std::string stage;
    std::uint64_t attempts = 0;
    std::uint64_t time_units = 0;  // critical-path attempts; multiply by t_a for time
    std::int64_t length = 0;
    bool success = true;
};

struct SimTrace {
    std::uint64_t attempts = 0;
    std::uint64_t time_units = 0;
    bool succeeded = true;
    std::optional<Graph> final_graph;
    std::vector<StageCost> stage_breakdown;

    double time(double t_a) const { return static_cast<double>(time_units) * t_a; }
};

/// Explicit armed chain: main vertices in order, and the (inner, outer) arm of
/// every armed main vertex.
struct ChainTopology {
    Graph graph;
    std::deque<VertexId> main;
    std::map<VertexId, std::pair<VertexId, VertexId>> arms;

    ChainTopology shifted(VertexId offset) const;
};

struct ChainState {
    std::int64_t main_length = 0;
    bool armed_first = true;  // v_1 carries an arm; arms alternate from there
    std::optional<ChainTopology> topology;

    bool armed_at(std::int64_t k) const { return ((k % 2) == 0) == armed_first; }  // 0-based
    bool armed_last() const { return main_length > 0 && armed_at(main_length - 1); }
    std::int64_t armed_count() const {
        return armed_first ? (main_length + 1) / 2 : main_length / 2;
    }
};

/// Restart-on-failure doubling up to level i (2^{i+1} qubits: main length 2^i
/// with 2^{i-1} arms for i >= 1; a two-qubit chain for i = 0).
SimTrace sim_small_chain(int level, const ProtocolParams &params, RngStream &rng);
std::pair<ChainState, SimTrace> sim_small_chain_state(int level, const ProtocolParams &params, RngStream &rng);

/// Joins the end of `a` to the start of `b`; each failed attempt costs two
/// main qubits (and their arms) from both chains.
std::pair<ChainState, SimTrace> sim_splice(ChainState a, ChainState b, const ProtocolParams &params,
                                           RngStream &rng);

/// Armed chain of main length n: doubling to the seed length, then splicing
/// rounds until the length reaches n, then trimming the surplus.
std::pair<ChainState, SimTrace> sim_build_chain(std::int64_t n, const ProtocolParams &params, RngStream &rng);

/// Chain of main length 2 n_l reduced to a star with n_l two-qubit arms.
std::pair<Graph, SimTrace> sim_build_star(std::int64_t n_l, const ProtocolParams &params, RngStream &rng);

struct AssembleOptions {
    std::optional<std::int64_t> arms;  // override n_l; must be a positive multiple of the max degree
};

struct AssemblyResult {
    SimTrace trace;
    bool success = false;
    std::int64_t arms = 0;              // n_l per unit
    std::int64_t attempts_per_pair = 0;  // n_l / d
    std::size_t pairs = 0;
    std::size_t pairs_connected = 0;
    std::optional<Graph> graph;      // full graph (topology mode)
    std::optional<Graph> site_view;  // centers relabeled to site ids (topology mode)
};

/// n_l used by sim_assemble: the override, or arms_required for the layout.
std::int64_t assembly_arms(const LayoutSpec &layout, const ProtocolParams &params, const AssembleOptions &options = {});

AssemblyResult sim_assemble(const LayoutSpec &layout, const ProtocolParams &params, RngStream &rng,
                            const AssembleOptions &options = {});

namespace reference {

/// Attempt-by-attempt versions of the sampled shortcuts, for testing.
SimTrace small_chain_stepwise(int level, const ProtocolParams &params, RngStream &rng);
std::pair<ChainState, SimTrace> splice_stepwise(ChainState a, ChainState b, const ProtocolParams &params,
                                                RngStream &rng);

}  // namespace reference

}  // namespace clusterstate
