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

#include "clusterstate/protocol.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "clusterstate/analytics.h"

namespace clusterstate {

const char *timing_name(SubchainTiming t) {
    return t == SubchainTiming::Mirrored ? "mirrored" : "independent";
}

SubchainTiming parse_timing(const std::string &s) {
    if (s == "mirrored") {
        return SubchainTiming::Mirrored;
    }
    if (s == "independent") {
        return SubchainTiming::Independent;
    }
    throw std::invalid_argument("unknown timing model '" + s + "' (expected mirrored|independent)");
}

void ProtocolParams::validate() const {
    std::ostringstream os;
    if (!(p > 0) || p > 1) {
        os << "p must lie in (0, 1], got " << p;
    } else if (!(t_a > 0) || !std::isfinite(t_a)) {
        os << "t_a must be positive, got " << t_a;
    } else if (!(epsilon > 0) || !(epsilon < 1)) {
        os << "epsilon must lie in (0, 1), got " << epsilon;
    } else if (attempt_cap == 0) {
        os << "attempt cap must be positive";
    } else {
        return;
    }
    throw DomainError(os.str());
}

ChainTopology ChainTopology::shifted(VertexId offset) const {
    ChainTopology out;
    out.graph = graph.shifted(offset);
    for (auto v : main) {
        out.main.push_back(v + offset);
    }
    for (const auto &[v, arm] : arms) {
        out.arms[v + offset] = {arm.first + offset, arm.second + offset};
    }
    return out;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t checked(u128 v, std::uint64_t cap, const char *what) {
    if (v > cap) {
        throw AttemptCapExceeded(std::string(what) + ": attempt cap exceeded");
    }
    return static_cast<std::uint64_t>(v);
}

std::int64_t level_length(int s) {
    return s == 0 ? 2 : std::int64_t{1} << s;
}

// Per-level attempts and critical-path time of one doubling run.
struct LevelCosts {
    std::vector<std::uint64_t> attempts;
    std::vector<std::uint64_t> time;

    std::uint64_t total_attempts() const {
        std::uint64_t t = 0;
        for (auto a : attempts) {
            t += a;
        }
        return t;
    }
    std::uint64_t total_time() const {
        std::uint64_t t = 0;
        for (auto a : time) {
            t += a;
        }
        return t;
    }
};

// Mirrored doubling to level i, sampled in O(i) draws. The run finishes at the
// first streak of i+1 consecutive successes (one per level); every broken
// streak of j successes is a restart that had reached level j. A_s counts the
// level-s attempts along the final realization, and each of them sits on top
// of 2^{i-s} mirrored copies.
LevelCosts sample_mirrored(int i, double p, std::uint64_t cap, RngStream &rng) {
    LevelCosts out;
    out.attempts.assign(static_cast<std::size_t>(i) + 1, 0);
    out.time.assign(static_cast<std::size_t>(i) + 1, 0);
    std::vector<std::uint64_t> broken(static_cast<std::size_t>(i) + 1, 0);
    if (p < 1) {
        double streak = std::pow(p, i + 1);
        if (!(streak > 0)) {
            throw AttemptCapExceeded("small chain: success streak probability underflows");
        }
        std::uint64_t restarts = rng.geometric_failures(streak);
        if (restarts == std::numeric_limits<std::uint64_t>::max()) {
            throw AttemptCapExceeded("small chain: restart count saturated");
        }
        std::uint64_t left = restarts;
        for (int j = 0; j < i && left > 0; ++j) {
            // P(broken after j successes | broken after >= j successes)
            double cond = (1 - p) / (1 - std::pow(p, i + 1 - j));
            broken[static_cast<std::size_t>(j)] = rng.binomial(left, std::min(1.0, cond));
            left -= broken[static_cast<std::size_t>(j)];
        }
        broken[static_cast<std::size_t>(i)] += left;
    }
    u128 total = 0;
    std::uint64_t suffix = 0;
    for (int s = i; s >= 0; --s) {
        suffix += broken[static_cast<std::size_t>(s)];
        u128 a_s = u128{suffix} + 1;
        u128 weighted = a_s << (i - s);
        total += weighted;
        out.time[static_cast<std::size_t>(s)] = checked(a_s, cap, "small chain");
        out.attempts[static_cast<std::size_t>(s)] = checked(weighted, cap, "small chain");
    }
    checked(total, cap, "small chain");
    return out;
}

// Attempt-by-attempt doubling; `mirrored` replays one input instead of sampling two.
LevelCosts stepwise(int i, double p, bool mirrored, std::uint64_t cap, RngStream &rng, u128 &spent) {
    LevelCosts out;
    out.attempts.assign(static_cast<std::size_t>(i) + 1, 0);
    out.time.assign(static_cast<std::size_t>(i) + 1, 0);
    auto top = static_cast<std::size_t>(i);
    for (;;) {
        if (i > 0) {
            LevelCosts a = stepwise(i - 1, p, mirrored, cap, rng, spent);
            LevelCosts b = mirrored ? a : stepwise(i - 1, p, mirrored, cap, rng, spent);
            const LevelCosts &slow = a.total_time() >= b.total_time() ? a : b;
            for (std::size_t s = 0; s < top; ++s) {
                out.attempts[s] += a.attempts[s] + b.attempts[s];
                out.time[s] += slow.time[s];
            }
            if (mirrored) {
                spent += a.total_attempts();  // the replayed copy
            }
        }
        out.attempts[top] += 1;
        out.time[top] += 1;
        checked(++spent, cap, "small chain");
        if (rng.bernoulli(p)) {
            return out;
        }
    }
}

std::vector<StageCost> level_stages(const LevelCosts &c) {
    std::vector<StageCost> stages;
    for (std::size_t s = 0; s < c.attempts.size(); ++s) {
        stages.push_back(
            {"level-" + std::to_string(s), c.attempts[s], c.time[s], level_length(static_cast<int>(s)), true});
    }
    return stages;
}

SimTrace trace_from(const LevelCosts &c) {
    SimTrace t;
    t.attempts = c.total_attempts();
    t.time_units = c.total_time();
    t.stage_breakdown = level_stages(c);
    return t;
}

ChainTopology armed_chain_topology(int level, VertexId first_id) {
    ChainTopology t;
    if (level == 0) {
        t.graph.add_vertex(first_id, Role::MainChain);
        t.graph.add_vertex(first_id + 1, Role::MainChain);
        t.graph.add_edge(first_id, first_id + 1);
        t.main = {first_id, first_id + 1};
        return t;
    }
    std::size_t arms = std::size_t{1} << (level - 1);
    t.graph = build_armed_chain(arms, first_id);
    VertexId main_len = 2 * arms;
    for (VertexId k = 0; k < main_len; ++k) {
        t.main.push_back(first_id + k);
    }
    for (VertexId m = 0; m < arms; ++m) {
        VertexId inner = first_id + main_len + 2 * m;
        t.arms[first_id + 2 * m] = {inner, inner + 1};
    }
    return t;
}

void remove_main(ChainTopology &t, VertexId v) {
    t.graph.measure_z_in_place(v);
    auto it = t.arms.find(v);
    if (it != t.arms.end()) {
        t.graph.measure_z_in_place(it->second.first);
        t.graph.measure_z_in_place(it->second.second);
        t.arms.erase(it);
    }
}

void drop_back(ChainState &c) {
    if (c.topology) {
        remove_main(*c.topology, c.topology->main.back());
        c.topology->main.pop_back();
    }
    --c.main_length;
}

void drop_front(ChainState &c) {
    if (c.topology) {
        remove_main(*c.topology, c.topology->main.front());
        c.topology->main.pop_front();
    }
    --c.main_length;
    c.armed_first = !c.armed_first;
}

void trim_to(ChainState &c, std::int64_t n) {
    while (c.main_length > n) {
        drop_back(c);
    }
    if (c.topology) {
        c.topology->graph = c.topology->graph.active_subgraph();
    }
}

struct SpliceOutcome {
    bool success = false;
    std::uint64_t attempts = 0;
};

// Keeps arms alternating across the junction: a's last and b's first must differ.
void align_junction(ChainState &a, const ChainState &b) {
    if (a.main_length > 1 && b.main_length > 0 && a.armed_last() == b.armed_first) {
        drop_back(a);
    }
}

void remove_pair_ends(ChainState &a, ChainState &b) {
    for (int k = 0; k < 2; ++k) {
        if (a.main_length > 0) {
            drop_back(a);
        }
        if (b.main_length > 0) {
            drop_front(b);
        }
    }
}

void join(ChainState &a, ChainState &&b) {
    if (a.topology && b.topology) {
        VertexId left = a.topology->main.back();
        VertexId right = b.topology->main.front();
        a.topology->graph.absorb(b.topology->graph);
        a.topology->graph.toggle_edge_in_place(left, right);
        for (auto v : b.topology->main) {
            a.topology->main.push_back(v);
        }
        a.topology->arms.merge(b.topology->arms);
    }
    a.main_length += b.main_length;
}

// Sequential attempts on the pair; `a` becomes the merged chain on success.
SpliceOutcome splice_into(ChainState &a, ChainState &&b, double p, RngStream &rng, bool stepwise_draws) {
    if (a.main_length <= 0 || b.main_length <= 0) {
        throw PreconditionError("splice: both chains must be non-empty");
    }
    if (a.topology.has_value() != b.topology.has_value()) {
        throw PreconditionError("splice: chains must both carry or both omit topology");
    }
    align_junction(a, b);
    SpliceOutcome out;
    if (stepwise_draws) {
        while (a.main_length > 0 && b.main_length > 0) {
            ++out.attempts;
            if (rng.bernoulli(p)) {
                out.success = true;
                break;
            }
            remove_pair_ends(a, b);
        }
    } else {
        // Attempt k (1-based) needs both chains still non-empty after k-1 failures.
        auto room = static_cast<std::uint64_t>((std::min(a.main_length, b.main_length) + 1) / 2);
        std::uint64_t failures = rng.geometric_failures(p);
        std::uint64_t lost = std::min(failures, room);
        for (std::uint64_t k = 0; k < lost; ++k) {
            remove_pair_ends(a, b);
        }
        out.success = failures < room;
        out.attempts = out.success ? failures + 1 : room;
    }
    if (out.success) {
        join(a, std::move(b));
    } else {
        trim_to(a, 0);
        trim_to(b, 0);
    }
    return out;
}

std::pair<ChainState, SimTrace> splice_pair(ChainState a, ChainState b, const ProtocolParams &params,
                                            RngStream &rng, bool stepwise_draws) {
    params.validate();
    auto out = splice_into(a, std::move(b), params.p, rng, stepwise_draws);
    SimTrace t;
    t.attempts = out.attempts;
    t.time_units = out.attempts;
    t.succeeded = out.success;
    if (!out.success) {
        a.main_length = 0;
    }
    if (a.topology) {
        a.topology->graph = a.topology->graph.active_subgraph();
        t.final_graph = a.topology->graph;
    }
    t.stage_breakdown.push_back({"splice", out.attempts, out.attempts, a.main_length, out.success});
    return {std::move(a), std::move(t)};
}

// A chain together with what it cost to make.
struct Built {
    ChainState state;
    std::uint64_t attempts = 0;
    std::uint64_t time = 0;
    std::vector<StageCost> stages;
};

class ChainBuilder {
   public:
    ChainBuilder(const ProtocolParams &params, RngStream &rng) : params_(params), rng_(rng) {}

    Built small(int level) {
        LevelCosts c = params_.timing == SubchainTiming::Mirrored
                           ? sample_mirrored(level, params_.p, params_.attempt_cap, rng_)
                           : independent(level);
        Built b;
        b.state.main_length = level_length(level);
        b.state.armed_first = true;
        if (params_.topology) {
            b.state.topology = armed_chain_topology(level, next_id_);
            next_id_ = b.state.topology->graph.max_id() + 1;
        }
        b.attempts = c.total_attempts();
        b.time = c.total_time();
        b.stages = level_stages(c);
        return b;
    }

    Built build(std::int64_t n) {
        plan_ = plan_chain(n, params_.p);
        if (plan_.pure_doubling) {
            return small(plan_.seed_level);
        }
        Built cur = small(plan_.seed_level);
        int round = 0;
        while (cur.state.main_length < n) {
            ++round;
            if (round > kMaxRounds) {
                throw AttemptCapExceeded("chain build: too many splice rounds");
            }
            cur = splice_round(std::move(cur), round);
        }
        return cur;
    }

   private:
    static constexpr int kMaxRounds = 4096;

    LevelCosts independent(int level) {
        u128 spent = 0;
        return stepwise(level, params_.p, false, params_.attempt_cap, rng_, spent);
    }

    Built grow(int rounds) {
        Built cur = small(plan_.seed_level);
        for (int r = 1; r <= rounds; ++r) {
            cur = splice_round(std::move(cur), r);
        }
        return cur;
    }

    Built mirror(const Built &b) {
        Built m = b;
        if (b.state.topology) {
            VertexId offset = next_id_;
            m.state.topology = b.state.topology->shifted(offset);
            next_id_ = m.state.topology->graph.max_id() + 1;
        }
        return m;
    }

    // Two inputs for round r: the current chain and its partner.
    std::pair<Built, Built> partner_for(Built cur, int r) {
        Built other = params_.timing == SubchainTiming::Mirrored ? mirror(cur) : grow(r - 1);
        return {std::move(cur), std::move(other)};
    }

    Built splice_round(Built cur, int r) {
        auto [a, b] = partner_for(std::move(cur), r);
        Built out;
        // Both inputs are ready when the slower one is; their costs add.
        const Built &slow = a.time >= b.time ? a : b;
        out.time = slow.time;
        out.attempts = add(a.attempts, b.attempts);
        out.stages = slow.stages;
        for (auto &st : out.stages) {
            st.attempts = 0;
        }
        for (const auto &st : a.stages) {
            add_attempts(out.stages, st);
        }
        for (const auto &st : b.stages) {
            add_attempts(out.stages, st);
        }

        std::uint64_t splice_attempts = 0;
        std::uint64_t refresh_attempts = 0;
        ChainState left = std::move(a.state);
        ChainState right = std::move(b.state);
        for (;;) {
            auto res = splice_into(left, std::move(right), params_.p, rng_, false);
            splice_attempts = add(splice_attempts, res.attempts);
            if (res.success) {
                break;
            }
            // Exhausted: a fresh pair of round r-1 chains was prepared in parallel.
            Built fa = grow(r - 1);
            auto [fresh_a, fresh_b] = partner_for(std::move(fa), r);
            refresh_attempts = add(refresh_attempts, add(fresh_a.attempts, fresh_b.attempts));
            left = std::move(fresh_a.state);
            right = std::move(fresh_b.state);
        }
        if (left.topology) {
            left.topology->graph = left.topology->graph.active_subgraph();
        }
        out.time = add(out.time, splice_attempts);
        out.attempts = add(out.attempts, add(splice_attempts, refresh_attempts));
        if (refresh_attempts > 0) {
            out.stages.push_back({"refresh-" + std::to_string(r), refresh_attempts, 0, 0, true});
        }
        out.stages.push_back(
            {"splice-" + std::to_string(r), splice_attempts, splice_attempts, left.main_length, true});
        out.state = std::move(left);
        return out;
    }

    static void add_attempts(std::vector<StageCost> &stages, const StageCost &s) {
        for (auto &have : stages) {
            if (have.stage == s.stage) {
                have.attempts += s.attempts;
                return;
            }
        }
        stages.push_back({s.stage, s.attempts, 0, s.length, s.success});
    }

    std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
        return checked(u128{x} + y, params_.attempt_cap, "chain build");
    }

    const ProtocolParams &params_;
    RngStream &rng_;
    ChainPlan plan_{};
    VertexId next_id_ = 0;
};

SimTrace finish(Built &&b) {
    SimTrace t;
    t.attempts = b.attempts;
    t.time_units = b.time;
    t.succeeded = true;
    t.stage_breakdown = std::move(b.stages);
    if (b.state.topology) {
        t.final_graph = b.state.topology->graph;
    }
    return t;
}

}  // namespace

SimTrace sim_small_chain(int level, const ProtocolParams &params, RngStream &rng) {
    return sim_small_chain_state(level, params, rng).second;
}

std::pair<ChainState, SimTrace> sim_small_chain_state(int level, const ProtocolParams &params, RngStream &rng) {
    params.validate();
    if (level < 0 || level > 40) {
        throw PreconditionError("small chain level must lie in [0, 40]");
    }
    ChainBuilder builder(params, rng);
    Built b = builder.small(level);
    ChainState state = b.state;
    return {std::move(state), finish(std::move(b))};
}

std::pair<ChainState, SimTrace> sim_splice(ChainState a, ChainState b, const ProtocolParams &params,
                                           RngStream &rng) {
    return splice_pair(std::move(a), std::move(b), params, rng, false);
}

std::pair<ChainState, SimTrace> sim_build_chain(std::int64_t n, const ProtocolParams &params, RngStream &rng) {
    params.validate();
    if (n < 2) {
        throw PreconditionError("chain length must be at least 2");
    }
    ChainBuilder builder(params, rng);
    Built b = builder.build(n);
    trim_to(b.state, n);
    b.stages.push_back({"trim", 0, 0, n, true});
    ChainState state = b.state;
    return {std::move(state), finish(std::move(b))};
}

std::pair<Graph, SimTrace> sim_build_star(std::int64_t n_l, const ProtocolParams &params, RngStream &rng) {
    if (n_l < 1) {
        throw PreconditionError("star needs at least one arm");
    }
    auto [chain, trace] = sim_build_chain(2 * n_l, params, rng);
    Graph chain_graph = chain.topology ? chain.topology->graph : build_armed_chain(static_cast<std::size_t>(n_l));
    Graph star = reduce_chain_to_star(std::move(chain_graph));
    trace.stage_breakdown.push_back({"star-reduction", 0, 0, n_l, true});
    trace.final_graph = star;
    return {std::move(star), std::move(trace)};
}

std::int64_t assembly_arms(const LayoutSpec &layout, const ProtocolParams &params, const AssembleOptions &options) {
    const auto d = static_cast<std::int64_t>(layout.max_degree());
    if (options.arms) {
        if (*options.arms < d || *options.arms % d != 0) {
            throw PreconditionError("arm count must be a positive multiple of the maximum site degree");
        }
        return *options.arms;
    }
    return arms_required(std::max(2.0, static_cast<double>(layout.num_sites())), params.epsilon, params.p,
                         static_cast<int>(d), layout.analytic_pairs());
}

AssemblyResult sim_assemble(const LayoutSpec &layout, const ProtocolParams &params, RngStream &rng,
                            const AssembleOptions &options) {
    params.validate();
    layout.validate();
    Graph sites = layout.site_graph();
    const auto d = static_cast<std::int64_t>(layout.max_degree());

    AssemblyResult res;
    res.arms = assembly_arms(layout, params, options);
    res.attempts_per_pair = res.arms / d;

    // Units are prepared in parallel.
    std::vector<VertexId> site_ids = sites.active_vertices();
    std::map<VertexId, StarUnit> units;
    Graph whole;
    VertexId next_id = 0;
    std::uint64_t unit_attempts = 0;
    std::uint64_t unit_time = 0;
    for (auto s : site_ids) {
        if (params.topology) {
            auto [star, tr] = sim_build_star(res.arms, params, rng);
            Graph placed = star.active_subgraph().shifted(next_id);
            next_id = placed.max_id() + 1;
            units[s] = star_unit(placed);
            whole.absorb(placed);
            unit_attempts = checked(u128{unit_attempts} + tr.attempts, params.attempt_cap, "assembly");
            unit_time = std::max(unit_time, tr.time_units);
        } else {
            auto [chain, tr] = sim_build_chain(2 * res.arms, params, rng);
            unit_attempts = checked(u128{unit_attempts} + tr.attempts, params.attempt_cap, "assembly");
            unit_time = std::max(unit_time, tr.time_units);
        }
    }

    // One parallel connection window; arms are dealt to neighbors in ascending order.
    auto slot_of = [&](VertexId s, VertexId t) {
        const auto &nb = sites.neighbors(s);
        return static_cast<std::int64_t>(std::distance(nb.begin(), nb.find(t)));
    };
    std::map<VertexId, std::set<std::int64_t>> kept;  // site -> arm indices joined
    std::vector<std::array<VertexId, 4>> bridges;
    std::uint64_t connect_attempts = 0;
    const std::int64_t m = res.attempts_per_pair;
    for (const auto &[s, t] : sites.edges()) {
        ++res.pairs;
        std::optional<std::int64_t> first;
        for (std::int64_t q = 0; q < m; ++q) {
            ++connect_attempts;
            if (rng.bernoulli(params.p) && !first) {
                first = q;
            }
        }
        if (!first) {
            continue;
        }
        ++res.pairs_connected;
        if (params.topology) {
            auto is = slot_of(s, t) * m + *first;
            auto it = slot_of(t, s) * m + *first;
            const auto &arm_s = units[s].arms[static_cast<std::size_t>(is)];
            const auto &arm_t = units[t].arms[static_cast<std::size_t>(it)];
            whole.toggle_edge_in_place(arm_s.second, arm_t.second);
            kept[s].insert(is);
            kept[t].insert(it);
            bridges.push_back({arm_s.first, arm_s.second, arm_t.second, arm_t.first});
        }
    }
    res.success = res.pairs_connected == res.pairs;

    if (params.topology) {
        // Every arm that is not part of a kept bridge is removed by Z.
        for (const auto &[s, unit] : units) {
            for (std::size_t k = 0; k < unit.arms.size(); ++k) {
                if (!kept[s].count(static_cast<std::int64_t>(k))) {
                    whole.measure_z_in_place(unit.arms[k].first);
                    whole.measure_z_in_place(unit.arms[k].second);
                }
            }
        }
        for (const auto &b : bridges) {
            contract_bridge_in_place(whole, b);
        }
        Graph view;
        std::map<VertexId, VertexId> site_of;
        for (const auto &[s, unit] : units) {
            site_of[unit.center] = s;
            view.add_vertex(s);
        }
        for (const auto &[center, s] : site_of) {
            for (auto u : whole.neighbors(center)) {
                auto it = site_of.find(u);
                if (it != site_of.end() && s < it->second) {
                    view.add_edge(s, it->second);
                }
            }
        }
        res.graph = whole.active_subgraph();
        res.site_view = std::move(view);
        res.trace.final_graph = res.graph;
    }

    res.trace.attempts = checked(u128{unit_attempts} + connect_attempts, params.attempt_cap, "assembly");
    res.trace.time_units = unit_time + 1;
    res.trace.succeeded = res.success;
    res.trace.stage_breakdown.push_back(
        {"units", unit_attempts, unit_time, static_cast<std::int64_t>(site_ids.size()), true});
    res.trace.stage_breakdown.push_back({"connect", connect_attempts, 1,
                                         static_cast<std::int64_t>(res.pairs_connected), res.success});
    return res;
}

namespace reference {

SimTrace small_chain_stepwise(int level, const ProtocolParams &params, RngStream &rng) {
    params.validate();
    if (level < 0) {
        throw PreconditionError("small chain level must be non-negative");
    }
    u128 spent = 0;
    LevelCosts c = stepwise(level, params.p, params.timing == SubchainTiming::Mirrored, params.attempt_cap, rng,
                            spent);
    return trace_from(c);
}

std::pair<ChainState, SimTrace> splice_stepwise(ChainState a, ChainState b, const ProtocolParams &params,
                                                RngStream &rng) {
    return splice_pair(std::move(a), std::move(b), params, rng, true);
}

}  // namespace reference

}  // namespace clusterstate
