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

#include "clusterstate/oracle.h"

#include <algorithm>
#include <deque>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include <omp.h>

namespace clusterstate {

namespace detail {

namespace {

constexpr std::size_t pair_bit(std::size_t a, std::size_t b) {
    // a < b; independent of the vertex count so masks nest.
    return b * (b - 1) / 2 + a;
}

}  // namespace

std::uint64_t SmallGraph::key() const {
    std::uint64_t bits = 0;
    for (std::size_t b = 1; b < n; b++) {
        for (std::size_t a = 0; a < b; a++) {
            if ((adj[a] >> b) & 1u) {
                bits |= std::uint64_t{1} << pair_bit(a, b);
            }
        }
    }
    return (std::uint64_t(n) << 56) | bits;
}

void SmallGraph::local_complement(std::size_t v) {
    std::uint8_t nbrs = adj[v];
    for (std::size_t a = 0; a < n; a++) {
        if ((nbrs >> a) & 1u) {
            adj[a] ^= std::uint8_t(nbrs & ~(1u << a));
        }
    }
}

namespace {

SmallGraph from_key(std::uint64_t key) {
    SmallGraph g;
    g.n = std::uint8_t(key >> 56);
    for (std::size_t b = 1; b < g.n; b++) {
        for (std::size_t a = 0; a < b; a++) {
            if ((key >> pair_bit(a, b)) & 1u) {
                g.adj[a] |= std::uint8_t(1u << b);
                g.adj[b] |= std::uint8_t(1u << a);
            }
        }
    }
    return g;
}

template <typename Visit>
void bfs_orbit(const SmallGraph &start, std::size_t max_size, Visit &&visit) {
    std::unordered_set<std::uint64_t> seen{start.key()};
    std::deque<SmallGraph> queue{start};
    visit(start);
    while (!queue.empty()) {
        SmallGraph cur = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < cur.n; v++) {
            SmallGraph next = cur;
            next.local_complement(v);
            if (seen.insert(next.key()).second) {
                if (seen.size() > max_size) {
                    throw OrbitOverflow("lc_orbit: orbit exceeds " + std::to_string(max_size) + " graphs");
                }
                visit(next);
                queue.push_back(next);
            }
        }
    }
}

}  // namespace

std::uint64_t orbit_min_key(const SmallGraph &g) {
    std::uint64_t best = g.key();
    bfs_orbit(g, std::size_t(-1), [&](const SmallGraph &h) { best = std::min(best, h.key()); });
    return best;
}

bool is_connected(std::uint32_t mask, std::size_t n) {
    if (n <= 1) {
        return true;
    }
    SmallGraph g = from_key((std::uint64_t(n) << 56) | mask);
    std::uint8_t reached = 1;
    std::uint8_t frontier = 1;
    while (frontier) {
        std::uint8_t next = 0;
        for (std::size_t v = 0; v < n; v++) {
            if ((frontier >> v) & 1u) {
                next |= g.adj[v];
            }
        }
        frontier = std::uint8_t(next & ~reached);
        reached |= next;
    }
    return reached == std::uint8_t((1u << n) - 1);
}

}  // namespace detail

namespace {

using detail::SmallGraph;

SmallGraph to_small(const Graph &g, const std::vector<VertexId> &order) {
    SmallGraph s;
    s.n = std::uint8_t(order.size());
    for (std::size_t a = 0; a < order.size(); a++) {
        for (std::size_t b = 0; b < order.size(); b++) {
            if (a != b && g.has_edge(order[a], order[b])) {
                s.adj[a] |= std::uint8_t(1u << b);
            }
        }
    }
    return s;
}

Graph oracle_post_measurement(const Graph &g, Basis basis, VertexId i) {
    auto t = tableau_from_graph(g.active_subgraph());
    std::size_t qi = t.index_of(i);
    auto measured = measure_pauli(std::move(t), qi, basis, OutcomePolicy::force_plus());
    std::vector<std::size_t> keep;
    for (std::size_t q = 0; q < measured.tableau.num_qubits(); q++) {
        if (q != qi) {
            keep.push_back(q);
        }
    }
    return extract_graph(restrict_to(measured.tableau, keep)).graph;
}

class OrbitCache {
   public:
    std::uint64_t min_key(const SmallGraph &g) {
        auto key = g.key();
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            return it->second;
        }
        auto m = detail::orbit_min_key(g);
        cache_.emplace(key, m);
        return m;
    }

   private:
    std::unordered_map<std::uint64_t, std::uint64_t> cache_;
};

bool check_case(const Graph &g, Basis basis, VertexId i, std::optional<VertexId> special, XRule rule,
                OrbitCache &cache) {
    Graph expected = oracle_post_measurement(g, basis, i);
    Graph produced = measure(g.active_subgraph(), basis, i, special, rule);
    auto order = expected.active_vertices();
    if (produced.active_vertices() != order) {
        return false;
    }
    return cache.min_key(to_small(expected, order)) == cache.min_key(to_small(produced, order));
}

auto case_order(const VerifyCase &c) {
    return std::make_tuple(c.num_vertices, c.graph_mask, c.vertex, int(c.basis), c.special ? int(*c.special) : -1);
}

void merge_failure(VerifySummary &into, const std::optional<VerifyCase> &c) {
    if (c && (!into.first_failure || case_order(*c) < case_order(*into.first_failure))) {
        into.first_failure = c;
    }
}

// Checks every case on one labeled graph.
void sweep_graph(std::uint32_t mask, std::uint8_t n, XRule rule, OrbitCache &cache, VerifySummary &acc) {
    VerifyCase base{mask, n, 0, Basis::X, std::nullopt};
    Graph g = base.graph();
    acc.graphs++;
    for (std::uint8_t v = 0; v < n; v++) {
        std::vector<std::pair<Basis, std::optional<std::uint8_t>>> todo;
        if (g.degree(v) == 0) {
            todo.emplace_back(Basis::X, std::nullopt);
        }
        for (auto j : g.neighbors(v)) {
            todo.emplace_back(Basis::X, std::uint8_t(j));
        }
        todo.emplace_back(Basis::Y, std::nullopt);
        todo.emplace_back(Basis::Z, std::nullopt);
        for (const auto &[basis, special] : todo) {
            acc.cases++;
            std::optional<VertexId> sp;
            if (special) {
                sp = *special;
            }
            if (check_case(g, basis, v, sp, rule, cache)) {
                acc.passed++;
            } else {
                acc.failed++;
                merge_failure(acc, VerifyCase{mask, n, v, basis, special});
            }
        }
    }
}

void check_sweep_size(std::size_t max_vertices) {
    if (max_vertices < 1 || max_vertices > kMaxVerifyVertices) {
        throw PreconditionError("verify: max_vertices must be in [1, " + std::to_string(kMaxVerifyVertices) + "]");
    }
}

}  // namespace

Graph VerifyCase::graph() const {
    Graph g;
    for (VertexId v = 0; v < num_vertices; v++) {
        g.add_vertex(v);
    }
    for (std::size_t b = 1; b < num_vertices; b++) {
        for (std::size_t a = 0; a < b; a++) {
            if ((graph_mask >> detail::pair_bit(a, b)) & 1u) {
                g.add_edge(a, b);
            }
        }
    }
    return g;
}

std::set<CanonicalForm> lc_orbit(const Graph &g, std::size_t max_size) {
    auto order = g.active_vertices();
    if (order.size() > kMaxOrbitVertices) {
        throw PreconditionError("lc_orbit: " + std::to_string(order.size()) + " active vertices exceeds the cap of " +
                                std::to_string(kMaxOrbitVertices));
    }
    std::vector<VertexId> measured(g.measured().begin(), g.measured().end());
    std::set<CanonicalForm> out;
    detail::bfs_orbit(to_small(g, order), max_size, [&](const SmallGraph &h) {
        CanonicalForm cf{order, {}, measured};
        for (std::size_t a = 0; a < h.n; a++) {
            for (std::size_t b = a + 1; b < h.n; b++) {
                if ((h.adj[a] >> b) & 1u) {
                    cf.edges.emplace_back(order[a], order[b]);
                }
            }
        }
        out.insert(std::move(cf));
    });
    return out;
}

bool verify_measurement_rule(const Graph &g, Basis basis, VertexId i, std::optional<VertexId> special, XRule rule) {
    if (g.num_active() > kMaxVerifyVertices) {
        throw PreconditionError("verify_measurement_rule: at most " + std::to_string(kMaxVerifyVertices) +
                                " active vertices");
    }
    if (!g.is_active(i)) {
        throw PreconditionError("verify_measurement_rule: vertex " + std::to_string(i) + " is not active");
    }
    Graph expected = oracle_post_measurement(g, basis, i);
    Graph produced = measure(g.active_subgraph(), basis, i, special, rule);
    auto orbit = lc_orbit(produced.active_subgraph());
    return orbit.count(canonical_form(expected)) != 0;
}

VerifySummary verify_sweep_serial(std::size_t max_vertices, XRule rule) {
    check_sweep_size(max_vertices);
    VerifySummary total;
    OrbitCache cache;
    for (std::uint8_t n = 1; n <= max_vertices; n++) {
        const std::uint32_t limit = std::uint32_t{1} << (n * (n - 1) / 2);
        for (std::uint32_t mask = 0; mask < limit; mask++) {
            if (detail::is_connected(mask, n)) {
                sweep_graph(mask, n, rule, cache, total);
            }
        }
    }
    return total;
}

VerifySummary verify_sweep(std::size_t max_vertices, XRule rule) {
    check_sweep_size(max_vertices);
    VerifySummary total;
    for (std::uint8_t n = 1; n <= max_vertices; n++) {
        const std::int64_t limit = std::int64_t{1} << (n * (n - 1) / 2);
#pragma omp parallel
        {
            VerifySummary local;
            OrbitCache cache;
#pragma omp for schedule(dynamic, 256) nowait
            for (std::int64_t mask = 0; mask < limit; mask++) {
                if (detail::is_connected(std::uint32_t(mask), n)) {
                    sweep_graph(std::uint32_t(mask), n, rule, cache, local);
                }
            }
#pragma omp critical(verify_merge)
            {
                total.graphs += local.graphs;
                total.cases += local.cases;
                total.passed += local.passed;
                total.failed += local.failed;
                merge_failure(total, local.first_failure);
            }
        }
    }
    return total;
}

}  // namespace clusterstate
