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

#include "clusterstate/graph.h"

#include <algorithm>

namespace clusterstate {

namespace {

const std::set<VertexId> kNoNeighbors;

std::string id_str(VertexId v) {
    return std::to_string(v);
}

// Complete set of unordered pairs {a, b}, a in A, b in B, a != b.
std::set<Edge> complete_pairs(const std::set<VertexId> &a, const std::set<VertexId> &b) {
    std::set<Edge> out;
    for (auto x : a) {
        for (auto y : b) {
            if (x != y) {
                out.emplace(std::min(x, y), std::max(x, y));
            }
        }
    }
    return out;
}

std::set<Edge> existing_pairs(const Graph &g, const std::set<VertexId> &a, const std::set<VertexId> &b) {
    std::set<Edge> out;
    for (const auto &e : complete_pairs(a, b)) {
        if (g.has_edge(e.first, e.second)) {
            out.insert(e);
        }
    }
    return out;
}

}  // namespace

char basis_name(Basis b) {
    switch (b) {
        case Basis::X:
            return 'X';
        case Basis::Y:
            return 'Y';
        case Basis::Z:
            return 'Z';
    }
    return '?';
}

Basis parse_basis(const std::string &text) {
    if (text == "x" || text == "X") {
        return Basis::X;
    }
    if (text == "y" || text == "Y") {
        return Basis::Y;
    }
    if (text == "z" || text == "Z") {
        return Basis::Z;
    }
    throw std::invalid_argument("unknown basis '" + text + "' (expected x, y or z)");
}

const char *role_name(Role r) {
    switch (r) {
        case Role::MainChain:
            return "main-chain";
        case Role::ArmInner:
            return "arm-inner";
        case Role::ArmOuter:
            return "arm-outer";
        case Role::Center:
            return "center";
    }
    return "?";
}

Role parse_role(const std::string &text) {
    for (auto r : {Role::MainChain, Role::ArmInner, Role::ArmOuter, Role::Center}) {
        if (text == role_name(r)) {
            return r;
        }
    }
    throw std::invalid_argument("unknown vertex role '" + text + "'");
}

void Graph::add_vertex(VertexId v, std::optional<Role> role) {
    if (measured_.count(v)) {
        throw PreconditionError("vertex " + id_str(v) + " was already measured");
    }
    adjacency_.try_emplace(v);
    if (role) {
        roles_[v] = *role;
    }
}

void Graph::add_edge(VertexId a, VertexId b) {
    require_active(a, "add_edge");
    require_active(b, "add_edge");
    if (a == b) {
        throw PreconditionError("self-loop on vertex " + id_str(a));
    }
    adjacency_[a].insert(b);
    adjacency_[b].insert(a);
}

void Graph::absorb(const Graph &other) {
    for (const auto &[v, nbrs] : other.adjacency_) {
        if (adjacency_.count(v) || measured_.count(v)) {
            throw PreconditionError("absorb: vertex id " + id_str(v) + " already in use");
        }
        adjacency_.emplace(v, nbrs);
    }
    for (auto v : other.measured_) {
        if (adjacency_.count(v) && !other.adjacency_.count(v)) {
            throw PreconditionError("absorb: vertex id " + id_str(v) + " already in use");
        }
        measured_.insert(v);
    }
    for (const auto &[v, r] : other.roles_) {
        roles_[v] = r;
    }
}

bool Graph::has_edge(VertexId a, VertexId b) const {
    auto it = adjacency_.find(a);
    return it != adjacency_.end() && it->second.count(b) != 0;
}

const std::set<VertexId> &Graph::neighbors(VertexId v) const {
    auto it = adjacency_.find(v);
    return it == adjacency_.end() ? kNoNeighbors : it->second;
}

std::size_t Graph::num_edges() const {
    std::size_t twice = 0;
    for (const auto &[v, nbrs] : adjacency_) {
        twice += nbrs.size();
    }
    return twice / 2;
}

std::vector<VertexId> Graph::active_vertices() const {
    std::vector<VertexId> out;
    out.reserve(adjacency_.size());
    for (const auto &[v, nbrs] : adjacency_) {
        out.push_back(v);
    }
    return out;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (const auto &[v, nbrs] : adjacency_) {
        for (auto u : nbrs) {
            if (v < u) {
                out.emplace_back(v, u);
            }
        }
    }
    return out;
}

std::optional<Role> Graph::role(VertexId v) const {
    auto it = roles_.find(v);
    if (it == roles_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void Graph::set_role(VertexId v, Role r) {
    if (!is_active(v) && !is_measured(v)) {
        throw PreconditionError("set_role: unknown vertex " + id_str(v));
    }
    roles_[v] = r;
}

void Graph::require_active(VertexId v, const char *op) const {
    if (adjacency_.count(v)) {
        return;
    }
    if (measured_.count(v)) {
        throw PreconditionError(std::string(op) + ": vertex " + id_str(v) + " was already measured");
    }
    throw PreconditionError(std::string(op) + ": unknown vertex " + id_str(v));
}

void Graph::toggle_edge_in_place(VertexId a, VertexId b) {
    require_active(a, "toggle_edge");
    require_active(b, "toggle_edge");
    if (a == b) {
        throw PreconditionError("toggle_edge: endpoints must differ (got " + id_str(a) + " twice)");
    }
    auto &na = adjacency_[a];
    if (na.erase(b)) {
        adjacency_[b].erase(a);
    } else {
        na.insert(b);
        adjacency_[b].insert(a);
    }
}

void Graph::local_complement_in_place(VertexId v) {
    require_active(v, "local_complement");
    std::vector<VertexId> nbrs(adjacency_[v].begin(), adjacency_[v].end());
    for (std::size_t x = 0; x < nbrs.size(); x++) {
        for (std::size_t y = x + 1; y < nbrs.size(); y++) {
            toggle_edge_in_place(nbrs[x], nbrs[y]);
        }
    }
}

void Graph::measure_z_in_place(VertexId v) {
    require_active(v, "measure_z");
    for (auto u : adjacency_[v]) {
        adjacency_[u].erase(v);
    }
    adjacency_.erase(v);
    measured_.insert(v);
}

void Graph::measure_y_in_place(VertexId v) {
    require_active(v, "measure_y");
    local_complement_in_place(v);
    measure_z_in_place(v);
}

void Graph::measure_x_in_place(VertexId v, std::optional<VertexId> special, XRule rule) {
    require_active(v, "measure_x");
    const std::set<VertexId> ni = adjacency_[v];
    if (ni.empty()) {
        if (special) {
            throw PreconditionError("measure_x: special neighbor " + id_str(*special) + " is not adjacent to " +
                                    id_str(v) + " (vertex is isolated)");
        }
        measure_z_in_place(v);
        return;
    }
    VertexId j = special ? *special : *ni.begin();
    if (!ni.count(j)) {
        throw PreconditionError("measure_x: special neighbor " + id_str(j) + " is not adjacent to " + id_str(v));
    }
    const std::set<VertexId> nj = adjacency_[j];
    std::set<VertexId> common;
    std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(), std::inserter(common, common.end()));
    std::set<VertexId> ni_minus_j = ni;
    ni_minus_j.erase(j);

    std::vector<std::set<Edge>> terms;
    if (rule == XRule::CompletePairs) {
        terms.push_back(complete_pairs(nj, ni));
        terms.push_back(complete_pairs(common, common));
        terms.push_back(complete_pairs({j}, ni_minus_j));
    } else {
        // Literal reading: only pairs already present in the input graph.
        terms.push_back(existing_pairs(*this, nj, ni));
        terms.push_back(existing_pairs(*this, common, common));
        terms.push_back(existing_pairs(*this, {j}, ni_minus_j));
    }
    for (const auto &term : terms) {
        for (const auto &[a, b] : term) {
            toggle_edge_in_place(a, b);
        }
    }
    measure_z_in_place(v);
}

void Graph::measure_in_place(Basis basis, VertexId v, std::optional<VertexId> special, XRule rule) {
    if (special && basis != Basis::X) {
        throw PreconditionError("a special neighbor is only meaningful for X measurements");
    }
    switch (basis) {
        case Basis::X:
            measure_x_in_place(v, special, rule);
            break;
        case Basis::Y:
            measure_y_in_place(v);
            break;
        case Basis::Z:
            measure_z_in_place(v);
            break;
    }
}

Graph Graph::active_subgraph() const {
    Graph out;
    out.adjacency_ = adjacency_;
    for (const auto &[v, r] : roles_) {
        if (adjacency_.count(v)) {
            out.roles_[v] = r;
        }
    }
    return out;
}

Graph Graph::shifted(VertexId offset) const {
    Graph out;
    for (const auto &[v, nbrs] : adjacency_) {
        auto &dst = out.adjacency_[v + offset];
        for (auto u : nbrs) {
            dst.insert(u + offset);
        }
    }
    for (auto v : measured_) {
        out.measured_.insert(v + offset);
    }
    for (const auto &[v, r] : roles_) {
        out.roles_[v + offset] = r;
    }
    return out;
}

VertexId Graph::max_id() const {
    VertexId m = 0;
    if (!adjacency_.empty()) {
        m = adjacency_.rbegin()->first;
    }
    if (!measured_.empty()) {
        m = std::max(m, *measured_.rbegin());
    }
    return m;
}

bool Graph::operator==(const Graph &other) const {
    return adjacency_ == other.adjacency_ && measured_ == other.measured_ && roles_ == other.roles_;
}

Graph toggle_edge(Graph g, VertexId a, VertexId b) {
    g.toggle_edge_in_place(a, b);
    return g;
}

Graph measure_z(Graph g, VertexId i) {
    g.measure_z_in_place(i);
    return g;
}

Graph local_complement(Graph g, VertexId i) {
    g.local_complement_in_place(i);
    return g;
}

Graph measure_y(Graph g, VertexId i) {
    g.measure_y_in_place(i);
    return g;
}

Graph measure_x(Graph g, VertexId i, std::optional<VertexId> special, XRule rule) {
    g.measure_x_in_place(i, special, rule);
    return g;
}

Graph measure(Graph g, Basis basis, VertexId i, std::optional<VertexId> special, XRule rule) {
    g.measure_in_place(basis, i, special, rule);
    return g;
}

Graph build_armed_chain(std::size_t arms, VertexId first_id) {
    if (arms == 0) {
        throw PreconditionError("build_armed_chain: need at least one arm");
    }
    Graph g;
    const VertexId main_len = 2 * arms;
    for (VertexId k = 0; k < main_len; k++) {
        g.add_vertex(first_id + k, Role::MainChain);
        if (k > 0) {
            g.add_edge(first_id + k - 1, first_id + k);
        }
    }
    for (VertexId m = 0; m < arms; m++) {
        VertexId inner = first_id + main_len + 2 * m;
        VertexId outer = inner + 1;
        g.add_vertex(inner, Role::ArmInner);
        g.add_vertex(outer, Role::ArmOuter);
        g.add_edge(first_id + 2 * m, inner);
        g.add_edge(inner, outer);
    }
    return g;
}

namespace {

bool has_role(const Graph &g, VertexId v, Role r) {
    auto got = g.role(v);
    return got && *got == r;
}

// Arm inner vertex hanging off main vertex v, if any.
std::optional<VertexId> arm_of(const Graph &g, VertexId v) {
    std::optional<VertexId> found;
    for (auto u : g.neighbors(v)) {
        if (has_role(g, u, Role::ArmInner)) {
            if (found) {
                throw PreconditionError("armed chain: main vertex " + id_str(v) + " has more than one arm");
            }
            found = u;
        }
    }
    return found;
}

}  // namespace

std::vector<VertexId> armed_chain_order(const Graph &g) {
    std::vector<VertexId> mains;
    for (auto v : g.active_vertices()) {
        if (has_role(g, v, Role::MainChain)) {
            mains.push_back(v);
        }
    }
    if (mains.empty()) {
        throw PreconditionError("armed chain: no main-chain labeled vertices");
    }
    auto main_neighbors = [&](VertexId v) {
        std::vector<VertexId> out;
        for (auto u : g.neighbors(v)) {
            if (has_role(g, u, Role::MainChain)) {
                out.push_back(u);
            }
        }
        return out;
    };
    std::optional<VertexId> start;
    for (auto v : mains) {
        if (main_neighbors(v).size() <= 1 && arm_of(g, v)) {
            start = v;
            break;
        }
    }
    if (!start) {
        throw PreconditionError("armed chain: no armed end vertex found");
    }
    std::vector<VertexId> order{*start};
    std::optional<VertexId> prev;
    VertexId cur = *start;
    while (true) {
        auto nbrs = main_neighbors(cur);
        std::optional<VertexId> next;
        for (auto u : nbrs) {
            if (!prev || u != *prev) {
                if (next) {
                    throw PreconditionError("armed chain: main chain branches at vertex " + id_str(cur));
                }
                next = u;
            }
        }
        if (!next) {
            break;
        }
        prev = cur;
        cur = *next;
        order.push_back(cur);
        if (order.size() > mains.size()) {
            throw PreconditionError("armed chain: main chain contains a cycle");
        }
    }
    if (order.size() != mains.size()) {
        throw PreconditionError("armed chain: main-chain vertices are not a single path");
    }
    // Arms on even positions (v_1, v_3, ...) only, each a two-qubit pendant path.
    for (std::size_t k = 0; k < order.size(); k++) {
        auto arm = arm_of(g, order[k]);
        if ((k % 2 == 0) != arm.has_value()) {
            throw PreconditionError("armed chain: arms must sit on alternate main vertices starting at the armed end");
        }
        if (arm) {
            const auto &an = g.neighbors(*arm);
            if (an.size() != 2) {
                throw PreconditionError("armed chain: arm vertex " + id_str(*arm) + " must have degree 2");
            }
            VertexId outer = *an.begin() == order[k] ? *an.rbegin() : *an.begin();
            if (!has_role(g, outer, Role::ArmOuter) || g.degree(outer) != 1) {
                throw PreconditionError("armed chain: arm " + id_str(*arm) + " lacks an outer leaf");
            }
        }
    }
    return order;
}

Graph reduce_chain_to_star(Graph g) {
    auto order = armed_chain_order(g);
    if (order.size() % 2 != 0) {
        throw PreconditionError("reduce_chain_to_star: main chain length must be even");
    }
    VertexId hub = order[0];
    // Interior armless vertices v_2, v_4, ..., v_{2n-2}. Measuring v_{2k} with the
    // hub as special neighbor moves every hub edge onto v_{2k+1}, and the old hub
    // is left as a one-qubit arm of the new one.
    for (std::size_t k = 1; k + 1 < order.size(); k += 2) {
        g.measure_x_in_place(order[k], hub);
        hub = order[k + 1];
    }
    // One-qubit arms: previous hubs and the terminal armless vertex.
    std::vector<VertexId> leaves;
    for (auto u : g.neighbors(hub)) {
        if (has_role(g, u, Role::MainChain)) {
            leaves.push_back(u);
        }
    }
    for (auto u : leaves) {
        g.measure_z_in_place(u);
    }
    g.set_role(hub, Role::Center);
    return g;
}

StarUnit star_unit(const Graph &g) {
    std::optional<VertexId> center;
    for (const auto &[v, r] : g.roles()) {
        if (r == Role::Center && g.is_active(v)) {
            if (center) {
                throw PreconditionError("star_unit: more than one center");
            }
            center = v;
        }
    }
    if (!center) {
        throw PreconditionError("star_unit: no active center vertex");
    }
    StarUnit unit{*center, {}};
    for (auto a : g.neighbors(*center)) {
        const auto &an = g.neighbors(a);
        if (an.size() != 2) {
            throw PreconditionError("star_unit: arm vertex " + id_str(a) + " must have degree 2");
        }
        VertexId b = *an.begin() == *center ? *an.rbegin() : *an.begin();
        if (g.degree(b) != 1) {
            throw PreconditionError("star_unit: arm outer vertex " + id_str(b) + " must be a leaf");
        }
        unit.arms.emplace_back(a, b);
    }
    return unit;
}

void contract_bridge_in_place(Graph &g, const std::array<VertexId, 4> &bridge) {
    for (auto v : bridge) {
        if (!g.is_active(v)) {
            throw PreconditionError("contract_bridge: bridge vertex " + id_str(v) +
                                    (g.is_measured(v) ? " was already measured" : " is unknown"));
        }
        if (g.degree(v) != 2) {
            throw PreconditionError("contract_bridge: bridge vertex " + id_str(v) + " must have degree 2");
        }
    }
    for (std::size_t k = 0; k + 1 < bridge.size(); k++) {
        if (!g.has_edge(bridge[k], bridge[k + 1])) {
            throw PreconditionError("contract_bridge: vertices do not form a path c_i-a_i-b_i-b_j-a_j-c_j");
        }
    }
    for (auto v : bridge) {
        g.measure_y_in_place(v);
    }
}

Graph contract_bridge(Graph g, const std::array<VertexId, 4> &bridge) {
    contract_bridge_in_place(g, bridge);
    return g;
}

CanonicalForm canonical_form(const Graph &g) {
    return CanonicalForm{g.active_vertices(), g.edges(),
                         std::vector<VertexId>(g.measured().begin(), g.measured().end())};
}

}  // namespace clusterstate
