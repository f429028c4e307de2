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

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace clusterstate {

using VertexId = std::uint64_t;
using Edge = std::pair<VertexId, VertexId>;

/// Raised when an operation's precondition is violated (unknown or measured
/// vertex, invalid special neighbor, malformed construction input).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Basis : std::uint8_t { X, Y, Z };

enum class Role : std::uint8_t { MainChain, ArmInner, ArmOuter, Center };

/// How the three pair sets of the X-measurement rewrite are formed.
///
/// `CompletePairs` toggles every unordered pair between the two vertex sets
/// and is the rule that agrees with the stabilizer oracle. `ExistingEdges`
/// only toggles pairs that are already edges; it is kept as a negative
/// control for verification sweeps.
enum class XRule : std::uint8_t { CompletePairs, ExistingEdges };

char basis_name(Basis b);
Basis parse_basis(const std::string &text);
const char *role_name(Role r);
Role parse_role(const std::string &text);

/// Labeled equality key of a graph. Roles are not part of it.
struct CanonicalForm {
    std::vector<VertexId> vertices;
    std::vector<Edge> edges;
    std::vector<VertexId> measured;

    auto operator<=>(const CanonicalForm &) const = default;
    bool operator==(const CanonicalForm &) const = default;
};

/// Simple undirected graph underlying a graph state.
///
/// Vertices are either active (still part of the state) or measured. Measured
/// vertices carry no edges and may not be used again.
class Graph {
   public:
    Graph() = default;

    void add_vertex(VertexId v, std::optional<Role> role = std::nullopt);
    void add_edge(VertexId a, VertexId b);
    /// Moves every vertex and edge of `other` into this graph; ids must be disjoint.
    void absorb(const Graph &other);

    bool is_active(VertexId v) const { return adjacency_.count(v) != 0; }
    bool is_measured(VertexId v) const { return measured_.count(v) != 0; }
    bool has_edge(VertexId a, VertexId b) const;
    const std::set<VertexId> &neighbors(VertexId v) const;
    std::size_t degree(VertexId v) const { return neighbors(v).size(); }

    std::size_t num_active() const { return adjacency_.size(); }
    std::size_t num_edges() const;
    std::vector<VertexId> active_vertices() const;
    std::vector<Edge> edges() const;
    const std::set<VertexId> &measured() const { return measured_; }

    std::optional<Role> role(VertexId v) const;
    void set_role(VertexId v, Role r);
    void clear_role(VertexId v) { roles_.erase(v); }
    const std::map<VertexId, Role> &roles() const { return roles_; }

    // In-place primitives. The free functions below are value-returning wrappers.
    void toggle_edge_in_place(VertexId a, VertexId b);
    void local_complement_in_place(VertexId v);
    void measure_z_in_place(VertexId v);
    void measure_y_in_place(VertexId v);
    void measure_x_in_place(VertexId v, std::optional<VertexId> special, XRule rule = XRule::CompletePairs);
    void measure_in_place(Basis basis, VertexId v, std::optional<VertexId> special = std::nullopt,
                          XRule rule = XRule::CompletePairs);

    /// Graph induced on the active vertices; the measured set is dropped.
    Graph active_subgraph() const;
    /// Copy with every vertex id `v` replaced by `v + offset`.
    Graph shifted(VertexId offset) const;
    VertexId max_id() const;

    bool operator==(const Graph &other) const;

   private:
    void require_active(VertexId v, const char *op) const;

    std::map<VertexId, std::set<VertexId>> adjacency_;
    std::set<VertexId> measured_;
    std::map<VertexId, Role> roles_;
};

Graph toggle_edge(Graph g, VertexId a, VertexId b);
Graph measure_z(Graph g, VertexId i);
Graph local_complement(Graph g, VertexId i);
Graph measure_y(Graph g, VertexId i);
Graph measure_x(Graph g, VertexId i, std::optional<VertexId> special = std::nullopt,
                XRule rule = XRule::CompletePairs);
Graph measure(Graph g, Basis basis, VertexId i, std::optional<VertexId> special = std::nullopt,
              XRule rule = XRule::CompletePairs);

/// Main chain v_1..v_{2n} with a two-qubit arm v_k - a_k - b_k on every odd k.
///
/// Ids: main-chain vertex v_k gets `first_id + k - 1`; the m-th arm (m = 0..n-1)
/// gets `first_id + 2n + 2m` (inner) and `first_id + 2n + 2m + 1` (outer).
Graph build_armed_chain(std::size_t arms, VertexId first_id = 0);

/// Main-chain vertices of an armed chain, ordered from the armed end.
std::vector<VertexId> armed_chain_order(const Graph &g);

/// Turns an armed chain into a star: X on every interior armless main vertex
/// (special neighbor = current hub), then Z on the one-qubit arms left behind.
Graph reduce_chain_to_star(Graph g);

struct StarUnit {
    VertexId center;
    std::vector<std::pair<VertexId, VertexId>> arms;  // (inner, outer), sorted by inner id
};

/// Reads back the center and the two-qubit arms of a star produced by reduce_chain_to_star.
StarUnit star_unit(const Graph &g);

/// Y-measures the four bridge qubits (a_i, b_i, b_j, a_j) of a path
/// c_i - a_i - b_i - b_j - a_j - c_j, leaving a direct edge c_i - c_j.
Graph contract_bridge(Graph g, const std::array<VertexId, 4> &bridge);
void contract_bridge_in_place(Graph &g, const std::array<VertexId, 4> &bridge);

CanonicalForm canonical_form(const Graph &g);

}  // namespace clusterstate
