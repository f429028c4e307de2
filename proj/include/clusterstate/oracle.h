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
#include <optional>
#include <set>
#include <vector>

#include "clusterstate/graph.h"
#include "clusterstate/tableau.h"

namespace clusterstate {

constexpr std::size_t kMaxOrbitVertices = 8;
constexpr std::size_t kMaxVerifyVertices = 7;

struct OrbitOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Every labeled graph reachable from `g` by local complementations.
std::set<CanonicalForm> lc_orbit(const Graph &g, std::size_t max_size = 1u << 20);

/// True iff the measured state, read back from the stabilizer oracle, is
/// local-Clifford equivalent to the graph-rule output on the unmeasured vertices.
bool verify_measurement_rule(const Graph &g, Basis basis, VertexId i, std::optional<VertexId> special = std::nullopt,
                             XRule rule = XRule::CompletePairs);

struct VerifyCase {
    std::uint32_t graph_mask;  // upper-triangle edge bits on vertices 0..n-1
    std::uint8_t num_vertices;
    std::uint8_t vertex;
    Basis basis;
    std::optional<std::uint8_t> special;

    Graph graph() const;
    bool operator==(const VerifyCase &) const = default;
};

struct VerifySummary {
    std::uint64_t graphs = 0;
    std::uint64_t cases = 0;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::optional<VerifyCase> first_failure;  // smallest (n, mask, vertex, basis, special)

    bool ok() const { return failed == 0; }
    bool operator==(const VerifySummary &) const = default;
};

/// Exhaustive sweep over connected labeled graphs on 1..max_vertices vertices,
/// every vertex, bases X/Y/Z and every special neighbor for X.
VerifySummary verify_sweep(std::size_t max_vertices, XRule rule = XRule::CompletePairs);
/// Single-threaded reference for verify_sweep.
VerifySummary verify_sweep_serial(std::size_t max_vertices, XRule rule = XRule::CompletePairs);

namespace detail {

/// Adjacency rows of a graph on at most 8 vertices.
struct SmallGraph {
    std::uint8_t n = 0;
    std::array<std::uint8_t, kMaxOrbitVertices> adj{};

    std::uint64_t key() const;
    void local_complement(std::size_t v);
};

/// Smallest key in the local-complementation orbit (an orbit invariant).
std::uint64_t orbit_min_key(const SmallGraph &g);
bool is_connected(std::uint32_t mask, std::size_t n);

}  // namespace detail

}  // namespace clusterstate
