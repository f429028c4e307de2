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

#include <gtest/gtest.h>

#include "clusterstate/graph_json.h"

using namespace clusterstate;

namespace {

Graph path(std::initializer_list<VertexId> vs) {
    Graph g;
    VertexId prev = 0;
    bool first = true;
    for (auto v : vs) {
        g.add_vertex(v);
        if (!first) {
            g.add_edge(prev, v);
        }
        prev = v;
        first = false;
    }
    return g;
}

std::vector<Edge> E(std::initializer_list<Edge> e) {
    return std::vector<Edge>(e);
}

}  // namespace

TEST(Graph, BasicAccessors) {
    Graph g = path({1, 2, 3});
    EXPECT_EQ(g.num_active(), 3u);
    EXPECT_EQ(g.num_edges(), 2u);
    EXPECT_TRUE(g.has_edge(2, 1));
    EXPECT_FALSE(g.has_edge(1, 3));
    EXPECT_EQ(g.degree(2), 2u);
    EXPECT_THROW(g.add_edge(1, 1), PreconditionError);
    EXPECT_THROW(g.add_edge(1, 9), PreconditionError);
}

TEST(Graph, ToggleIsInvolution) {
    Graph g = path({1, 2, 3});
    Graph h = toggle_edge(toggle_edge(g, 1, 3), 1, 3);
    EXPECT_EQ(g, h);
    EXPECT_TRUE(toggle_edge(g, 1, 3).has_edge(1, 3));
}

TEST(Graph, MeasureZDeletesIncidentEdges) {
    Graph g = measure_z(path({1, 2, 3}), 2);
    EXPECT_EQ(g.num_active(), 2u);
    EXPECT_EQ(g.num_edges(), 0u);
    EXPECT_TRUE(g.is_measured(2));
    EXPECT_THROW(measure_z(g, 2), PreconditionError);
}

TEST(Graph, MeasureZIsolatedVertex) {
    Graph g;
    g.add_vertex(4);
    g.add_vertex(5);
    Graph h = measure_z(g, 4);
    EXPECT_EQ(h.active_vertices(), std::vector<VertexId>({5}));
}

TEST(Graph, LocalComplementTogglesNeighborhood) {
    Graph star;
    for (VertexId v = 0; v < 4; v++) {
        star.add_vertex(v);
    }
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    Graph lc = local_complement(star, 0);
    EXPECT_EQ(lc.num_edges(), 6u);
    EXPECT_EQ(local_complement(lc, 0), star);
}

TEST(Graph, MeasureYOnTriangleLeavesPath) {
    Graph g = path({1, 2, 3});
    g.add_edge(1, 3);
    Graph h = measure_y(g, 2);
    EXPECT_EQ(h.edges(), E({}));
    // On a path, Y at the middle joins the ends.
    EXPECT_EQ(measure_y(path({1, 2, 3}), 2).edges(), E({{1, 3}}));
}

TEST(Graph, MeasureXOnPathMiddle) {
    Graph h = measure_x(path({1, 2, 3}), 2, VertexId{1});
    EXPECT_EQ(h.edges(), E({{1, 3}}));
    EXPECT_EQ(h.active_vertices(), std::vector<VertexId>({1, 3}));
    // Literal existing-edges reading leaves 1 and 3 disconnected.
    Graph lit = measure_x(path({1, 2, 3}), 2, VertexId{1}, XRule::ExistingEdges);
    EXPECT_EQ(lit.edges(), E({}));
}

TEST(Graph, MeasureXPreconditions) {
    Graph g = path({1, 2, 3});
    EXPECT_THROW(measure_x(g, 2, VertexId{7}), PreconditionError);
    EXPECT_THROW(measure(g, Basis::Z, 2, VertexId{1}), PreconditionError);
    Graph lone;
    lone.add_vertex(3);
    EXPECT_EQ(measure_x(lone, 3).num_active(), 0u);
}

TEST(Graph, BasisNames) {
    EXPECT_EQ(parse_basis("x"), Basis::X);
    EXPECT_EQ(parse_basis("Y"), Basis::Y);
    EXPECT_THROW(parse_basis("w"), std::invalid_argument);
    EXPECT_EQ(parse_role(role_name(Role::ArmOuter)), Role::ArmOuter);
}

TEST(ArmedChain, Layout) {
    Graph g = build_armed_chain(1);
    EXPECT_EQ(g.num_active(), 4u);
    EXPECT_EQ(g.edges(), E({{0, 1}, {0, 2}, {2, 3}}));
    Graph g3 = build_armed_chain(3, 100);
    EXPECT_EQ(g3.num_active(), 12u);
    EXPECT_EQ(g3.num_edges(), 11u);
    EXPECT_EQ(armed_chain_order(g3), std::vector<VertexId>({100, 101, 102, 103, 104, 105}));
    EXPECT_EQ(*g3.role(106), Role::ArmInner);
    EXPECT_THROW(build_armed_chain(0), PreconditionError);
}

TEST(ArmedChain, StarReduction) {
    for (std::size_t n : {1, 2, 3, 4, 8, 16}) {
        Graph star = reduce_chain_to_star(build_armed_chain(n));
        StarUnit u = star_unit(star);
        ASSERT_EQ(u.arms.size(), n) << n;
        EXPECT_EQ(star.degree(u.center), n);
        EXPECT_EQ(star.num_active(), 2 * n + 1);
        EXPECT_EQ(star.num_edges(), 2 * n);
        for (const auto &[a, b] : u.arms) {
            EXPECT_TRUE(star.has_edge(u.center, a));
            EXPECT_TRUE(star.has_edge(a, b));
            EXPECT_EQ(star.degree(b), 1u);
        }
    }
}

TEST(ArmedChain, ContractBridgeJoinsCenters) {
    // c1 - a1 - b1 - b2 - a2 - c2
    Graph g = path({10, 11, 12, 22, 21, 20});
    Graph h = contract_bridge(g, {11, 12, 22, 21});
    EXPECT_EQ(h.edges(), E({{10, 20}}));
    EXPECT_THROW(contract_bridge(g, {11, 12, 21, 22}), PreconditionError);
}

TEST(ArmedChain, TwoStarsBecomeAnEdgeOfCenters) {
    Graph s1 = reduce_chain_to_star(build_armed_chain(2));
    Graph s2 = reduce_chain_to_star(build_armed_chain(2, 100));
    StarUnit u1 = star_unit(s1);
    StarUnit u2 = star_unit(s2);
    Graph g = s1.active_subgraph();
    g.absorb(s2.active_subgraph());
    g.toggle_edge_in_place(u1.arms[0].second, u2.arms[0].second);
    for (const auto &arm : {u1.arms[1], u2.arms[1]}) {
        g.measure_z_in_place(arm.first);
        g.measure_z_in_place(arm.second);
    }
    contract_bridge_in_place(g, {u1.arms[0].first, u1.arms[0].second, u2.arms[0].second, u2.arms[0].first});
    Graph active = g.active_subgraph();
    EXPECT_EQ(active.num_active(), 2u);
    EXPECT_TRUE(active.has_edge(u1.center, u2.center));
}

TEST(GraphJson, RoundTrip) {
    Graph g = measure_z(build_armed_chain(2), 3);
    std::string text = dump_graph(g);
    Graph back = parse_graph(text);
    EXPECT_EQ(back, g);
    EXPECT_EQ(dump_graph(back), text);
}

TEST(GraphJson, RejectsMalformed) {
    EXPECT_THROW(parse_graph("[]"), SchemaError);
    EXPECT_THROW(parse_graph(R"({"vertices":[1,1],"edges":[]})"), SchemaError);
    EXPECT_THROW(parse_graph(R"({"vertices":[1,2],"edges":[[1,3]]})"), SchemaError);
    EXPECT_THROW(parse_graph(R"({"vertices":[1,2],"edges":[[1,1]]})"), SchemaError);
    EXPECT_THROW(parse_graph(R"({"vertices":[1],"edges":[],"extra":0})"), SchemaError);
    EXPECT_THROW(parse_graph(R"({"vertices":[-1],"edges":[]})"), SchemaError);
    EXPECT_THROW(parse_graph("{not json"), SchemaError);
}
