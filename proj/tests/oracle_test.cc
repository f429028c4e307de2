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

#include <gtest/gtest.h>

#include "clusterstate/tableau.h"
#include "frame_oracle.h"

using namespace clusterstate;

TEST(LcOrbit, SmallKnownSizes) {
    Graph single;
    single.add_vertex(0);
    EXPECT_EQ(lc_orbit(single).size(), 1u);
    // The connected graphs on three labeled vertices form one orbit: 3 paths + triangle.
    Graph p3;
    for (VertexId v : {0, 1, 2}) {
        p3.add_vertex(v);
    }
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    EXPECT_EQ(lc_orbit(p3).size(), 4u);
}

TEST(LcOrbit, CapAndOverflow) {
    Graph big;
    for (VertexId v = 0; v <= kMaxOrbitVertices; v++) {
        big.add_vertex(v);
    }
    EXPECT_THROW(lc_orbit(big), PreconditionError);
    Graph p4;
    for (VertexId v = 0; v < 4; v++) {
        p4.add_vertex(v);
        if (v) {
            p4.add_edge(v - 1, v);
        }
    }
    EXPECT_THROW(lc_orbit(p4, 2), OrbitOverflow);
}

TEST(VerifyRule, PathMiddleX) {
    Graph g;
    for (VertexId v : {1, 2, 3}) {
        g.add_vertex(v);
    }
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    EXPECT_TRUE(verify_measurement_rule(g, Basis::X, 2, VertexId{1}));
    EXPECT_TRUE(verify_measurement_rule(g, Basis::X, 2, VertexId{3}));
    EXPECT_FALSE(verify_measurement_rule(g, Basis::X, 2, VertexId{1}, XRule::ExistingEdges));
    EXPECT_TRUE(verify_measurement_rule(g, Basis::Y, 2));
    EXPECT_TRUE(verify_measurement_rule(g, Basis::Z, 2));
}

TEST(VerifySweep, CountsAndPasses) {
    // Connected labeled graphs on n = 1..5 vertices: 1, 1, 4, 38, 728.
    const std::uint64_t graphs[] = {1, 2, 6, 44, 772};
    for (std::size_t n = 1; n <= 5; n++) {
        auto s = verify_sweep_serial(n);
        EXPECT_EQ(s.graphs, graphs[n - 1]) << n;
        EXPECT_TRUE(s.ok()) << n;
        EXPECT_EQ(s.passed, s.cases);
    }
    EXPECT_EQ(verify_sweep_serial(3).cases, 51u);
}

TEST(VerifySweep, ParallelMatchesSerial) {
    for (std::size_t n = 1; n <= 5; n++) {
        EXPECT_EQ(verify_sweep(n), verify_sweep_serial(n)) << n;
        EXPECT_EQ(verify_sweep(n, XRule::ExistingEdges), verify_sweep_serial(n, XRule::ExistingEdges)) << n;
    }
}

TEST(VerifySweep, NegativeControlFindsThreePath) {
    auto s = verify_sweep_serial(3, XRule::ExistingEdges);
    EXPECT_FALSE(s.ok());
    ASSERT_TRUE(s.first_failure.has_value());
    Graph g = s.first_failure->graph();
    EXPECT_EQ(g.num_active(), 3u);
    EXPECT_EQ(g.num_edges(), 2u);
    EXPECT_EQ(s.first_failure->basis, Basis::X);
}

TEST(VerifySweep, RejectsOversize) {
    EXPECT_THROW(verify_sweep(kMaxVerifyVertices + 1), PreconditionError);
}

TEST(StarOracle, ScheduleReplayMatchesReduction) {
    for (std::size_t n : {1, 2, 3, 5}) {
        Graph chain = build_armed_chain(n);
        auto replay = oracle_support::replay_star_schedule(chain);
        EXPECT_EQ(canonical_form(replay.graph().active_subgraph()),
                  canonical_form(reduce_chain_to_star(chain).active_subgraph()))
            << n;
    }
}

TEST(StarOracle, ReductionIsLcEquivalentToMeasuredChain) {
    for (std::size_t n : {1, 2, 3}) {
        Graph chain = build_armed_chain(n);
        Graph star = reduce_chain_to_star(chain);
        auto replay = oracle_support::replay_star_schedule(chain);
        auto orbit = lc_orbit(replay.physical_graph());
        EXPECT_TRUE(orbit.count(canonical_form(star.active_subgraph()))) << n;
    }
}

// Without the frame rotation the old hubs would be measured in Z physically,
// which cuts the center off its arms.
TEST(StarOracle, NaiveBasesBreakTheStar) {
    Graph chain = build_armed_chain(2);
    Graph star = reduce_chain_to_star(chain);
    auto t = tableau_from_graph(chain);
    auto order = armed_chain_order(chain);
    for (auto v : star.measured()) {
        t = measure_pauli(t, t.index_of(v), v == order[1] ? Basis::X : Basis::Z).tableau;
    }
    std::vector<std::size_t> keep;
    for (auto v : star.active_vertices()) {
        keep.push_back(t.index_of(v));
    }
    Graph naive = extract_graph(restrict_to(t, keep)).graph;
    EXPECT_FALSE(lc_orbit(naive).count(canonical_form(star.active_subgraph())));
}
