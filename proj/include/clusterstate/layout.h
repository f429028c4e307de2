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
#include <string>

#include "clusterstate/graph.h"

namespace clusterstate {

/// Target 2-D arrangement of star units: one site per unit, one edge per
/// pair of sites that must be connected.
struct LayoutSpec {
    enum class Kind : std::uint8_t { Square, Hexagonal, Custom };
    enum class Boundary : std::uint8_t { Open, Toroidal };

    Kind kind = Kind::Square;
    std::size_t rows = 0;
    std::size_t cols = 0;
    Boundary boundary = Boundary::Open;
    Graph custom_sites;  // used when kind == Custom

    static LayoutSpec square(std::size_t rows, std::size_t cols, Boundary b = Boundary::Open);
    /// Brick-wall honeycomb: horizontal bonds along rows, a vertical bond below
    /// (r, c) whenever r + c is even.
    static LayoutSpec hexagonal(std::size_t rows, std::size_t cols, Boundary b = Boundary::Open);
    static LayoutSpec custom(Graph sites);

    /// Throws PreconditionError when the site graph is empty, disconnected or malformed.
    void validate() const;
    Graph site_graph() const;
    std::size_t num_sites() const;
    /// Largest site degree d; arms are split evenly among d directions.
    std::size_t max_degree() const;
    /// Pair count used by the closed-form arm estimate: 2N (square), 3N/2 (hexagonal),
    /// the true edge count otherwise.
    double analytic_pairs() const;
    std::string describe() const;
};

}  // namespace clusterstate
