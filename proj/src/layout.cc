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

#include "clusterstate/layout.h"

#include <deque>

namespace clusterstate {

LayoutSpec LayoutSpec::square(std::size_t rows, std::size_t cols, Boundary b) {
    LayoutSpec s;
    s.kind = Kind::Square;
    s.rows = rows;
    s.cols = cols;
    s.boundary = b;
    return s;
}

LayoutSpec LayoutSpec::hexagonal(std::size_t rows, std::size_t cols, Boundary b) {
    LayoutSpec s = square(rows, cols, b);
    s.kind = Kind::Hexagonal;
    return s;
}

LayoutSpec LayoutSpec::custom(Graph sites) {
    LayoutSpec s;
    s.kind = Kind::Custom;
    s.custom_sites = std::move(sites).active_subgraph();
    return s;
}

namespace {

bool connected(const Graph &g) {
    auto vs = g.active_vertices();
    if (vs.empty()) {
        return false;
    }
    std::set<VertexId> seen{vs.front()};
    std::deque<VertexId> queue{vs.front()};
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto u : g.neighbors(v)) {
            if (seen.insert(u).second) {
                queue.push_back(u);
            }
        }
    }
    return seen.size() == vs.size();
}

}  // namespace

void LayoutSpec::validate() const {
    if (kind == Kind::Custom) {
        if (custom_sites.num_active() < 2) {
            throw PreconditionError("custom layout needs at least two sites");
        }
        if (!connected(custom_sites)) {
            throw PreconditionError("custom layout site graph must be connected");
        }
        return;
    }
    if (rows * cols < 2) {
        throw PreconditionError("layout needs at least two sites");
    }
    if (boundary == Boundary::Toroidal) {
        if (kind == Kind::Square && (rows < 3 || cols < 3)) {
            throw PreconditionError("toroidal square layout needs rows, cols >= 3");
        }
        if (kind == Kind::Hexagonal && (rows < 2 || rows % 2 || cols < 4 || cols % 2)) {
            throw PreconditionError("toroidal hexagonal layout needs even rows >= 2 and even cols >= 4");
        }
    }
    if (!connected(site_graph())) {
        throw PreconditionError("layout site graph is disconnected");
    }
}

Graph LayoutSpec::site_graph() const {
    if (kind == Kind::Custom) {
        return custom_sites;
    }
    Graph g;
    auto id = [&](std::size_t r, std::size_t c) { return VertexId(r * cols + c); };
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            g.add_vertex(id(r, c));
        }
    }
    const bool torus = boundary == Boundary::Toroidal;
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            if (c + 1 < cols || torus) {
                auto other = id(r, (c + 1) % cols);
                if (other != id(r, c)) {
                    g.add_edge(id(r, c), other);
                }
            }
            bool down = kind == Kind::Square || (r + c) % 2 == 0;
            if (down && (r + 1 < rows || torus)) {
                auto other = id((r + 1) % rows, c);
                if (other != id(r, c)) {
                    g.add_edge(id(r, c), other);
                }
            }
        }
    }
    return g;
}

std::size_t LayoutSpec::num_sites() const {
    return kind == Kind::Custom ? custom_sites.num_active() : rows * cols;
}

std::size_t LayoutSpec::max_degree() const {
    auto g = site_graph();
    std::size_t d = 0;
    for (auto v : g.active_vertices()) {
        d = std::max(d, g.degree(v));
    }
    return d;
}

double LayoutSpec::analytic_pairs() const {
    const double n = double(num_sites());
    switch (kind) {
        case Kind::Square:
            return 2.0 * n;
        case Kind::Hexagonal:
            return 1.5 * n;
        case Kind::Custom:
            return double(custom_sites.num_edges());
    }
    return 0;
}

std::string LayoutSpec::describe() const {
    std::string b = boundary == Boundary::Open ? "open" : "toroidal";
    switch (kind) {
        case Kind::Square:
            return "square " + std::to_string(rows) + "x" + std::to_string(cols) + " " + b;
        case Kind::Hexagonal:
            return "hexagonal " + std::to_string(rows) + "x" + std::to_string(cols) + " " + b;
        case Kind::Custom:
            return "custom " + std::to_string(num_sites()) + " sites";
    }
    return "?";
}

}  // namespace clusterstate
