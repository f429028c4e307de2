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

#include "clusterstate/graph_json.h"

namespace clusterstate {

nlohmann::ordered_json graph_to_json(const Graph &g) {
    nlohmann::ordered_json doc;
    doc["vertices"] = g.active_vertices();
    auto edges = nlohmann::ordered_json::array();
    for (const auto &[a, b] : g.edges()) {
        edges.push_back({a, b});
    }
    doc["edges"] = edges;
    doc["measured"] = std::vector<VertexId>(g.measured().begin(), g.measured().end());
    auto labels = nlohmann::ordered_json::object();
    for (const auto &[v, r] : g.roles()) {
        labels[std::to_string(v)] = role_name(r);
    }
    doc["labels"] = labels;
    return doc;
}

namespace {

VertexId as_id(const nlohmann::json &value, const char *where) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw SchemaError(std::string(where) + ": vertex ids must be non-negative integers");
    }
    return value.get<VertexId>();
}

}  // namespace

Graph graph_from_json(const nlohmann::json &doc) {
    if (!doc.is_object()) {
        throw SchemaError("graph document must be a JSON object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (key != "vertices" && key != "edges" && key != "measured" && key != "labels") {
            throw SchemaError("unexpected key '" + key + "' in graph document");
        }
    }
    if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
        throw SchemaError("graph document needs a 'vertices' array");
    }
    Graph g;
    std::set<VertexId> measured;
    if (doc.contains("measured")) {
        if (!doc["measured"].is_array()) {
            throw SchemaError("'measured' must be an array");
        }
        for (const auto &v : doc["measured"]) {
            measured.insert(as_id(v, "measured"));
        }
    }
    for (const auto &v : doc["vertices"]) {
        auto id = as_id(v, "vertices");
        if (measured.count(id)) {
            throw SchemaError("vertex " + std::to_string(id) + " is listed both active and measured");
        }
        if (g.is_active(id)) {
            throw SchemaError("duplicate vertex " + std::to_string(id));
        }
        g.add_vertex(id);
    }
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) {
            throw SchemaError("'edges' must be an array");
        }
        for (const auto &e : doc["edges"]) {
            if (!e.is_array() || e.size() != 2) {
                throw SchemaError("each edge must be a two-element array");
            }
            auto a = as_id(e[0], "edges");
            auto b = as_id(e[1], "edges");
            if (a == b || !g.is_active(a) || !g.is_active(b)) {
                throw SchemaError("edge [" + std::to_string(a) + "," + std::to_string(b) +
                                  "] must join two distinct active vertices");
            }
            if (g.has_edge(a, b)) {
                throw SchemaError("duplicate edge [" + std::to_string(a) + "," + std::to_string(b) + "]");
            }
            g.add_edge(a, b);
        }
    }
    // Measured vertices are recorded by measuring isolated placeholders.
    for (auto v : measured) {
        g.add_vertex(v);
        g.measure_z_in_place(v);
    }
    if (doc.contains("labels")) {
        if (!doc["labels"].is_object()) {
            throw SchemaError("'labels' must be an object");
        }
        for (const auto &[key, value] : doc["labels"].items()) {
            VertexId id;
            try {
                std::size_t used = 0;
                id = std::stoull(key, &used);
                if (used != key.size()) {
                    throw std::invalid_argument(key);
                }
            } catch (const std::exception &) {
                throw SchemaError("label key '" + key + "' is not a vertex id");
            }
            if (!value.is_string()) {
                throw SchemaError("label of vertex " + key + " must be a string");
            }
            try {
                g.set_role(id, parse_role(value.get<std::string>()));
            } catch (const std::invalid_argument &ex) {
                throw SchemaError(ex.what());
            }
        }
    }
    return g;
}

std::string dump_graph(const Graph &g) {
    return graph_to_json(g).dump();
}

Graph parse_graph(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &ex) {
        throw SchemaError(std::string("malformed JSON: ") + ex.what());
    }
    return graph_from_json(doc);
}

}  // namespace clusterstate
