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

#include <string>

#include "clusterstate/graph.h"
#include "json.hpp"

namespace clusterstate {

/// Raised when a document does not match the graph JSON schema.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// {"vertices":[...],"edges":[[a,b],...],"measured":[...],"labels":{"<id>":"<role>"}}
// Output arrays are sorted ascending, edges listed with the smaller id first.
nlohmann::ordered_json graph_to_json(const Graph &g);
Graph graph_from_json(const nlohmann::json &doc);

std::string dump_graph(const Graph &g);
Graph parse_graph(const std::string &text);

}  // namespace clusterstate
