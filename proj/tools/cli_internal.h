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
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "clusterstate/analytics.h"
#include "json.hpp"

namespace clusterstate::cli {

/// Where a subcommand writes its primary output.
struct Sink {
    std::ostream *stream = nullptr;
    std::string path;

    void write(const std::string &text) const;
};

struct SimulateArgs {
    std::string task;
    std::int64_t n = 200;
    std::int64_t arms = 0;  // 0: derive from epsilon
    std::int64_t level = 1;
    std::int64_t n0 = 50;
    std::int64_t n0b = 0;   // 0: same as n0
    double p = 0.25;
    double t_a = 1;
    double epsilon = 0.1;
    std::size_t rows = 4;
    std::size_t cols = 4;
    std::string boundary = "open";
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string timing = "mirrored";
    bool topology = false;
    std::uint64_t attempt_cap = std::uint64_t{1} << 62;
    std::string trace_csv;
    std::string graph_out;
};

struct AnalyticArgs {
    std::string kind;
    double p = 0.25;
    double t_a = 1;
    std::optional<double> n;
    std::optional<double> sites;
    std::optional<double> epsilon;
    std::optional<double> lnterm;
    std::int64_t n0 = 50;
    int rounds = 0;
    double t0 = 0;
    double m0 = 0;
    int degree = 4;
    std::optional<double> pairs;
    double attempts = 4;
    int level = 1;
};

struct SweepArgs {
    std::string kind;
    std::string axis = "lnterm";
    double fixed = 0.25;
    double from = 5;
    double to = 50;
    int steps = 46;
    double t_a = 1;
    std::string format = "csv";
};

void add_simulate(CLI::App &app, SimulateArgs &args);
void add_analytic(CLI::App &app, AnalyticArgs &args);
void add_sweep(CLI::App &app, SweepArgs &args);

std::string run_simulate(const SimulateArgs &args);
std::string run_analytic(const AnalyticArgs &args);
std::string run_sweep(const SweepArgs &args);

nlohmann::ordered_json report_to_json(const CostReport &r);
/// %.10g, independent of locale.
std::string format_number(double v);

}  // namespace clusterstate::cli
