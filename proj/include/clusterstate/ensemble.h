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
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "clusterstate/protocol.h"

namespace clusterstate {

struct TrialOutcome {
    std::uint64_t attempts = 0;
    std::uint64_t time_units = 0;
    bool success = true;
    std::optional<double> length;
    std::vector<StageCost> stages;
};

struct EnsembleTask {
    std::string name;
    double t_a = 1;
    std::function<TrialOutcome(RngStream &)> run;
};

/// Attempts until the first successful CPF.
EnsembleTask cpf_task(const ProtocolParams &params);
EnsembleTask small_chain_task(int level, const ProtocolParams &params);
/// Two fresh chains of main length n0a and n0b, spliced once; length is the merged length.
EnsembleTask splice_task(std::int64_t n0a, std::int64_t n0b, const ProtocolParams &params);
EnsembleTask chain_task(std::int64_t n, const ProtocolParams &params);
EnsembleTask star_task(std::int64_t n_l, const ProtocolParams &params);
/// Length is the number of connected site pairs.
EnsembleTask assemble_task(const LayoutSpec &layout, const ProtocolParams &params,
                           const AssembleOptions &options = {});

struct Moments {
    double mean = 0;
    double sd = 0;
    double se = 0;
    double ci_low = 0;
    double ci_high = 0;
};

struct EnsembleStats {
    std::string task;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    Moments time;
    Moments attempts;
    std::optional<Moments> length;
    double success_rate = 0;
    Moments success;
};

struct EnsembleOptions {
    std::uint64_t trials = 1000;
    std::uint64_t master_seed = 0;
    int threads = 0;  // 0: OpenMP default
    bool keep_traces = false;
};

struct EnsembleResult {
    EnsembleStats stats;
    std::vector<TrialOutcome> outcomes;  // per trial, when keep_traces is set
};

/// Trial k draws from RngStream(master_seed, k); results are reduced in trial
/// order, so they do not depend on the thread count.
EnsembleResult run_ensemble(const EnsembleTask &task, const EnsembleOptions &options);
EnsembleResult run_ensemble_serial(const EnsembleTask &task, const EnsembleOptions &options);

nlohmann::ordered_json moments_to_json(const Moments &m);
nlohmann::ordered_json stats_to_json(const EnsembleStats &s);
/// Columns: trial,stage,attempts,time_units,length,success (one "total" row per trial).
void write_trace_csv(std::ostream &os, const std::vector<TrialOutcome> &outcomes);

}  // namespace clusterstate
