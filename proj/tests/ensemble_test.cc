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

#include "clusterstate/ensemble.h"

#include <sstream>

#include <gtest/gtest.h>

#include "clusterstate/rng.h"

using namespace clusterstate;

namespace {

ProtocolParams params_with(double p) {
    ProtocolParams pp;
    pp.p = p;
    return pp;
}

}  // namespace

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    RngStream a(5, 1), b(5, 1), c(5, 2), d(6, 1);
    auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
}

TEST(Rng, BernoulliMean) {
    RngStream rng(1);
    int hits = 0;
    const int n = 1000000;
    for (int k = 0; k < n; k++) {
        hits += attempt_cpf(rng, 0.5);
    }
    EXPECT_LT(std::abs(hits - n / 2), 3 * std::sqrt(n * 0.25));
    RngStream one(2);
    for (int k = 0; k < 100; k++) {
        EXPECT_TRUE(attempt_cpf(one, 1.0));
    }
}

TEST(Rng, GeometricAndBinomial) {
    RngStream rng(3);
    double s = 0;
    const int n = 200000;
    for (int k = 0; k < n; k++) {
        s += double(rng.geometric_failures(0.2));
    }
    EXPECT_NEAR(s / n, 4.0, 0.06);
    EXPECT_EQ(rng.geometric_failures(1.0), 0u);
    EXPECT_EQ(rng.binomial(10, 1.0), 10u);
    EXPECT_EQ(rng.binomial(0, 0.5), 0u);
}

TEST(Ensemble, SingleTrialEqualsTrace) {
    auto pp = params_with(0.3);
    auto r = run_ensemble(chain_task(80, pp), {1, 9, 0, true});
    RngStream rng(9, 0);
    auto [state, trace] = sim_build_chain(80, pp, rng);
    EXPECT_DOUBLE_EQ(r.stats.time.mean, double(trace.time_units));
    EXPECT_DOUBLE_EQ(r.stats.attempts.mean, double(trace.attempts));
    EXPECT_DOUBLE_EQ(r.stats.time.sd, 0);
    EXPECT_DOUBLE_EQ(r.stats.success_rate, 1);
    ASSERT_EQ(r.outcomes.size(), 1u);
    EXPECT_EQ(r.outcomes[0].stages.size(), trace.stage_breakdown.size());
}

TEST(Ensemble, ParallelMatchesSerialBitForBit) {
    auto pp = params_with(0.25);
    std::vector<EnsembleTask> tasks = {chain_task(120, pp), splice_task(50, 50, pp), small_chain_task(3, pp),
                                       assemble_task(LayoutSpec::square(3, 3), pp), cpf_task(pp)};
    for (const auto &task : tasks) {
        auto serial = run_ensemble_serial(task, {500, 42, 0, false});
        for (int threads : {1, 2, 4}) {
            auto par = run_ensemble(task, {500, 42, threads, false});
            EXPECT_EQ(stats_to_json(par.stats).dump(), stats_to_json(serial.stats).dump()) << task.name;
        }
    }
}

TEST(Ensemble, CpfMeanIsOneOverP) {
    auto r = run_ensemble(cpf_task(params_with(0.25)), {100000, 1, 0, false});
    EXPECT_LT(std::abs(r.stats.attempts.mean - 4), 3 * r.stats.attempts.se);
    EXPECT_LT(r.stats.attempts.ci_low, 4);
    EXPECT_GT(r.stats.attempts.ci_high, 4);
}

TEST(Ensemble, TimeScalesWithTa) {
    auto pp = params_with(0.5);
    pp.t_a = 2.5;
    auto r = run_ensemble(small_chain_task(1, pp), {1000, 3, 0, false});
    auto base = run_ensemble(small_chain_task(1, params_with(0.5)), {1000, 3, 0, false});
    EXPECT_NEAR(r.stats.time.mean, 2.5 * base.stats.time.mean, 1e-12 * r.stats.time.mean);
    EXPECT_DOUBLE_EQ(r.stats.attempts.mean, base.stats.attempts.mean);
}

TEST(Ensemble, RejectsZeroTrials) {
    EXPECT_THROW(run_ensemble(cpf_task(params_with(0.5)), {0, 1, 0, false}), std::invalid_argument);
}

TEST(Ensemble, JsonFieldOrder) {
    auto r = run_ensemble(splice_task(20, 20, params_with(0.5)), {10, 1, 0, false});
    auto j = stats_to_json(r.stats);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) {
        keys.push_back(it.key());
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"task", "trials", "seed", "time", "attempts", "length", "success_rate",
                                              "success"}));
    EXPECT_TRUE(j["length"].is_object());
    auto c = stats_to_json(run_ensemble(cpf_task(params_with(0.5)), {10, 1, 0, false}).stats);
    EXPECT_TRUE(c["length"].is_null());
}

TEST(Ensemble, TraceCsv) {
    auto r = run_ensemble(splice_task(20, 20, params_with(0.5)), {2, 1, 0, true});
    std::ostringstream os;
    write_trace_csv(os, r.outcomes);
    std::string text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "trial,stage,attempts,time_units,length,success");
    EXPECT_NE(text.find("\n0,splice,"), std::string::npos);
    EXPECT_NE(text.find("\n1,total,"), std::string::npos);
}
