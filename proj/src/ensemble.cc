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

#include <cmath>
#include <exception>

#include <omp.h>

namespace clusterstate {

namespace {

TrialOutcome from_trace(const SimTrace &t) {
    TrialOutcome o;
    o.attempts = t.attempts;
    o.time_units = t.time_units;
    o.success = t.succeeded;
    o.stages = t.stage_breakdown;
    return o;
}

// Welford accumulation in trial order.
class Accumulator {
   public:
    void add(double x) {
        ++n_;
        double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    Moments moments() const {
        Moments m;
        m.mean = mean_;
        if (n_ > 1) {
            m.sd = std::sqrt(m2_ / static_cast<double>(n_ - 1));
            m.se = m.sd / std::sqrt(static_cast<double>(n_));
        }
        m.ci_low = m.mean - 1.96 * m.se;
        m.ci_high = m.mean + 1.96 * m.se;
        return m;
    }

   private:
    std::uint64_t n_ = 0;
    double mean_ = 0;
    double m2_ = 0;
};

EnsembleResult reduce(const EnsembleTask &task, const EnsembleOptions &options, std::vector<TrialOutcome> outcomes) {
    Accumulator time, attempts, length, success;
    bool any_length = false;
    for (const auto &o : outcomes) {
        time.add(static_cast<double>(o.time_units) * task.t_a);
        attempts.add(static_cast<double>(o.attempts));
        success.add(o.success ? 1.0 : 0.0);
        if (o.length) {
            any_length = true;
            length.add(*o.length);
        }
    }
    EnsembleResult r;
    r.stats.task = task.name;
    r.stats.trials = options.trials;
    r.stats.master_seed = options.master_seed;
    r.stats.time = time.moments();
    r.stats.attempts = attempts.moments();
    if (any_length) {
        r.stats.length = length.moments();
    }
    r.stats.success = success.moments();
    r.stats.success_rate = r.stats.success.mean;
    if (options.keep_traces) {
        r.outcomes = std::move(outcomes);
    }
    return r;
}

void check_options(const EnsembleOptions &options) {
    if (options.trials < 1) {
        throw std::invalid_argument("ensemble needs at least one trial");
    }
}

TrialOutcome run_trial(const EnsembleTask &task, const EnsembleOptions &options, std::uint64_t k) {
    RngStream rng(options.master_seed, k);
    TrialOutcome o = task.run(rng);
    if (!options.keep_traces) {
        o.stages.clear();
        o.stages.shrink_to_fit();
    }
    return o;
}

}  // namespace

EnsembleTask cpf_task(const ProtocolParams &params) {
    params.validate();
    return {"cpf", params.t_a, [params](RngStream &rng) {
                TrialOutcome o;
                do {
                    if (++o.attempts > params.attempt_cap) {
                        throw AttemptCapExceeded("cpf: attempt cap exceeded");
                    }
                } while (!attempt_cpf(rng, params.p));
                o.time_units = o.attempts;
                o.stages.push_back({"cpf", o.attempts, o.time_units, 0, true});
                return o;
            }};
}

EnsembleTask small_chain_task(int level, const ProtocolParams &params) {
    params.validate();
    return {"small-chain", params.t_a, [level, params](RngStream &rng) {
                auto [state, trace] = sim_small_chain_state(level, params, rng);
                TrialOutcome o = from_trace(trace);
                o.length = static_cast<double>(state.main_length);
                return o;
            }};
}

EnsembleTask splice_task(std::int64_t n0a, std::int64_t n0b, const ProtocolParams &params) {
    params.validate();
    if (n0a < 1 || n0b < 1) {
        throw PreconditionError("splice inputs must be non-empty");
    }
    return {"splice", params.t_a, [n0a, n0b, params](RngStream &rng) {
                ChainState a{n0a, true, std::nullopt};
                ChainState b{n0b, true, std::nullopt};
                auto [merged, trace] = sim_splice(a, b, params, rng);
                TrialOutcome o = from_trace(trace);
                o.length = static_cast<double>(merged.main_length);
                return o;
            }};
}

EnsembleTask chain_task(std::int64_t n, const ProtocolParams &params) {
    params.validate();
    return {"chain", params.t_a, [n, params](RngStream &rng) {
                auto [state, trace] = sim_build_chain(n, params, rng);
                TrialOutcome o = from_trace(trace);
                o.length = static_cast<double>(state.main_length);
                return o;
            }};
}

EnsembleTask star_task(std::int64_t n_l, const ProtocolParams &params) {
    params.validate();
    return {"star", params.t_a, [n_l, params](RngStream &rng) {
                auto [star, trace] = sim_build_star(n_l, params, rng);
                TrialOutcome o = from_trace(trace);
                o.length = static_cast<double>(n_l);
                return o;
            }};
}

EnsembleTask assemble_task(const LayoutSpec &layout, const ProtocolParams &params, const AssembleOptions &options) {
    params.validate();
    layout.validate();
    return {"assemble", params.t_a, [layout, params, options](RngStream &rng) {
                auto res = sim_assemble(layout, params, rng, options);
                TrialOutcome o = from_trace(res.trace);
                o.length = static_cast<double>(res.pairs_connected);
                return o;
            }};
}

EnsembleResult run_ensemble_serial(const EnsembleTask &task, const EnsembleOptions &options) {
    check_options(options);
    std::vector<TrialOutcome> outcomes;
    outcomes.reserve(options.trials);
    for (std::uint64_t k = 0; k < options.trials; ++k) {
        outcomes.push_back(run_trial(task, options, k));
    }
    return reduce(task, options, std::move(outcomes));
}

EnsembleResult run_ensemble(const EnsembleTask &task, const EnsembleOptions &options) {
    check_options(options);
    std::vector<TrialOutcome> outcomes(options.trials);
    std::vector<std::exception_ptr> errors(options.trials);
    const auto n = static_cast<std::int64_t>(options.trials);
    int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
    for (std::int64_t k = 0; k < n; ++k) {
        try {
            outcomes[static_cast<std::size_t>(k)] = run_trial(task, options, static_cast<std::uint64_t>(k));
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    // Report the same error a serial run would hit first.
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return reduce(task, options, std::move(outcomes));
}

nlohmann::ordered_json moments_to_json(const Moments &m) {
    nlohmann::ordered_json j;
    j["mean"] = m.mean;
    j["sd"] = m.sd;
    j["se"] = m.se;
    j["ci95"] = {m.ci_low, m.ci_high};
    return j;
}

nlohmann::ordered_json stats_to_json(const EnsembleStats &s) {
    nlohmann::ordered_json j;
    j["task"] = s.task;
    j["trials"] = s.trials;
    j["seed"] = s.master_seed;
    j["time"] = moments_to_json(s.time);
    j["attempts"] = moments_to_json(s.attempts);
    j["length"] = s.length ? moments_to_json(*s.length) : nlohmann::ordered_json(nullptr);
    j["success_rate"] = s.success_rate;
    j["success"] = moments_to_json(s.success);
    return j;
}

void write_trace_csv(std::ostream &os, const std::vector<TrialOutcome> &outcomes) {
    os << "trial,stage,attempts,time_units,length,success\n";
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const auto &o = outcomes[k];
        for (const auto &s : o.stages) {
            os << k << ',' << s.stage << ',' << s.attempts << ',' << s.time_units << ',' << s.length << ','
               << (s.success ? 1 : 0) << '\n';
        }
        os << k << ",total," << o.attempts << ',' << o.time_units << ',';
        if (o.length) {
            os << *o.length;
        }
        os << ',' << (o.success ? 1 : 0) << '\n';
    }
}

}  // namespace clusterstate
