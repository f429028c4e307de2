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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cli_internal.h"
#include "clusterstate/ensemble.h"
#include "clusterstate/graph_json.h"
#include "clusterstate/layout.h"
#include "clusterstate/protocol.h"

namespace clusterstate::cli {

using nlohmann::ordered_json;

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
    return std::string(buf, res.ptr);
}

namespace {

ordered_json opt(const std::optional<double> &v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json finite_or_null(double v) {
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << text;
}

LayoutSpec layout_for(const SimulateArgs &a) {
    LayoutSpec::Boundary b;
    if (a.boundary == "open") {
        b = LayoutSpec::Boundary::Open;
    } else if (a.boundary == "toroidal" || a.boundary == "torus") {
        b = LayoutSpec::Boundary::Toroidal;
    } else {
        throw DomainError("boundary must be open or toroidal");
    }
    return a.task == "hex" ? LayoutSpec::hexagonal(a.rows, a.cols, b) : LayoutSpec::square(a.rows, a.cols, b);
}

}  // namespace

nlohmann::ordered_json report_to_json(const CostReport &r) {
    ordered_json j;
    j["formula"] = r.formula_id;
    j["asymptotic"] = r.asymptotic;
    j["time"] = r.time;
    j["attempts"] = finite_or_null(r.attempts);
    ordered_json in;
    in["p"] = r.p;
    in["t_a"] = r.t_a;
    in["n"] = opt(r.n);
    in["epsilon"] = opt(r.epsilon);
    in["lnterm"] = opt(r.log_term);
    in["degree"] = opt(r.degree);
    j["inputs"] = in;
    j["time_terms"] = r.time_terms;
    j["attempt_terms"] = r.attempt_terms;
    j["exact_time"] = opt(r.exact_time);
    j["exact_attempts"] = opt(r.exact_attempts);
    j["warnings"] = r.warnings;
    return j;
}

void add_simulate(CLI::App &app, SimulateArgs &a) {
    app.add_option("task", a.task, "chain|star|lattice|hex|splice|small-chain|cpf")
        ->required()
        ->check(CLI::IsMember({"chain", "star", "lattice", "hex", "splice", "small-chain", "cpf"}));
    app.add_option("--n", a.n, "target main-chain length (chain)");
    app.add_option("--arms", a.arms, "arms per unit n_l (star; lattice/hex override)");
    app.add_option("--level", a.level, "doubling level (small-chain)");
    app.add_option("--n0", a.n0, "input chain length (splice)");
    app.add_option("--n0b", a.n0b, "second input length (splice; default n0)");
    app.add_option("--p", a.p, "CPF success probability");
    app.add_option("--t-a", a.t_a, "duration of one CPF attempt");
    app.add_option("--epsilon", a.epsilon, "overall failure budget");
    app.add_option("--rows", a.rows);
    app.add_option("--cols", a.cols);
    app.add_option("--boundary", a.boundary, "open|toroidal");
    app.add_option("--trials", a.trials);
    app.add_option("--seed", a.seed);
    app.add_option("--threads", a.threads, "worker threads (0: default)");
    app.add_option("--timing", a.timing, "mirrored|independent")->check(CLI::IsMember({"mirrored", "independent"}));
    app.add_flag("--topology", a.topology, "maintain explicit graphs");
    app.add_option("--attempt-cap", a.attempt_cap);
    app.add_option("--trace-csv", a.trace_csv, "write per-trial stage rows here");
    app.add_option("--graph-out", a.graph_out, "write trial 0's final graph here (needs --topology)");
}

std::string run_simulate(const SimulateArgs &a) {
    ProtocolParams pp;
    pp.p = a.p;
    pp.t_a = a.t_a;
    pp.epsilon = a.epsilon;
    pp.master_seed = a.seed;
    pp.timing = parse_timing(a.timing);
    pp.topology = a.topology;
    pp.attempt_cap = a.attempt_cap;
    pp.validate();
    if (a.trials < 1) {
        throw DomainError("--trials must be at least 1");
    }

    ordered_json params;
    params["p"] = pp.p;
    params["t_a"] = pp.t_a;
    params["epsilon"] = pp.epsilon;
    params["seed"] = a.seed;
    params["trials"] = a.trials;
    params["timing"] = a.timing;
    params["topology"] = a.topology;
    ordered_json analytic = nullptr;

    EnsembleTask task;
    if (a.task == "chain") {
        params["n"] = a.n;
        task = chain_task(a.n, pp);
        analytic = ordered_json::object();
        analytic["recursion"] = report_to_json(chain_recursion_cost(a.n, pp.p, pp.t_a));
        if (static_cast<double>(a.n) > critical_length(pp.p)) {
            analytic["closed_form"] = report_to_json(chain_cost(static_cast<double>(a.n), pp.p, pp.t_a));
        }
    } else if (a.task == "star") {
        std::int64_t nl = a.arms > 0 ? a.arms : 4;
        params["arms"] = nl;
        task = star_task(nl, pp);
        analytic = ordered_json::object();
        analytic["recursion"] = report_to_json(chain_recursion_cost(2 * nl, pp.p, pp.t_a));
    } else if (a.task == "lattice" || a.task == "hex") {
        LayoutSpec layout = layout_for(a);
        layout.validate();
        AssembleOptions options;
        if (a.arms > 0) {
            options.arms = a.arms;
        }
        std::int64_t nl = assembly_arms(layout, pp, options);
        params["layout"] = layout.describe();
        params["arms"] = nl;
        params["attempts_per_pair"] = nl / static_cast<std::int64_t>(layout.max_degree());
        task = assemble_task(layout, pp, options);
        auto sites = static_cast<double>(layout.num_sites());
        analytic = ordered_json::object();
        analytic["pair_success"] = pair_success(pp.p, static_cast<double>(nl / static_cast<std::int64_t>(layout.max_degree())));
        analytic["success_probability"] =
            assembly_success(pp.p, static_cast<double>(nl / static_cast<std::int64_t>(layout.max_degree())),
                             static_cast<double>(layout.site_graph().num_edges()));
        if (pp.p < 1) {
            analytic["closed_form"] = report_to_json(a.task == "hex" ? hex_cost(sites, pp.epsilon, pp.p, pp.t_a)
                                                                     : lattice_cost(sites, pp.epsilon, pp.p, pp.t_a));
        }
    } else if (a.task == "splice") {
        std::int64_t nb = a.n0b > 0 ? a.n0b : a.n0;
        params["n0"] = a.n0;
        params["n0b"] = nb;
        task = splice_task(a.n0, nb, pp);
        if (nb == a.n0 && a.n0 >= 2 && a.n0 % 2 == 0) {
            auto len = expected_splice_length(a.n0, pp.p);
            analytic = ordered_json::object();
            analytic["length_exact"] = len.exact;
            analytic["length_asymptotic"] = len.asymptotic;
        }
    } else if (a.task == "small-chain") {
        params["level"] = a.level;
        if (a.level < 0 || a.level > 40) {
            throw DomainError("--level must lie in [0, 40]");
        }
        task = small_chain_task(static_cast<int>(a.level), pp);
        auto exact = small_chain_exact(static_cast<int>(a.level), pp.p, pp.t_a);
        analytic = ordered_json::object();
        analytic["time"] = exact.time;
        analytic["attempts"] = exact.attempts;
    } else {
        task = cpf_task(pp);
        analytic = ordered_json::object();
        analytic["attempts"] = 1 / pp.p;
    }

    EnsembleOptions options;
    options.trials = a.trials;
    options.master_seed = a.seed;
    options.threads = a.threads;
    options.keep_traces = !a.trace_csv.empty();
    EnsembleResult result = run_ensemble(task, options);

    if (!a.trace_csv.empty()) {
        std::ostringstream csv;
        write_trace_csv(csv, result.outcomes);
        write_file(a.trace_csv, csv.str());
    }
    if (!a.graph_out.empty()) {
        if (!a.topology) {
            throw DomainError("--graph-out needs --topology");
        }
        RngStream rng(a.seed, 0);
        std::optional<Graph> g;
        if (a.task == "lattice" || a.task == "hex") {
            AssembleOptions o;
            if (a.arms > 0) {
                o.arms = a.arms;
            }
            g = sim_assemble(layout_for(a), pp, rng, o).graph;
        } else if (a.task == "chain") {
            g = sim_build_chain(a.n, pp, rng).second.final_graph;
        } else if (a.task == "star") {
            g = sim_build_star(a.arms > 0 ? a.arms : 4, pp, rng).first;
        } else if (a.task == "small-chain") {
            g = sim_small_chain(static_cast<int>(a.level), pp, rng).final_graph;
        }
        if (!g) {
            throw DomainError("task '" + a.task + "' produces no graph");
        }
        write_file(a.graph_out, dump_graph(*g) + "\n");
    }

    ordered_json doc;
    doc["command"] = "simulate";
    doc["task"] = a.task;
    doc["params"] = params;
    doc["stats"] = stats_to_json(result.stats);
    doc["analytic"] = analytic;
    return doc.dump(2) + "\n";
}

void add_analytic(CLI::App &app, AnalyticArgs &a) {
    app.add_option("kind", a.kind)
        ->required()
        ->check(CLI::IsMember({"critical-length", "splice-length", "recursion", "small-chain", "chain",
                               "chain-recursion", "arms", "pair-success", "lattice", "hex", "duan"}));
    app.add_option("--p", a.p);
    app.add_option("--t-a", a.t_a);
    app.add_option("--n", a.n, "chain length");
    app.add_option("--sites", a.sites, "number of lattice sites N");
    app.add_option("--epsilon", a.epsilon);
    app.add_option("--lnterm", a.lnterm, "ln(pairs/epsilon), instead of --sites/--epsilon");
    app.add_option("--n0", a.n0);
    app.add_option("--rounds", a.rounds);
    app.add_option("--t0", a.t0);
    app.add_option("--m0", a.m0);
    app.add_option("--degree", a.degree);
    app.add_option("--pairs", a.pairs);
    app.add_option("--attempts", a.attempts, "attempts per pair");
    app.add_option("--level", a.level);
}

std::string run_analytic(const AnalyticArgs &a) {
    ordered_json doc;
    doc["command"] = "analytic";
    doc["kind"] = a.kind;
    auto need = [](const std::optional<double> &v, const char *flag) {
        if (!v) {
            throw DomainError(std::string("missing ") + flag);
        }
        return *v;
    };
    // Lattice-family formulas take either --lnterm or --sites with --epsilon.
    auto lattice_like = [&](bool hex) {
        if (a.lnterm) {
            return hex ? hex_cost_from_log(*a.lnterm, a.p, a.sites, a.t_a)
                       : lattice_cost_from_log(*a.lnterm, a.p, a.sites, a.t_a);
        }
        double n = need(a.sites, "--sites (or --lnterm)");
        double e = need(a.epsilon, "--epsilon");
        return hex ? hex_cost(n, e, a.p, a.t_a) : lattice_cost(n, e, a.p, a.t_a);
    };

    if (a.kind == "critical-length") {
        doc["p"] = a.p;
        doc["value"] = critical_length(a.p);
    } else if (a.kind == "splice-length") {
        auto r = expected_splice_length(a.n0, a.p);
        doc["n0"] = a.n0;
        doc["p"] = a.p;
        doc["exact"] = r.exact;
        doc["asymptotic"] = r.asymptotic;
    } else if (a.kind == "recursion") {
        auto r = recursion_solve(a.rounds, static_cast<double>(a.n0), a.p, a.t0, a.m0, a.t_a);
        doc["rounds"] = a.rounds;
        doc["length"] = r.length;
        doc["time"] = r.time;
        doc["attempts"] = r.attempts;
    } else if (a.kind == "small-chain") {
        double n = need(a.n, "--n");
        if (n != std::floor(n)) {
            throw DomainError("--n must be an integer power of two");
        }
        doc["report"] = report_to_json(small_chain_cost(static_cast<std::int64_t>(n), a.p, a.t_a));
    } else if (a.kind == "chain") {
        doc["report"] = report_to_json(chain_cost(need(a.n, "--n"), a.p, a.t_a));
    } else if (a.kind == "chain-recursion") {
        doc["report"] = report_to_json(chain_recursion_cost(static_cast<std::int64_t>(need(a.n, "--n")), a.p, a.t_a));
    } else if (a.kind == "arms") {
        double n = need(a.sites, "--sites");
        double e = need(a.epsilon, "--epsilon");
        doc["raw"] = arms_required_raw(n, e, a.p, a.degree, a.pairs);
        doc["arms"] = arms_required(n, e, a.p, a.degree, a.pairs);
    } else if (a.kind == "pair-success") {
        doc["p"] = a.p;
        doc["attempts"] = a.attempts;
        doc["value"] = pair_success(a.p, a.attempts);
    } else if (a.kind == "lattice" || a.kind == "hex") {
        doc["report"] = report_to_json(lattice_like(a.kind == "hex"));
    } else {
        CostReport r = a.lnterm ? duan_time_from_log(*a.lnterm, a.p, a.t_a)
                                : duan_time(need(a.sites, "--sites (or --lnterm)"), need(a.epsilon, "--epsilon"),
                                            a.p, a.t_a);
        doc["report"] = report_to_json(r);
    }
    return doc.dump(2) + "\n";
}

void add_sweep(CLI::App &app, SweepArgs &a) {
    app.add_option("kind", a.kind)->required()->check(CLI::IsMember({"figure3a", "figure3b", "custom"}));
    app.add_option("--axis", a.axis, "custom sweeps: lnterm|p")->check(CLI::IsMember({"lnterm", "p"}));
    app.add_option("--fixed", a.fixed, "custom sweeps: the value held fixed (p or lnterm)");
    app.add_option("--from", a.from);
    app.add_option("--to", a.to);
    app.add_option("--steps", a.steps);
    app.add_option("--t-a", a.t_a);
    app.add_option("--format", a.format)->check(CLI::IsMember({"csv", "json"}));
}

std::string run_sweep(const SweepArgs &a) {
    SweepSpec spec;
    if (a.kind == "figure3a") {
        spec = SweepSpec::figure3a();
    } else if (a.kind == "figure3b") {
        spec = SweepSpec::figure3b();
    } else {
        spec.axis = a.axis == "p" ? SweepSpec::Axis::P : SweepSpec::Axis::LogTerm;
        spec.fixed = a.fixed;
        spec.from = a.from;
        spec.to = a.to;
        spec.steps = a.steps;
    }
    spec.t_a = a.t_a;
    auto rows = comparison_table(spec);
    if (a.format == "json") {
        ordered_json doc = ordered_json::array();
        for (const auto &r : rows) {
            doc.push_back({{"x", r.x}, {"T1", r.t1}, {"T2", r.t2}, {"ratio", r.ratio},
                           {"term1", r.term1}, {"term2", r.term2}, {"term3", r.term3}});
        }
        return doc.dump(2) + "\n";
    }
    std::string csv = "x,T1,T2,ratio,term1,term2,term3\n";
    for (const auto &r : rows) {
        for (double v : {r.x, r.t1, r.t2, r.ratio, r.term1, r.term2}) {
            csv += format_number(v) + ",";
        }
        csv += format_number(r.term3) + "\n";
    }
    return csv;
}

}  // namespace clusterstate::cli
