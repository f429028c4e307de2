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

#include "cli.h"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <omp.h>

#include "cli_internal.h"
#include "clusterstate/analytics.h"
#include "clusterstate/graph.h"
#include "clusterstate/graph_json.h"
#include "clusterstate/oracle.h"
#include "clusterstate/protocol.h"

namespace clusterstate::cli {

void Sink::write(const std::string &text) const {
    if (path.empty() || path == "-") {
        *stream << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << text;
}

namespace {

struct MeasureArgs {
    std::string in = "-";
    std::string basis;
    VertexId qubit = 0;
    std::optional<VertexId> special;
    std::string rule = "complete";
};

struct BuildArgs {
    std::string kind;
    std::int64_t arms = 1;
    VertexId first_id = 0;
};

struct VerifyArgs {
    std::size_t max_vertices = 4;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string fault;
};

std::string read_input(const std::string &path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw SchemaError("cannot read '" + path + "'");
    }
    return std::string(std::istreambuf_iterator<char>(f), {});
}

std::string run_measure(const MeasureArgs &a) {
    Graph g = parse_graph(read_input(a.in));
    Basis basis = parse_basis(a.basis);
    XRule rule = a.rule == "existing" ? XRule::ExistingEdges : XRule::CompletePairs;
    Graph out = measure(std::move(g), basis, a.qubit, a.special, rule);
    return graph_to_json(out).dump(2) + "\n";
}

std::string run_build(const BuildArgs &a) {
    if (a.arms < 1) {
        throw PreconditionError("build: --arms must be at least 1");
    }
    Graph g = build_armed_chain(static_cast<std::size_t>(a.arms), a.first_id);
    if (a.kind == "star") {
        g = reduce_chain_to_star(std::move(g)).active_subgraph();
    }
    return graph_to_json(g).dump(2) + "\n";
}

int run_verify(const VerifyArgs &a, const Sink &sink) {
    if (a.max_vertices < 1 || a.max_vertices > kMaxVerifyVertices) {
        throw DomainError("--max-vertices must lie in [1, " + std::to_string(kMaxVerifyVertices) + "]");
    }
    if (a.threads > 0) {
        omp_set_num_threads(a.threads);
    }
    XRule rule = a.fault == "existing-edges" ? XRule::ExistingEdges : XRule::CompletePairs;
    VerifySummary s = verify_sweep(a.max_vertices, rule);
    std::ostringstream os;
    os << "verify max_vertices=" << a.max_vertices << " rule="
       << (rule == XRule::CompletePairs ? "complete-pairs" : "existing-edges") << "\n";
    os << "graphs " << s.graphs << " cases " << s.cases << " passed " << s.passed << " failed " << s.failed << "\n";
    if (s.first_failure) {
        const auto &c = *s.first_failure;
        os << "counterexample vertex " << static_cast<int>(c.vertex) << " basis " << basis_name(c.basis);
        if (c.special) {
            os << " special " << static_cast<int>(*c.special);
        }
        os << "\n" << graph_to_json(c.graph()).dump() << "\n";
    }
    sink.write(os.str());
    return s.ok() ? kOk : kVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Cluster-state construction simulator and cost model"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write primary output to this file");

    MeasureArgs measure_args;
    auto *measure_cmd = app.add_subcommand("measure", "apply a single-qubit Pauli measurement rule to a graph");
    measure_cmd->add_option("--in", measure_args.in, "graph JSON file ('-' for stdin)");
    measure_cmd->add_option("--basis", measure_args.basis, "x|y|z")->required();
    measure_cmd->add_option("--qubit", measure_args.qubit)->required();
    measure_cmd->add_option("--special", measure_args.special, "special neighbor for X");
    measure_cmd->add_option("--rule", measure_args.rule, "X rule: complete|existing")
        ->check(CLI::IsMember({"complete", "existing"}));

    BuildArgs build_args;
    auto *build_cmd = app.add_subcommand("build", "emit an armed chain or a star unit");
    build_cmd->add_option("kind", build_args.kind)->required()->check(CLI::IsMember({"armed-chain", "star"}));
    build_cmd->add_option("--arms", build_args.arms);
    build_cmd->add_option("--first-id", build_args.first_id);

    SimulateArgs sim_args;
    auto *sim_cmd = app.add_subcommand("simulate", "Monte Carlo ensemble of a construction protocol");
    add_simulate(*sim_cmd, sim_args);

    AnalyticArgs analytic_args;
    auto *analytic_cmd = app.add_subcommand("analytic", "evaluate a closed-form cost");
    add_analytic(*analytic_cmd, analytic_args);

    SweepArgs sweep_args;
    auto *sweep_cmd = app.add_subcommand("sweep", "comparison table against the cross-based scheme");
    add_sweep(*sweep_cmd, sweep_args);

    VerifyArgs verify_args;
    auto *verify_cmd = app.add_subcommand("verify", "check the measurement rules against the stabilizer oracle");
    verify_cmd->add_option("--max-vertices", verify_args.max_vertices);
    verify_cmd->add_option("--seed", verify_args.seed, "accepted for uniformity; the sweep is exhaustive");
    verify_cmd->add_option("--threads", verify_args.threads);
    verify_cmd->add_option("--fault", verify_args.fault, "inject a known-wrong rule: existing-edges")
        ->check(CLI::IsMember({"existing-edges"}));

    // Every subcommand accepts --out.
    for (auto *cmd : {measure_cmd, build_cmd, sim_cmd, analytic_cmd, sweep_cmd, verify_cmd}) {
        cmd->add_option("--out", out_path, "write primary output to this file");
    }

    std::vector<std::string> argv_store{"clusterstate"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &s : argv_store) {
        argv.push_back(s.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kParseOrDomain;
    }

    Sink sink{&out, out_path};
    try {
        if (*measure_cmd) {
            sink.write(run_measure(measure_args));
        } else if (*build_cmd) {
            sink.write(run_build(build_args));
        } else if (*sim_cmd) {
            sink.write(run_simulate(sim_args));
        } else if (*analytic_cmd) {
            sink.write(run_analytic(analytic_args));
        } else if (*sweep_cmd) {
            sink.write(run_sweep(sweep_args));
        } else if (*verify_cmd) {
            return run_verify(verify_args, sink);
        }
        return kOk;
    } catch (const PreconditionError &e) {
        err << "precondition violated: " << e.what() << "\n";
        return kPrecondition;
    } catch (const SchemaError &e) {
        err << "schema error: " << e.what() << "\n";
        return kParseOrDomain;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kParseOrDomain;
    }
}

}  // namespace clusterstate::cli
