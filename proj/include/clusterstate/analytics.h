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
#include <stdexcept>
#include <string>
#include <vector>

namespace clusterstate {

/// Raised for inputs outside a formula's domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Closed-form (time, attempts) estimate. Times are in the same unit as t_a.
struct CostReport {
    double time = 0;
    double attempts = 0;  // NaN when the inputs do not determine it
    std::string formula_id;
    bool asymptotic = false;

    double p = 0;
    double t_a = 1;
    std::optional<double> n;        // chain length or qubit count N
    std::optional<double> epsilon;
    std::optional<double> log_term;  // ln(pairs / epsilon)
    std::optional<double> degree;

    std::vector<double> time_terms;
    std::vector<double> attempt_terms;
    std::optional<double> exact_time;
    std::optional<double> exact_attempts;
    std::vector<std::string> warnings;
};

// Splicing shrinks chains on average unless they are longer than 4(1-p)/p.
double critical_length(double p);

struct SpliceLength {
    double exact;
    double asymptotic;
};

/// Expected merged length of two n0-chains joined by repeated attempts that
/// each cost two end qubits per chain on failure.
SpliceLength expected_splice_length(std::int64_t n0, double p);

struct RecursionPoint {
    double length;
    double time;
    double attempts;
};

/// Closed form of n_r = 2 n_{r-1} - n_c, T_r = T_{r-1} + t_a/p, M_r = 2 M_{r-1} + 1/p.
RecursionPoint recursion_solve(int rounds, double n0, double p, double t0, double m0, double t_a = 1);
/// Same recursion, iterated step by step.
RecursionPoint recursion_iterate(int rounds, double n0, double p, double t0, double m0, double t_a = 1);

/// Recursion solved for the round count: time and attempts to splice n0-chains
/// (costing t0, m0 each) up to length n.
CostReport splice_cost(double n, double n0, double p, double t0, double m0, double t_a = 1);

struct SmallChainExact {
    double time;
    double attempts;
};

/// Restart-on-failure doubling: level i holds 2^{i+1} qubits, T_0 = t_a/p, M_0 = 1/p,
/// T_i = (T_{i-1} + t_a)/p, M_i = (2 M_{i-1} + 1)/p.
SmallChainExact small_chain_exact(int level, double p, double t_a = 1);

/// Power laws t_a (1/p)^{log2 n + 1} and (2/p)^{log2 n + 1}/2 for an n-qubit
/// chain (n a power of two), with the exact recursion values alongside.
CostReport small_chain_cost(std::int64_t n, double p, double t_a = 1);

/// Long-chain totals: doubling up to n_c + 1 qubits, then splicing.
CostReport chain_cost(double n, double p, double t_a = 1);

/// How the chain simulator reaches main length n.
struct ChainPlan {
    double critical;            // n_c
    std::int64_t min_seed;      // ceil(n_c) + 1
    int seed_level;             // doubling level of the seed chains (main length 2^level)
    std::int64_t seed_length;   // 2^seed_level
    bool pure_doubling;         // n fits in the seed: no splicing
    int planned_rounds;         // ceil(log2((n - n_c)/(seed_length - n_c)))
};

ChainPlan plan_chain(std::int64_t n, double p);

/// Expected cost along the simulator's plan, from the exact doubling values
/// and the splice recursion (no asymptotic power laws).
CostReport chain_recursion_cost(std::int64_t n, double p, double t_a = 1);

/// Smallest multiple of d that is at least (d/p) ln(pairs/epsilon).
/// `pairs` defaults to 2N for d = 4 and 3N/2 for d = 3.
std::int64_t arms_required(double sites, double epsilon, double p, int d, std::optional<double> pairs = std::nullopt);
double arms_required_raw(double sites, double epsilon, double p, int d, std::optional<double> pairs = std::nullopt);

/// 1 - (1-p)^attempts: at least one of a pair's parallel attempts succeeds.
double pair_success(double p, double attempts_per_pair);
/// p_c^pairs.
double assembly_success(double p, double attempts_per_pair, double pairs);

CostReport lattice_cost(double sites, double epsilon, double p, double t_a = 1);
CostReport lattice_cost_from_log(double log_term, double p, std::optional<double> sites = std::nullopt,
                                 double t_a = 1);
CostReport hex_cost(double sites, double epsilon, double p, double t_a = 1);
CostReport hex_cost_from_log(double log_term, double p, std::optional<double> sites = std::nullopt, double t_a = 1);

/// Prior cross-based scheme: the lattice total with its final t_a replaced by
/// (t_a/p) ln(2N/epsilon).
CostReport duan_time(double sites, double epsilon, double p, double t_a = 1);
CostReport duan_time_from_log(double log_term, double p, double t_a = 1);

struct ComparisonRow {
    double x;
    double t1;
    double t2;
    double ratio;
    double term1;
    double term2;
    double term3;
    // t2 - t1 summed term by term. The schemes share their first two terms, which
    // can be large enough (p -> 0) to swallow the difference in t1 and t2.
    double gap;
};

struct SweepSpec {
    enum class Axis : std::uint8_t { LogTerm, P } axis = Axis::LogTerm;
    double fixed = 0.25;  // p for LogTerm sweeps, ln(2N/epsilon) for P sweeps
    double from = 5;
    double to = 50;
    int steps = 46;
    double t_a = 1;

    static SweepSpec figure3a();
    static SweepSpec figure3b();
};

std::vector<ComparisonRow> comparison_table(const SweepSpec &spec);
ComparisonRow compare_at(double log_term, double p, double t_a = 1.0);

}  // namespace clusterstate
