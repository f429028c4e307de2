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

#include "clusterstate/analytics.h"

#include <cmath>
#include <limits>
#include <sstream>

namespace clusterstate {

namespace {

void require_p(double p, bool allow_one = true) {
    if (!(p > 0) || p > 1 || (!allow_one && p == 1)) {
        std::ostringstream os;
        os << "success probability must lie in (0, " << (allow_one ? "1]" : "1)") << ", got " << p;
        throw DomainError(os.str());
    }
}

void require_positive(double v, const char *what) {
    if (!(v > 0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

void require_epsilon(double epsilon) {
    if (!(epsilon > 0) || !(epsilon < 1)) {
        throw DomainError("epsilon must lie in (0, 1)");
    }
}

int ceil_log2(std::int64_t v) {
    int k = 0;
    while ((std::int64_t{1} << k) < v) {
        ++k;
    }
    return k;
}

// First term shared by the lattice formulas: doubling cost of an (n_c + 1)-qubit seed.
double seed_power(double p) {
    return std::log2(4 / p - 3) + 1;
}

void warn_high_p(CostReport &r) {
    if (r.p > 0.8) {
        r.warnings.push_back("p > 0.8: seed length n_c + 1 = 4/p - 3 is below 2; formula served as printed");
    }
}

}  // namespace

double critical_length(double p) {
    require_p(p);
    return 4 * (1 - p) / p;
}

SpliceLength expected_splice_length(std::int64_t n0, double p) {
    require_p(p);
    if (n0 < 2 || n0 % 2 != 0) {
        throw DomainError("n0 must be even and at least 2");
    }
    // Success on attempt i+1 leaves two chains of n0 - 2i each.
    double exact = 0;
    double q_pow = 1;
    for (std::int64_t i = 0; i < n0 / 2; ++i) {
        exact += 2.0 * static_cast<double>(n0 - 2 * i) * p * q_pow;
        q_pow *= 1 - p;
    }
    return {exact, 2.0 * static_cast<double>(n0) - critical_length(p)};
}

RecursionPoint recursion_solve(int rounds, double n0, double p, double t0, double m0, double t_a) {
    if (rounds < 0) {
        throw DomainError("round count must be non-negative");
    }
    require_p(p);
    double nc = critical_length(p);
    double scale = std::ldexp(1.0, rounds);
    return {(n0 - nc) * scale + nc, t0 + rounds * t_a / p, (m0 + 1 / p) * scale - 1 / p};
}

RecursionPoint recursion_iterate(int rounds, double n0, double p, double t0, double m0, double t_a) {
    if (rounds < 0) {
        throw DomainError("round count must be non-negative");
    }
    require_p(p);
    double nc = critical_length(p);
    RecursionPoint r{n0, t0, m0};
    for (int k = 0; k < rounds; ++k) {
        r.length = 2 * r.length - nc;
        r.time += t_a / p;
        r.attempts = 2 * r.attempts + 1 / p;
    }
    return r;
}

CostReport splice_cost(double n, double n0, double p, double t0, double m0, double t_a) {
    require_p(p, false);
    require_positive(t_a, "t_a");
    double nc = critical_length(p);
    if (!(n0 > nc) || !(n >= n0)) {
        throw DomainError("splice_cost needs n >= n0 > n_c");
    }
    double growth = (n - nc) / (n0 - nc);
    CostReport r;
    r.formula_id = "splice-scaling";
    r.p = p;
    r.t_a = t_a;
    r.n = n;
    r.time_terms = {t0, (t_a / p) * std::log2(growth)};
    r.time = r.time_terms[0] + r.time_terms[1];
    r.attempts = (m0 + 1 / p) * growth - 1 / p;
    r.attempt_terms = {r.attempts};
    return r;
}

SmallChainExact small_chain_exact(int level, double p, double t_a) {
    require_p(p);
    if (level < 0) {
        throw DomainError("doubling level must be non-negative");
    }
    SmallChainExact s{t_a / p, 1 / p};
    for (int i = 1; i <= level; ++i) {
        s.time = (s.time + t_a) / p;
        s.attempts = (2 * s.attempts + 1) / p;
    }
    return s;
}

CostReport small_chain_cost(std::int64_t n, double p, double t_a) {
    require_p(p);
    require_positive(t_a, "t_a");
    if (n < 2 || (n & (n - 1)) != 0) {
        throw DomainError("small-chain cost is defined for n a power of two >= 2");
    }
    int lg = ceil_log2(n);
    CostReport r;
    r.formula_id = "small-chain-power-law";
    r.asymptotic = true;
    r.p = p;
    r.t_a = t_a;
    r.n = static_cast<double>(n);
    r.time = t_a * std::pow(1 / p, lg + 1);
    r.attempts = std::pow(2 / p, lg + 1) / 2;
    r.time_terms = {r.time};
    r.attempt_terms = {r.attempts};
    auto exact = small_chain_exact(lg - 1, p, t_a);
    r.exact_time = exact.time;
    r.exact_attempts = exact.attempts;
    return r;
}

CostReport chain_cost(double n, double p, double t_a) {
    require_p(p);
    require_positive(t_a, "t_a");
    double nc = critical_length(p);
    if (!(n > nc) || !std::isfinite(n)) {
        throw DomainError("chain_cost needs n greater than the critical length 4(1-p)/p");
    }
    double power = std::log2(nc + 1) + 1;
    CostReport r;
    r.formula_id = "chain-total";
    r.asymptotic = true;
    r.p = p;
    r.t_a = t_a;
    r.n = n;
    r.time_terms = {t_a * std::pow(1 / p, power), (t_a / p) * std::log2(n - nc)};
    r.time = r.time_terms[0] + r.time_terms[1];
    r.attempts = std::pow(2 / p, power) * (n - nc) / 2;
    r.attempt_terms = {r.attempts};
    auto exact = chain_recursion_cost(static_cast<std::int64_t>(std::ceil(n)), p, t_a);
    r.exact_time = exact.time;
    r.exact_attempts = exact.attempts;
    warn_high_p(r);
    return r;
}

ChainPlan plan_chain(std::int64_t n, double p) {
    require_p(p);
    if (n < 1) {
        throw DomainError("chain length must be at least 1");
    }
    ChainPlan plan{};
    plan.critical = critical_length(p);
    plan.min_seed = static_cast<std::int64_t>(std::ceil(plan.critical)) + 1;
    plan.seed_level = std::max(1, ceil_log2(plan.min_seed));
    plan.seed_length = std::int64_t{1} << plan.seed_level;
    // With no failures there is nothing to amortise: doubling reaches any length.
    if (n <= plan.seed_length || plan.critical <= 0) {
        plan.pure_doubling = true;
        plan.seed_level = std::max(1, ceil_log2(n));
        plan.seed_length = std::int64_t{1} << plan.seed_level;
        plan.planned_rounds = 0;
        return plan;
    }
    double ratio = (static_cast<double>(n) - plan.critical) / (static_cast<double>(plan.seed_length) - plan.critical);
    plan.planned_rounds = std::max(0, static_cast<int>(std::ceil(std::log2(ratio) - 1e-12)));
    return plan;
}

CostReport chain_recursion_cost(std::int64_t n, double p, double t_a) {
    require_positive(t_a, "t_a");
    ChainPlan plan = plan_chain(n, p);
    // Main length 2^L comes from doubling level L (2^{L+1} qubits with arms).
    auto seed = small_chain_exact(plan.seed_level, p, t_a);
    CostReport r;
    r.formula_id = "chain-recursion";
    r.asymptotic = false;
    r.p = p;
    r.t_a = t_a;
    r.n = static_cast<double>(n);
    if (plan.pure_doubling) {
        r.time = seed.time;
        r.attempts = seed.attempts;
    } else {
        auto pt = recursion_solve(plan.planned_rounds, static_cast<double>(plan.seed_length), p, seed.time,
                                  seed.attempts, t_a);
        r.time = pt.time;
        r.attempts = pt.attempts;
    }
    r.time_terms = {seed.time, r.time - seed.time};
    r.attempt_terms = {r.attempts};
    r.exact_time = r.time;
    r.exact_attempts = r.attempts;
    return r;
}

namespace {

double default_pairs(double sites, int d, std::optional<double> pairs) {
    if (pairs) {
        require_positive(*pairs, "pair count");
        return *pairs;
    }
    if (d == 4) {
        return 2 * sites;
    }
    if (d == 3) {
        return 1.5 * sites;
    }
    throw DomainError("pair count must be supplied for degree other than 3 or 4");
}

}  // namespace

double arms_required_raw(double sites, double epsilon, double p, int d, std::optional<double> pairs) {
    require_p(p);
    require_epsilon(epsilon);
    if (!(sites >= 2)) {
        throw DomainError("need at least two sites");
    }
    if (d < 1) {
        throw DomainError("site degree must be positive");
    }
    double count = default_pairs(sites, d, pairs);
    return (d / p) * std::log(count / epsilon);
}

std::int64_t arms_required(double sites, double epsilon, double p, int d, std::optional<double> pairs) {
    double raw = arms_required_raw(sites, epsilon, p, d, pairs);
    // Guard the fixed point against a raw value a few ulps above an exact multiple.
    double units = std::ceil(raw / d - 1e-9);
    auto n = static_cast<std::int64_t>(std::max(1.0, units)) * d;
    return n;
}

double pair_success(double p, double attempts_per_pair) {
    require_p(p);
    if (!(attempts_per_pair >= 1)) {
        throw DomainError("attempts per pair must be at least 1");
    }
    return 1 - std::pow(1 - p, attempts_per_pair);
}

double assembly_success(double p, double attempts_per_pair, double pairs) {
    return std::pow(pair_success(p, attempts_per_pair), pairs);
}

namespace {

// Shared shape of the lattice totals. `weight` is 2 (square) or 3/2 (hexagonal);
// the log term is ln(pairs/epsilon).
CostReport lattice_family(const char *id, double weight, double log_term, double p, std::optional<double> sites,
                          double t_a) {
    require_p(p, false);
    require_positive(t_a, "t_a");
    require_positive(log_term, "log term");
    double inner = weight * log_term - 1;
    if (!(inner > 0)) {
        throw DomainError("log term too small: the arm count formula is non-positive");
    }
    CostReport r;
    r.formula_id = id;
    r.asymptotic = true;
    r.p = p;
    r.t_a = t_a;
    r.log_term = log_term;
    r.n = sites;
    r.degree = weight == 2 ? 4 : 3;
    r.time_terms = {t_a * std::pow(1 / p, seed_power(p)), (t_a / p) * std::log2((4 / p) * inner), t_a};
    r.time = r.time_terms[0] + r.time_terms[1] + r.time_terms[2];
    if (sites) {
        double n = *sites;
        r.attempt_terms = {std::pow(2 / p, 1 + seed_power(p)) * n * inner, weight * n / p * log_term};
        r.attempts = r.attempt_terms[0] + r.attempt_terms[1];
    } else {
        r.attempts = std::numeric_limits<double>::quiet_NaN();
    }
    warn_high_p(r);
    return r;
}

double checked_log(double pairs, double epsilon) {
    require_epsilon(epsilon);
    return std::log(pairs / epsilon);
}

}  // namespace

CostReport lattice_cost(double sites, double epsilon, double p, double t_a) {
    require_positive(sites, "N");
    auto r = lattice_family("lattice-square", 2, checked_log(2 * sites, epsilon), p, sites, t_a);
    r.epsilon = epsilon;
    return r;
}

CostReport lattice_cost_from_log(double log_term, double p, std::optional<double> sites, double t_a) {
    return lattice_family("lattice-square", 2, log_term, p, sites, t_a);
}

CostReport hex_cost(double sites, double epsilon, double p, double t_a) {
    require_positive(sites, "N");
    auto r = lattice_family("lattice-hexagonal", 1.5, checked_log(1.5 * sites, epsilon), p, sites, t_a);
    r.epsilon = epsilon;
    return r;
}

CostReport hex_cost_from_log(double log_term, double p, std::optional<double> sites, double t_a) {
    return lattice_family("lattice-hexagonal", 1.5, log_term, p, sites, t_a);
}

CostReport duan_time_from_log(double log_term, double p, double t_a) {
    auto r = lattice_family("cross-scheme-reconstructed", 2, log_term, p, std::nullopt, t_a);
    r.time_terms[2] = (t_a / p) * log_term;
    r.time = r.time_terms[0] + r.time_terms[1] + r.time_terms[2];
    r.warnings.push_back("reconstructed by substituting the final t_a with (t_a/p) ln(2N/epsilon)");
    return r;
}

CostReport duan_time(double sites, double epsilon, double p, double t_a) {
    require_positive(sites, "N");
    auto r = duan_time_from_log(checked_log(2 * sites, epsilon), p, t_a);
    r.n = sites;
    r.epsilon = epsilon;
    return r;
}

SweepSpec SweepSpec::figure3a() {
    return SweepSpec{Axis::LogTerm, 0.25, 5, 50, 46, 1};
}

SweepSpec SweepSpec::figure3b() {
    return SweepSpec{Axis::P, 30, 0.01, 0.5, 50, 1};
}

ComparisonRow compare_at(double log_term, double p, double t_a) {
    auto t1 = lattice_cost_from_log(log_term, p, std::nullopt, t_a);
    auto t2 = duan_time_from_log(log_term, p, t_a);
    double gap = 0;
    for (std::size_t k = 0; k < t1.time_terms.size(); ++k) {
        gap += t2.time_terms[k] - t1.time_terms[k];
    }
    return {log_term,         t1.time,          t2.time,          t1.time / t2.time,
            t1.time_terms[0], t1.time_terms[1], t2.time_terms[2], gap};
}

std::vector<ComparisonRow> comparison_table(const SweepSpec &spec) {
    if (spec.steps < 1) {
        throw DomainError("sweep needs at least one step");
    }
    if (spec.axis == SweepSpec::Axis::P && !(spec.from > 0 && spec.to < 1)) {
        throw DomainError("p sweep must stay inside (0, 1)");
    }
    std::vector<ComparisonRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.steps));
    for (int k = 0; k < spec.steps; ++k) {
        double x = spec.steps == 1 ? spec.from : spec.from + (spec.to - spec.from) * k / (spec.steps - 1);
        double p = spec.axis == SweepSpec::Axis::P ? x : spec.fixed;
        double lt = spec.axis == SweepSpec::Axis::P ? spec.fixed : x;
        auto row = compare_at(lt, p, spec.t_a);
        row.x = x;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace clusterstate
