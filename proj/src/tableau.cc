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

#include "clusterstate/tableau.h"

#include <algorithm>
#include <bit>
#include <random>

namespace clusterstate {

namespace {

// Exponent of i picked up by sigma(x1,z1) * sigma(x2,z2).
int product_phase(bool x1, bool z1, bool x2, bool z2) {
    if (x1 && z1) {
        return int(z2) - int(x2);
    }
    if (x1) {
        return int(z2) * (2 * int(x2) - 1);
    }
    if (z1) {
        return int(x2) * (1 - 2 * int(z2));
    }
    return 0;
}

std::uint32_t bit(std::size_t q) {
    return std::uint32_t{1} << q;
}

}  // namespace

PauliString PauliString::single(std::size_t qubit, Basis basis) {
    PauliString p;
    if (basis != Basis::Z) {
        p.x = bit(qubit);
    }
    if (basis != Basis::X) {
        p.z = bit(qubit);
    }
    return p;
}

bool PauliString::commutes_with(const PauliString &other) const {
    return (std::popcount(x & other.z) + std::popcount(z & other.x)) % 2 == 0;
}

int PauliString::sign() const {
    if (!is_hermitian()) {
        throw std::logic_error("sign() of a non-Hermitian Pauli product");
    }
    return phase == 0 ? 1 : -1;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    int acc = phase + rhs.phase;
    std::uint32_t touched = (x | z) & (rhs.x | rhs.z);
    while (touched) {
        std::size_t q = std::countr_zero(touched);
        touched &= touched - 1;
        acc += product_phase(x_bit(q), z_bit(q), rhs.x_bit(q), rhs.z_bit(q));
    }
    phase = std::uint8_t(((acc % 4) + 4) % 4);
    x ^= rhs.x;
    z ^= rhs.z;
    return *this;
}

PauliString operator*(PauliString lhs, const PauliString &rhs) {
    lhs *= rhs;
    return lhs;
}

std::string PauliString::str(std::size_t n) const {
    static const char *kPhase[] = {"+", "+i", "-", "-i"};
    std::string out = kPhase[phase];
    for (std::size_t q = 0; q < n; q++) {
        out += "_XZY"[int(x_bit(q)) + 2 * int(z_bit(q))];
    }
    return out;
}

std::size_t StabilizerTableau::index_of(VertexId label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) {
        throw PreconditionError("tableau has no qubit labeled " + std::to_string(label));
    }
    return std::size_t(it - labels.begin());
}

namespace {

// Rank of a set of Paulis over GF(2)^{2n}, ignoring phases.
std::size_t symplectic_rank(std::vector<std::uint64_t> rows) {
    std::size_t rank = 0;
    for (std::size_t b = 0; b < 64 && rank < rows.size(); b++) {
        std::uint64_t mask = std::uint64_t{1} << b;
        auto it = std::find_if(rows.begin() + rank, rows.end(), [&](auto r) { return r & mask; });
        if (it == rows.end()) {
            continue;
        }
        std::swap(*it, rows[rank]);
        for (std::size_t k = 0; k < rows.size(); k++) {
            if (k != rank && (rows[k] & mask)) {
                rows[k] ^= rows[rank];
            }
        }
        rank++;
    }
    return rank;
}

std::uint64_t packed(const PauliString &p) {
    return std::uint64_t(p.x) | (std::uint64_t(p.z) << 32);
}

}  // namespace

bool StabilizerTableau::is_valid() const {
    const std::size_t n = num_qubits();
    if (generators.size() != n || n > kMaxTableauQubits) {
        return false;
    }
    std::uint32_t width = n == 32 ? ~0u : (bit(n) - 1);
    std::vector<std::uint64_t> rows;
    for (std::size_t a = 0; a < n; a++) {
        const auto &g = generators[a];
        if (g.is_identity() || !g.is_hermitian() || (g.x & ~width) || (g.z & ~width)) {
            return false;
        }
        for (std::size_t b = a + 1; b < n; b++) {
            if (!g.commutes_with(generators[b])) {
                return false;
            }
        }
        rows.push_back(packed(g));
    }
    return symplectic_rank(rows) == n;
}

StabilizerTableau tableau_from_graph(const Graph &g) {
    StabilizerTableau t;
    t.labels = g.active_vertices();
    if (t.labels.size() > kMaxTableauQubits) {
        throw PreconditionError("tableau_from_graph: " + std::to_string(t.labels.size()) +
                                " qubits exceeds the cap of " + std::to_string(kMaxTableauQubits));
    }
    for (std::size_t q = 0; q < t.labels.size(); q++) {
        PauliString k;
        k.x = bit(q);
        for (auto u : g.neighbors(t.labels[q])) {
            k.z |= bit(t.index_of(u));
        }
        t.generators.push_back(k);
    }
    return t;
}

int stabilizer_sign(const StabilizerTableau &t, const PauliString &p) {
    // Solve p = prod_{k in S} g_k over GF(2) by elimination with combination tracking.
    const std::size_t n = t.generators.size();
    std::vector<std::uint64_t> rows;
    std::vector<std::uint32_t> combos;
    for (std::size_t k = 0; k < n; k++) {
        rows.push_back(packed(t.generators[k]));
        combos.push_back(bit(k));
    }
    std::uint64_t target = packed(p);
    std::uint32_t chosen = 0;
    std::size_t rank = 0;
    for (std::size_t b = 0; b < 64; b++) {
        std::uint64_t mask = std::uint64_t{1} << b;
        std::size_t r = rank;
        while (r < n && !(rows[r] & mask)) {
            r++;
        }
        if (r == n) {
            continue;
        }
        std::swap(rows[r], rows[rank]);
        std::swap(combos[r], combos[rank]);
        for (std::size_t k = 0; k < n; k++) {
            if (k != rank && (rows[k] & mask)) {
                rows[k] ^= rows[rank];
                combos[k] ^= combos[rank];
            }
        }
        if (target & mask) {
            target ^= rows[rank];
            chosen ^= combos[rank];
        }
        rank++;
    }
    if (target != 0) {
        return 0;
    }
    PauliString acc;
    for (std::size_t k = 0; k < n; k++) {
        if (chosen & bit(k)) {
            acc *= t.generators[k];
        }
    }
    if (acc.x != p.x || acc.z != p.z) {
        throw std::logic_error("stabilizer_sign: elimination produced the wrong Pauli");
    }
    // acc = i^a P_bits and p = i^b P_bits, so acc = i^{a-b} p.
    int rel = (int(acc.phase) - int(p.phase) + 4) % 4;
    if (rel % 2 != 0) {
        throw std::logic_error("stabilizer_sign: non-Hermitian stabilizer product");
    }
    return rel == 0 ? 1 : -1;
}

MeasurementResult measure_pauli(StabilizerTableau t, std::size_t qubit, Basis basis, OutcomePolicy policy) {
    if (qubit >= t.num_qubits()) {
        throw PreconditionError("measure_pauli: qubit index " + std::to_string(qubit) + " out of range");
    }
    const PauliString p = PauliString::single(qubit, basis);
    std::vector<std::size_t> anti;
    for (std::size_t k = 0; k < t.generators.size(); k++) {
        if (!t.generators[k].commutes_with(p)) {
            anti.push_back(k);
        }
    }
    if (anti.empty()) {
        int s = stabilizer_sign(t, p);
        if (s == 0) {
            throw std::logic_error("measure_pauli: commuting Pauli outside a full-rank stabilizer group");
        }
        return {std::move(t), s, true};
    }
    int outcome = 1;
    if (policy.kind == OutcomePolicy::Kind::Random) {
        std::mt19937_64 rng(policy.seed);
        outcome = (rng() >> 63) ? -1 : 1;
    }
    const std::size_t pivot = anti.front();
    for (std::size_t k = 1; k < anti.size(); k++) {
        t.generators[anti[k]] *= t.generators[pivot];
    }
    PauliString replaced = p;
    replaced.phase = outcome == 1 ? 0 : 2;
    t.generators[pivot] = replaced;
    return {std::move(t), outcome, false};
}

StabilizerTableau restrict_to(const StabilizerTableau &t, const std::vector<std::size_t> &keep) {
    const std::size_t n = t.num_qubits();
    std::uint32_t keep_mask = 0;
    for (auto q : keep) {
        if (q >= n) {
            throw PreconditionError("restrict_to: qubit index out of range");
        }
        keep_mask |= bit(q);
    }
    std::vector<PauliString> rows = t.generators;
    std::vector<bool> used(rows.size(), false);
    for (std::size_t q = 0; q < n; q++) {
        if (keep_mask & bit(q)) {
            continue;
        }
        for (int which = 0; which < 2; which++) {
            auto has = [&](const PauliString &r) { return which == 0 ? r.x_bit(q) : r.z_bit(q); };
            std::size_t piv = rows.size();
            for (std::size_t k = 0; k < rows.size(); k++) {
                if (!used[k] && has(rows[k])) {
                    piv = k;
                    break;
                }
            }
            if (piv == rows.size()) {
                continue;
            }
            used[piv] = true;
            for (std::size_t k = 0; k < rows.size(); k++) {
                if (k != piv && has(rows[k])) {
                    rows[k] *= rows[piv];
                }
            }
        }
    }
    StabilizerTableau out;
    std::vector<std::size_t> sorted_keep = keep;
    std::sort(sorted_keep.begin(), sorted_keep.end());
    for (auto q : sorted_keep) {
        out.labels.push_back(t.labels[q]);
    }
    for (std::size_t k = 0; k < rows.size(); k++) {
        if (used[k]) {
            continue;
        }
        const auto &r = rows[k];
        if ((r.x | r.z) & ~keep_mask) {
            throw std::logic_error("restrict_to: elimination left support on removed qubits");
        }
        PauliString compact;
        compact.phase = r.phase;
        for (std::size_t i = 0; i < sorted_keep.size(); i++) {
            if (r.x_bit(sorted_keep[i])) {
                compact.x |= bit(i);
            }
            if (r.z_bit(sorted_keep[i])) {
                compact.z |= bit(i);
            }
        }
        out.generators.push_back(compact);
    }
    if (out.generators.size() != out.labels.size()) {
        throw PreconditionError("restrict_to: kept qubits are entangled with the removed ones");
    }
    return out;
}

namespace {

// Reduced row echelon form of the X block; returns the pivot flag per column.
std::vector<bool> reduce_x_block(std::vector<PauliString> &rows, std::size_t n) {
    std::vector<bool> pivot(n, false);
    std::size_t rank = 0;
    for (std::size_t q = 0; q < n; q++) {
        std::size_t r = rank;
        while (r < rows.size() && !rows[r].x_bit(q)) {
            r++;
        }
        if (r == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[rank]);
        for (std::size_t k = 0; k < rows.size(); k++) {
            if (k != rank && rows[k].x_bit(q)) {
                rows[k] *= rows[rank];
            }
        }
        pivot[q] = true;
        rank++;
    }
    return pivot;
}

}  // namespace

Extraction extract_graph(const StabilizerTableau &t) {
    if (!t.is_valid()) {
        throw PreconditionError("extract_graph: tableau is not a valid full-rank stabilizer group");
    }
    const std::size_t n = t.num_qubits();
    std::vector<PauliString> rows = t.generators;
    Extraction result;

    auto pivot = reduce_x_block(rows, n);
    for (std::size_t q = 0; q < n; q++) {
        if (pivot[q]) {
            continue;
        }
        // Hadamard on q: X <-> Z, Y -> -Y.
        for (auto &r : rows) {
            bool xb = r.x_bit(q);
            bool zb = r.z_bit(q);
            if (xb && zb) {
                r.phase = std::uint8_t((r.phase + 2) % 4);
            }
            r.x = (r.x & ~bit(q)) | (zb ? bit(q) : 0);
            r.z = (r.z & ~bit(q)) | (xb ? bit(q) : 0);
        }
        result.local_ops.hadamard.push_back(t.labels[q]);
    }
    pivot = reduce_x_block(rows, n);
    for (std::size_t q = 0; q < n; q++) {
        if (!pivot[q] || rows[q].x != bit(q)) {
            throw std::logic_error("extract_graph: X block did not become the identity");
        }
    }
    for (std::size_t q = 0; q < n; q++) {
        if (!rows[q].z_bit(q)) {
            continue;
        }
        // Phase gate on q: X -> Y, Y -> -X.
        for (auto &r : rows) {
            if (!r.x_bit(q)) {
                continue;
            }
            if (r.z_bit(q)) {
                r.phase = std::uint8_t((r.phase + 2) % 4);
            }
            r.z ^= bit(q);
        }
        result.local_ops.phase.push_back(t.labels[q]);
    }
    for (std::size_t q = 0; q < n; q++) {
        result.graph.add_vertex(t.labels[q]);
        if (rows[q].phase == 2) {
            result.local_ops.z_flip.push_back(t.labels[q]);
        }
    }
    for (std::size_t a = 0; a < n; a++) {
        for (std::size_t b = a + 1; b < n; b++) {
            if (rows[a].z_bit(b) != rows[b].z_bit(a)) {
                throw std::logic_error("extract_graph: adjacency read-off is not symmetric");
            }
            if (rows[a].z_bit(b)) {
                result.graph.add_edge(t.labels[a], t.labels[b]);
            }
        }
    }
    return result;
}

}  // namespace clusterstate
