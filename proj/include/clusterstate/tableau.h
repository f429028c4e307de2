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
#include <string>
#include <vector>

#include "clusterstate/graph.h"

namespace clusterstate {

/// Tableaus are a desk-scale ground truth; bit masks cap the width.
constexpr std::size_t kMaxTableauQubits = 24;

/// Pauli product i^phase * P_0 (x) P_1 (x) ... with P_q chosen by (x_q, z_q):
/// (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z.
struct PauliString {
    std::uint32_t x = 0;
    std::uint32_t z = 0;
    std::uint8_t phase = 0;  // power of i, mod 4

    static PauliString single(std::size_t qubit, Basis basis);

    bool x_bit(std::size_t q) const { return (x >> q) & 1u; }
    bool z_bit(std::size_t q) const { return (z >> q) & 1u; }
    bool is_identity() const { return x == 0 && z == 0; }
    bool is_hermitian() const { return phase % 2 == 0; }
    bool commutes_with(const PauliString &other) const;
    /// Sign of a Hermitian Pauli: +1 or -1.
    int sign() const;

    /// this <- this * rhs, tracking the phase exactly.
    PauliString &operator*=(const PauliString &rhs);
    bool operator==(const PauliString &) const = default;

    std::string str(std::size_t n) const;
};

PauliString operator*(PauliString lhs, const PauliString &rhs);

/// Stabilizer group of an n-qubit pure state. `labels[q]` names qubit q.
struct StabilizerTableau {
    std::vector<VertexId> labels;
    std::vector<PauliString> generators;

    std::size_t num_qubits() const { return labels.size(); }
    std::size_t index_of(VertexId label) const;
    /// Generators Hermitian, non-identity, pairwise commuting, independent, and n of them.
    bool is_valid() const;
};

/// One generator K^v = X_v prod_{u in N_v} Z_u per active vertex, phases +1.
StabilizerTableau tableau_from_graph(const Graph &g);

struct OutcomePolicy {
    enum class Kind : std::uint8_t { ForcePlus, Random } kind = Kind::ForcePlus;
    std::uint64_t seed = 0;

    static OutcomePolicy force_plus() { return {}; }
    static OutcomePolicy random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

struct MeasurementResult {
    StabilizerTableau tableau;
    int outcome;  // +1 or -1
    bool deterministic;
};

MeasurementResult measure_pauli(StabilizerTableau t, std::size_t qubit, Basis basis,
                                OutcomePolicy policy = OutcomePolicy::force_plus());

/// Sign with which a Hermitian Pauli belongs to the stabilizer group: +1, -1,
/// or 0 when neither +P nor -P is a stabilizer.
int stabilizer_sign(const StabilizerTableau &t, const PauliString &p);

/// Stabilizers of the state on `keep` once every other qubit has been split
/// off in a product state (e.g. after being measured).
StabilizerTableau restrict_to(const StabilizerTableau &t, const std::vector<std::size_t> &keep);

struct LocalOps {
    std::vector<VertexId> hadamard;  // qubits whose X and Z columns were exchanged
    std::vector<VertexId> phase;     // qubits whose Y generator was rotated back to X
    std::vector<VertexId> z_flip;    // generators that ended with sign -1
};

struct Extraction {
    Graph graph;
    LocalOps local_ops;
};

/// Graph state equal to `t` up to the recorded single-qubit Clifford operations.
Extraction extract_graph(const StabilizerTableau &t);

}  // namespace clusterstate
