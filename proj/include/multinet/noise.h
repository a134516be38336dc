// Copyright 2026 The Multinet Authors
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

#ifndef MULTINET_NOISE_H
#define MULTINET_NOISE_H

#include <array>
#include <span>
#include <string>
#include <vector>

#include "multinet/graph.h"

namespace multinet {

/// Single-qubit Pauli channel.
struct PauliChannel {
    double p_i = 1.0;
    double p_x = 0.0;
    double p_y = 0.0;
    double p_z = 0.0;

    /// Local depolarizing noise: p_x = p_y = p_z = (1 - q) / 4.
    static PauliChannel depolarizing(double q);
    static PauliChannel z_only(double p_z);
    /// p_i takes whatever is left over.
    static PauliChannel biased(double p_x, double p_y, double p_z);

    /// Throws std::invalid_argument unless every entry is in [0,1] and the
    /// entries sum to 1 within 1e-12.
    void validate() const;
    std::string str() const;
};

/// Applying `first` and then `second`. Pauli products ignore phases.
PauliChannel compose(const PauliChannel &first, const PauliChannel &second);

/// Correlated two-qubit phase noise on an edge (a, b): identity with
/// probability q, each of Z_a, Z_b, Z_a Z_b with probability (1 - q) / 3.
struct EdgeZChannel {
    double q = 1.0;
    void validate() const;
};

/// One independent noise source on graph-basis bits. `flip_prob[i]` is the
/// probability that the source flips bit `support[i]`. Support ids are unique.
struct FlipSource {
    std::vector<Vertex> support;
    std::vector<double> flip_prob;
};

/// Per-vertex distribution of one graph-basis bit.
struct BitMarginal {
    Vertex vertex = 0;
    double lambda0 = 1.0;
    double lambda1 = 0.0;
};

/// Z flips the vertex's own bit, X flips every neighbor's bit, Y does both.
FlipSource channel_to_flip_source(const Graph &g, Vertex v, const PauliChannel &ch);

/// Bit-level marginal of the edge channel: both ends flip with 2(1 - q)/3.
/// The correlation between the two flips is dropped.
FlipSource edge_channel_to_flip_source(Vertex a, Vertex b, const EdgeZChannel &ch);

/// Two depolarizing maps compose to one with parameter q1 * q2.
double compose_depolarizing(double q1, double q2);

/// Marginals for every alive vertex in ascending id order. The flips of
/// independent sources combine by XOR, so
/// lambda1 = (1 - prod_s (1 - 2 flip_s)) / 2 exactly.
std::vector<BitMarginal> bit_marginals(const Graph &g, std::span<const FlipSource> sources);

/// lambda1 for a vertex of degree d when every vertex carries LDN(q).
double depolarized_marginal(uint32_t degree, double q);

/// Lower bound on the fidelity multiplier from LDN(p) on the listed output
/// qubits: ((1 + 3p) / 4)^|qubits|. Throws std::invalid_argument for an
/// isolated qubit, where distinct Paulis can give the same pattern.
double output_noise_factor(const Graph &g, std::span<const Vertex> qubits, double p);

/// Pattern distribution of a Bell pair (an edge a-b) with channel `a_side` on
/// a and `b_side` on b. Indexed by pattern bits (bit 0: a, bit 1: b), so
/// entry 0 is the fidelity with the ideal pair.
std::array<double, 4> bell_pair_distribution(const PauliChannel &a_side, const PauliChannel &b_side);

}  // namespace multinet

#endif
