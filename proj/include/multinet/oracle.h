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

#ifndef MULTINET_ORACLE_H
#define MULTINET_ORACLE_H

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "multinet/graph.h"
#include "multinet/noise.h"

// Brute-force references for small instances. Slow on purpose: nothing here
// shares code with the closed forms it is used to check.

namespace multinet::oracle {

constexpr size_t kMaxDistributionQubits = 16;
constexpr size_t kMaxStatevectorQubits = 10;

struct NoiseSpec {
    std::vector<std::pair<Vertex, PauliChannel>> vertex_channels;
    std::vector<std::pair<Edge, EdgeZChannel>> edge_channels;
};

/// Distribution over Z-patterns of a graph-diagonal state. Bit i of a
/// pattern index refers to `qubits[i]` (the alive vertices, ascending).
struct DiagonalDistribution {
    Graph graph;
    std::vector<Vertex> qubits;
    std::vector<double> probabilities;

    /// Per-qubit marginals in `qubits` order.
    std::vector<BitMarginal> marginals() const;
};

/// Exhaustive enumeration of all Pauli assignments of every channel, each
/// mapped to its Z-pattern (X_j -> Z on N_j, Z_j -> Z_j, Y_j -> both).
/// Throws std::length_error above kMaxDistributionQubits.
DiagonalDistribution exact_distribution(const Graph &g, const NoiseSpec &noise);

/// Probability of the all-zero pattern with LDN(p) on each listed qubit.
double exact_output_fidelity(const Graph &g, std::span<const Vertex> qubits, double p);

/// Pure state on labeled qubits; amplitude index bit i is `labels[i]`.
struct StateVector {
    std::vector<Vertex> labels;
    std::vector<std::complex<double>> amplitudes;

    size_t qubit_count() const {
        return labels.size();
    }
    size_t position(Vertex label) const;
};

/// |G> = prod_{edges} CZ |+>^N over the alive vertices.
StateVector graph_state(const Graph &g);

void apply_cnot(StateVector &s, Vertex control, Vertex target);
/// exp(-i pi/4 X_v) prod_{u in nbrs} exp(i pi/4 Z_u): maps |G> to |tau_v G>.
void apply_local_complement(StateVector &s, Vertex v, std::span<const Vertex> nbrs);

enum class MeasureBasis { Z, Y };

/// Projects `label` onto outcome `outcome` (0: +1 eigenstate) and removes it.
/// Returns the branch probability; the state is left normalized (or zero).
double measure_and_remove(StateVector &s, Vertex label, MeasureBasis basis, int outcome);

/// True when some product of single-qubit Cliffords maps `s` to |g> up to a
/// global phase. The labels of `s` must equal the alive vertices of g.
bool lc_equivalent(const StateVector &s, const Graph &g);

struct Transform {
    enum class Kind { LocalComplement, Merge, Connect };
    Kind kind = Kind::Merge;
    Vertex a = 0;
    Vertex b = 0;
};

/// Runs the physical circuit for `t` on |g_before> in every measurement
/// branch and checks each nonzero branch against |g_after> up to local
/// Cliffords. Throws std::length_error above kMaxStatevectorQubits.
bool statevector_check(const Graph &g_before, const Transform &t, const Graph &g_after);

}  // namespace multinet::oracle

#endif
