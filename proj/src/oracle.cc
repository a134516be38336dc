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

#include "multinet/oracle.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "multinet/kernels.h"

namespace multinet::oracle {

namespace {

using cd = std::complex<double>;

std::vector<size_t> positions_of(const std::vector<Vertex> &qubits, size_t id_space) {
    std::vector<size_t> pos(id_space, SIZE_MAX);
    for (size_t i = 0; i < qubits.size(); i++) {
        pos[qubits[i]] = i;
    }
    return pos;
}

// Convolves `dist` with a source given as (pattern, probability) outcomes.
void convolve(std::vector<double> &dist, const std::vector<std::pair<uint64_t, double>> &outcomes) {
    std::vector<double> next(dist.size(), 0.0);
    for (const auto &[pattern, prob] : outcomes) {
        if (prob != 0) {
            kernels::xor_scatter_add(next, dist, pattern, prob);
        }
    }
    dist.swap(next);
}

}  // namespace

std::vector<BitMarginal> DiagonalDistribution::marginals() const {
    std::vector<double> ones(qubits.size(), 0.0);
    kernels::bit_sums(probabilities, (unsigned)qubits.size(), ones);
    std::vector<BitMarginal> out;
    for (size_t i = 0; i < qubits.size(); i++) {
        double l1 = std::clamp(ones[i], 0.0, 1.0);
        out.push_back(BitMarginal{qubits[i], 1.0 - l1, l1});
    }
    return out;
}

DiagonalDistribution exact_distribution(const Graph &g, const NoiseSpec &noise) {
    DiagonalDistribution d;
    d.graph = g;
    d.qubits = g.alive_vertices();
    if (d.qubits.size() > kMaxDistributionQubits) {
        throw std::length_error("exact_distribution: more than 16 qubits");
    }
    std::vector<size_t> pos = positions_of(d.qubits, g.vertex_count());
    auto bit_of = [&](Vertex v) -> uint64_t {
        if (v >= pos.size() || pos[v] == SIZE_MAX) {
            throw std::out_of_range("exact_distribution: vertex " + std::to_string(v) + " not in graph");
        }
        return uint64_t{1} << pos[v];
    };
    d.probabilities.assign(size_t{1} << d.qubits.size(), 0.0);
    d.probabilities[0] = 1.0;

    for (const auto &[v, ch] : noise.vertex_channels) {
        ch.validate();
        uint64_t own = bit_of(v);
        uint64_t nbrs = 0;
        for (Vertex u : g.neighbors(v)) {
            nbrs |= bit_of(u);
        }
        convolve(d.probabilities, {{0, ch.p_i}, {nbrs, ch.p_x}, {own | nbrs, ch.p_y}, {own, ch.p_z}});
    }
    for (const auto &[e, ch] : noise.edge_channels) {
        ch.validate();
        uint64_t a = bit_of(e.first);
        uint64_t b = bit_of(e.second);
        double r = (1.0 - ch.q) / 3.0;
        convolve(d.probabilities, {{0, ch.q}, {a, r}, {b, r}, {a | b, r}});
    }
    return d;
}

double exact_output_fidelity(const Graph &g, std::span<const Vertex> qubits, double p) {
    NoiseSpec noise;
    for (Vertex v : qubits) {
        noise.vertex_channels.emplace_back(v, PauliChannel::depolarizing(p));
    }
    return exact_distribution(g, noise).probabilities[0];
}

size_t StateVector::position(Vertex label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw std::out_of_range("state has no qubit " + std::to_string(label));
    }
    return (size_t)(it - labels.begin());
}

StateVector graph_state(const Graph &g) {
    StateVector s;
    s.labels = g.alive_vertices();
    const size_t n = s.labels.size();
    if (n > kMaxStatevectorQubits) {
        throw std::length_error("graph_state: more than 10 qubits");
    }
    std::vector<size_t> pos = positions_of(s.labels, g.vertex_count());
    std::vector<std::pair<size_t, size_t>> edges;
    for (const Edge &e : g.edges()) {
        edges.emplace_back(pos[e.first], pos[e.second]);
    }
    const double amp = 1.0 / std::sqrt((double)(size_t{1} << n));
    s.amplitudes.resize(size_t{1} << n);
    for (size_t x = 0; x < s.amplitudes.size(); x++) {
        int sign = 1;
        for (const auto &[i, j] : edges) {
            if (((x >> i) & 1) && ((x >> j) & 1)) {
                sign = -sign;
            }
        }
        s.amplitudes[x] = amp * sign;
    }
    return s;
}

void apply_cnot(StateVector &s, Vertex control, Vertex target) {
    size_t c = s.position(control);
    size_t t = s.position(target);
    for (size_t x = 0; x < s.amplitudes.size(); x++) {
        if (((x >> c) & 1) && !((x >> t) & 1)) {
            std::swap(s.amplitudes[x], s.amplitudes[x | (size_t{1} << t)]);
        }
    }
}

void apply_local_complement(StateVector &s, Vertex v, std::span<const Vertex> nbrs) {
    const double r = 1.0 / std::sqrt(2.0);
    const cd phase_plus = std::polar(1.0, M_PI / 4);
    const cd phase_minus = std::polar(1.0, -M_PI / 4);
    for (Vertex u : nbrs) {
        size_t k = s.position(u);
        for (size_t x = 0; x < s.amplitudes.size(); x++) {
            s.amplitudes[x] *= ((x >> k) & 1) ? phase_minus : phase_plus;
        }
    }
    size_t k = s.position(v);
    const size_t bit = size_t{1} << k;
    for (size_t x = 0; x < s.amplitudes.size(); x++) {
        if (x & bit) {
            continue;
        }
        cd a0 = s.amplitudes[x];
        cd a1 = s.amplitudes[x | bit];
        // (I - iX) / sqrt(2)
        s.amplitudes[x] = r * (a0 - cd(0, 1) * a1);
        s.amplitudes[x | bit] = r * (a1 - cd(0, 1) * a0);
    }
}

double measure_and_remove(StateVector &s, Vertex label, MeasureBasis basis, int outcome) {
    size_t k = s.position(label);
    const size_t bit = size_t{1} << k;
    const size_t low_mask = bit - 1;
    std::vector<cd> next(s.amplitudes.size() / 2);
    for (size_t r = 0; r < next.size(); r++) {
        size_t x0 = (r & low_mask) | ((r & ~low_mask) << 1);
        cd a0 = s.amplitudes[x0];
        cd a1 = s.amplitudes[x0 | bit];
        if (basis == MeasureBasis::Z) {
            next[r] = outcome == 0 ? a0 : a1;
        } else {
            // <y+| = (<0| - i<1|)/sqrt2, <y-| = (<0| + i<1|)/sqrt2.
            cd w = outcome == 0 ? cd(0, -1) : cd(0, 1);
            next[r] = (a0 + w * a1) / std::sqrt(2.0);
        }
    }
    double norm2 = 0;
    for (const cd &a : next) {
        norm2 += std::norm(a);
    }
    if (norm2 > 1e-24) {
        double inv = 1.0 / std::sqrt(norm2);
        for (cd &a : next) {
            a *= inv;
        }
    }
    s.amplitudes.swap(next);
    s.labels.erase(s.labels.begin() + (ptrdiff_t)k);
    return norm2;
}

namespace {

// A Pauli letter as (x, z) bits: I=0, X=1, Z=2, Y=3.
using Letter = uint8_t;
constexpr Letter kX = 1, kZ = 2, kY = 3;

// The six maps of (X, Z) onto anticommuting pairs; single-qubit Cliffords
// modulo Paulis.
constexpr std::array<std::array<Letter, 2>, 6> kSymplectic{{
    {kX, kZ}, {kZ, kX}, {kY, kZ}, {kX, kY}, {kY, kX}, {kZ, kY}}};

// |<psi| P |psi>| for the Pauli string with given per-qubit letters.
double pauli_expectation_magnitude(const std::vector<cd> &psi, uint64_t xmask, uint64_t zmask) {
    cd acc = 0;
    for (size_t x = 0; x < psi.size(); x++) {
        double sign = (__builtin_popcountll(x & zmask) & 1) ? -1.0 : 1.0;
        acc += std::conj(psi[x ^ xmask]) * psi[x] * sign;
    }
    return std::abs(acc);
}

struct LcSearch {
    const std::vector<cd> &psi;
    size_t n;
    // Generator v: letters X on v, Z on neighbors (positions).
    std::vector<std::vector<size_t>> support;
    std::vector<size_t> center;
    // Generators whose support is complete once position i is assigned.
    std::vector<std::vector<size_t>> ready_at;
    std::vector<int> choice;

    bool generator_holds(size_t gen) const {
        uint64_t xm = 0, zm = 0;
        for (size_t q : support[gen]) {
            const auto &map = kSymplectic[choice[q]];
            Letter l = q == center[gen] ? map[0] : map[1];
            if (l & 1) xm |= uint64_t{1} << q;
            if (l & 2) zm |= uint64_t{1} << q;
        }
        return pauli_expectation_magnitude(psi, xm, zm) > 1 - 1e-9;
    }

    bool assign(size_t pos) {
        if (pos == n) {
            return true;
        }
        for (int c = 0; c < 6; c++) {
            choice[pos] = c;
            bool ok = true;
            for (size_t gen : ready_at[pos]) {
                if (!generator_holds(gen)) {
                    ok = false;
                    break;
                }
            }
            if (ok && assign(pos + 1)) {
                return true;
            }
        }
        return false;
    }
};

}  // namespace

bool lc_equivalent(const StateVector &s, const Graph &g) {
    std::vector<Vertex> alive = g.alive_vertices();
    if (alive.size() != s.labels.size()) {
        return false;
    }
    for (Vertex v : alive) {
        if (std::find(s.labels.begin(), s.labels.end(), v) == s.labels.end()) {
            return false;
        }
    }
    const size_t n = s.labels.size();
    double norm2 = 0;
    for (const cd &a : s.amplitudes) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > 1e-9) {
        throw std::invalid_argument("lc_equivalent: state is not normalized");
    }
    LcSearch search{s.amplitudes, n, {}, {}, std::vector<std::vector<size_t>>(n), std::vector<int>(n, 0)};
    for (size_t i = 0; i < n; i++) {
        Vertex v = s.labels[i];
        std::vector<size_t> sup{i};
        for (Vertex u : g.neighbors(v)) {
            sup.push_back(s.position(u));
        }
        size_t last = *std::max_element(sup.begin(), sup.end());
        search.ready_at[last].push_back(search.support.size());
        search.support.push_back(std::move(sup));
        search.center.push_back(i);
    }
    return search.assign(0);
}

namespace {

bool same_up_to_phase(const StateVector &a, const StateVector &b) {
    if (a.labels != b.labels) {
        return false;
    }
    cd overlap = 0;
    for (size_t x = 0; x < a.amplitudes.size(); x++) {
        overlap += std::conj(a.amplitudes[x]) * b.amplitudes[x];
    }
    return std::abs(overlap) > 1 - 1e-9;
}

}  // namespace

bool statevector_check(const Graph &g_before, const Transform &t, const Graph &g_after) {
    if (g_before.alive_count() > kMaxStatevectorQubits) {
        throw std::length_error("statevector_check: more than 10 qubits");
    }
    StateVector start = graph_state(g_before);
    switch (t.kind) {
        case Transform::Kind::LocalComplement: {
            apply_local_complement(start, t.a, g_before.neighbors(t.a));
            return same_up_to_phase(start, graph_state(g_after));
        }
        case Transform::Kind::Merge: {
            apply_cnot(start, t.a, t.b);
            for (int outcome = 0; outcome < 2; outcome++) {
                StateVector branch = start;
                double p = measure_and_remove(branch, t.b, MeasureBasis::Z, outcome);
                if (p > 1e-12 && !lc_equivalent(branch, g_after)) {
                    return false;
                }
            }
            return true;
        }
        case Transform::Kind::Connect: {
            if (g_before.has_edge(t.a, t.b)) {
                throw std::invalid_argument("statevector_check: connect needs non-adjacent vertices");
            }
            apply_local_complement(start, t.a, g_before.neighbors(t.a));
            Graph mid = local_complement(g_before, t.a);
            apply_local_complement(start, t.b, mid.neighbors(t.b));
            apply_cnot(start, t.a, t.b);
            for (int zb = 0; zb < 2; zb++) {
                StateVector after_z = start;
                double pz = measure_and_remove(after_z, t.b, MeasureBasis::Z, zb);
                if (pz <= 1e-12) {
                    continue;
                }
                for (int ya = 0; ya < 2; ya++) {
                    StateVector branch = after_z;
                    double py = measure_and_remove(branch, t.a, MeasureBasis::Y, ya);
                    if (py > 1e-12 && !lc_equivalent(branch, g_after)) {
                        return false;
                    }
                }
            }
            return true;
        }
    }
    return false;
}

}  // namespace multinet::oracle
