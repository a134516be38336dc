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

#include "multinet/noise.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace multinet {

namespace {

double clamp_probability(double p) {
    assert(p > -1e-9 && p < 1 + 1e-9);
    return std::clamp(p, 0.0, 1.0);
}

void check_probability(double p, const char *what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
    }
}

}  // namespace

PauliChannel PauliChannel::depolarizing(double q) {
    check_probability(q, "depolarizing parameter q");
    double e = (1.0 - q) / 4.0;
    return PauliChannel{1.0 - 3.0 * e, e, e, e};
}

PauliChannel PauliChannel::z_only(double p_z) {
    return biased(0.0, 0.0, p_z);
}

PauliChannel PauliChannel::biased(double p_x, double p_y, double p_z) {
    PauliChannel ch{1.0 - p_x - p_y - p_z, p_x, p_y, p_z};
    ch.validate();
    return ch;
}

void PauliChannel::validate() const {
    check_probability(p_i, "p_I");
    check_probability(p_x, "p_X");
    check_probability(p_y, "p_Y");
    check_probability(p_z, "p_Z");
    if (std::abs(p_i + p_x + p_y + p_z - 1.0) > 1e-12) {
        throw std::invalid_argument("Pauli channel probabilities must sum to 1");
    }
}

std::string PauliChannel::str() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "PauliChannel(I=%.12g, X=%.12g, Y=%.12g, Z=%.12g)", p_i, p_x, p_y, p_z);
    return buf;
}

PauliChannel compose(const PauliChannel &first, const PauliChannel &second) {
    // Index Paulis by (x, z) bits: I=0, X=1, Z=2, Y=3; products XOR the bits.
    const std::array<double, 4> a{first.p_i, first.p_x, first.p_z, first.p_y};
    const std::array<double, 4> b{second.p_i, second.p_x, second.p_z, second.p_y};
    std::array<double, 4> c{};
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            c[i ^ j] += a[i] * b[j];
        }
    }
    return PauliChannel{c[0], c[1], c[3], c[2]};
}

void EdgeZChannel::validate() const {
    check_probability(q, "edge channel q");
}

FlipSource channel_to_flip_source(const Graph &g, Vertex v, const PauliChannel &ch) {
    ch.validate();
    if (!g.alive(v)) {
        throw std::out_of_range("channel_to_flip_source: vertex " + std::to_string(v) + " not in graph");
    }
    FlipSource src;
    src.support.push_back(v);
    src.flip_prob.push_back(clamp_probability(ch.p_z + ch.p_y));
    double neighbor_flip = clamp_probability(ch.p_x + ch.p_y);
    for (Vertex u : g.neighbors(v)) {
        src.support.push_back(u);
        src.flip_prob.push_back(neighbor_flip);
    }
    return src;
}

FlipSource edge_channel_to_flip_source(Vertex a, Vertex b, const EdgeZChannel &ch) {
    ch.validate();
    if (a == b) {
        throw std::invalid_argument("edge_channel_to_flip_source: endpoints coincide");
    }
    double f = clamp_probability(2.0 * (1.0 - ch.q) / 3.0);
    return FlipSource{{a, b}, {f, f}};
}

double compose_depolarizing(double q1, double q2) {
    check_probability(q1, "q1");
    check_probability(q2, "q2");
    return q1 * q2;
}

std::vector<BitMarginal> bit_marginals(const Graph &g, std::span<const FlipSource> sources) {
    std::vector<double> keep(g.vertex_count(), 1.0);
    for (const FlipSource &s : sources) {
        if (s.support.size() != s.flip_prob.size()) {
            throw std::invalid_argument("bit_marginals: malformed flip source");
        }
        for (size_t i = 0; i < s.support.size(); i++) {
            Vertex v = s.support[i];
            if (!g.alive(v)) {
                throw std::out_of_range("bit_marginals: source touches vertex " + std::to_string(v) +
                                        " outside the graph");
            }
            keep[v] *= 1.0 - 2.0 * s.flip_prob[i];
        }
    }
    std::vector<BitMarginal> out;
    out.reserve(g.alive_count());
    for (Vertex v = 0; v < g.vertex_count(); v++) {
        if (!g.alive(v)) {
            continue;
        }
        double l1 = clamp_probability((1.0 - keep[v]) / 2.0);
        out.push_back(BitMarginal{v, 1.0 - l1, l1});
    }
    return out;
}

double depolarized_marginal(uint32_t degree, double q) {
    check_probability(q, "q");
    return clamp_probability((1.0 - std::pow(q, (double)degree + 1.0)) / 2.0);
}

double output_noise_factor(const Graph &g, std::span<const Vertex> qubits, double p) {
    check_probability(p, "output noise p");
    for (Vertex v : qubits) {
        if (!g.alive(v)) {
            throw std::out_of_range("output_noise_factor: vertex " + std::to_string(v) + " not in graph");
        }
        if (g.degree(v) == 0) {
            throw std::invalid_argument("output_noise_factor: vertex " + std::to_string(v) + " is isolated");
        }
    }
    return std::pow((1.0 + 3.0 * p) / 4.0, (double)qubits.size());
}

std::array<double, 4> bell_pair_distribution(const PauliChannel &a_side, const PauliChannel &b_side) {
    a_side.validate();
    b_side.validate();
    // Pattern of a Pauli on a (bits: a, b): Z -> 01, X -> 10, Y -> 11.
    const std::array<double, 4> pa{a_side.p_i, a_side.p_z, a_side.p_x, a_side.p_y};
    const std::array<double, 4> pb{b_side.p_i, b_side.p_x, b_side.p_z, b_side.p_y};
    std::array<double, 4> out{};
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            out[i ^ j] += pa[i] * pb[j];
        }
    }
    return out;
}

}  // namespace multinet
