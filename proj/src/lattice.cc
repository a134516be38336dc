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

#include "multinet/lattice.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace multinet {

namespace {

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        q--;
    }
    return q;
}

int64_t floor_mod(int64_t a, int64_t b) {
    return a - b * floor_div(a, b);
}

// Whether the cell owning a windmill arm takes the arm leaving corner `local`
// along `axis`. Flipping local[axis] flips the answer, so exactly one end of
// every arm claims it.
bool windmill_grabs(std::span<const int64_t> local, size_t axis) {
    if (local.size() == 2) {
        int x = (int)(local[0] ^ local[1]);
        return axis == 0 ? x : !x;
    }
    switch (axis) {
        case 0:
            return local[0] ^ local[1];
        case 1:
            return local[1] ^ local[2];
        default:
            return !(local[2] ^ local[0]);
    }
}

uint64_t pack_key(std::span<const int64_t> key, uint64_t tag) {
    uint64_t packed = tag;
    for (int64_t k : key) {
        packed = (packed << 20) ^ (uint64_t)((k + 2) & 0xFFFFF);
    }
    return packed;
}

}  // namespace

size_t Lattice::size() const {
    size_t n = 1;
    for (uint32_t d : dims) {
        n *= d;
    }
    return n;
}

void Lattice::validate() const {
    if (dims.empty()) {
        throw std::invalid_argument("lattice: no dimensions given");
    }
    for (uint32_t d : dims) {
        if (d == 0) {
            throw std::invalid_argument("lattice: zero dimension");
        }
    }
}

Vertex Lattice::index(std::span<const int64_t> coords) const {
    if (coords.size() != dims.size()) {
        throw std::invalid_argument("lattice: coordinate rank mismatch");
    }
    uint64_t id = 0;
    for (size_t i = dims.size(); i-- > 0;) {
        int64_t c = coords[i];
        if (periodic) {
            c = floor_mod(c, dims[i]);
        } else if (c < 0 || c >= (int64_t)dims[i]) {
            throw std::out_of_range("lattice: coordinate outside open lattice");
        }
        id = id * dims[i] + (uint64_t)c;
    }
    return (Vertex)id;
}

std::vector<int64_t> Lattice::coords(Vertex v) const {
    std::vector<int64_t> out(dims.size());
    uint64_t rest = v;
    for (size_t i = 0; i < dims.size(); i++) {
        out[i] = (int64_t)(rest % dims[i]);
        rest /= dims[i];
    }
    return out;
}

int Lattice::parity(Vertex v) const {
    int64_t s = 0;
    for (int64_t c : coords(v)) {
        s += c;
    }
    return (int)(s & 1);
}

std::vector<Edge> Lattice::edges() const {
    validate();
    std::vector<Edge> out;
    const size_t n = size();
    out.reserve(n * dims.size());
    std::vector<int64_t> c(dims.size());
    for (size_t v = 0; v < n; v++) {
        c = coords((Vertex)v);
        for (size_t axis = 0; axis < dims.size(); axis++) {
            if (dims[axis] == 1) {
                continue;
            }
            if (!periodic && c[axis] + 1 >= (int64_t)dims[axis]) {
                continue;
            }
            if (periodic && dims[axis] == 2 && c[axis] == 1) {
                continue;  // wraps onto the edge already listed from c[axis] == 0
            }
            c[axis]++;
            Vertex w = index(c);
            c[axis]--;
            out.emplace_back((Vertex)v, w);
        }
    }
    return out;
}

Graph Lattice::graph() const {
    Graph g(size());
    for (const auto &[a, b] : edges()) {
        g.add_edge(a, b);
    }
    return g;
}

std::string block_family_name(BlockFamily family) {
    switch (family) {
        case BlockFamily::BipartiteGrid:
            return "bipartite";
        case BlockFamily::Windmill:
            return "windmill";
        case BlockFamily::ShiftedGrid:
            return "shifted-grid";
    }
    return "?";
}

BlockFamily parse_block_family(const std::string &name) {
    if (name == "bipartite" || name == "bipartite-grid") {
        return BlockFamily::BipartiteGrid;
    }
    if (name == "windmill") {
        return BlockFamily::Windmill;
    }
    if (name == "shifted-grid" || name == "shifted") {
        return BlockFamily::ShiftedGrid;
    }
    throw std::invalid_argument("unknown block family '" + name + "'");
}

Cover make_cover(BlockFamily family, const Lattice &lattice, uint32_t block_size) {
    lattice.validate();
    if (block_size == 0) {
        throw std::invalid_argument("make_cover: block size must be at least 1");
    }
    const size_t d = lattice.dimension();
    if (family != BlockFamily::BipartiteGrid) {
        if (d != 2 && d != 3) {
            throw std::invalid_argument("make_cover: " + block_family_name(family) +
                                        " blocks are defined for 2D and 3D lattices only");
        }
        for (uint32_t n : lattice.dims) {
            if (lattice.periodic && (n % 2 != 0 || n < 4)) {
                throw std::invalid_argument("make_cover: " + block_family_name(family) +
                                            " blocks need even periodic dimensions of at least 4");
            }
        }
    }

    Cover cover;
    cover.lattice = lattice;
    cover.family = family;
    cover.block_size = block_size;
    cover.edges = lattice.edges();
    cover.block_of_edge.resize(cover.edges.size());

    if (family == BlockFamily::BipartiteGrid) {
        for (size_t e = 0; e < cover.edges.size(); e++) {
            cover.block_of_edge[e] = (uint32_t)e;
        }
        cover.block_count = (uint32_t)cover.edges.size();
        return cover;
    }

    std::unordered_map<uint64_t, uint32_t> ids;
    std::vector<int64_t> v(d), cell(d), key(d);
    auto wrap = [&](std::vector<int64_t> &c) {
        if (lattice.periodic) {
            for (size_t j = 0; j < d; j++) {
                c[j] = floor_mod(c[j], lattice.dims[j]);
            }
        }
    };

    for (size_t e = 0; e < cover.edges.size(); e++) {
        const auto [a, b] = cover.edges[e];
        v = lattice.coords(a);
        // Axis of the edge: the one coordinate that differs.
        std::vector<int64_t> w = lattice.coords(b);
        size_t axis = 0;
        while (axis < d && v[axis] == w[axis]) {
            axis++;
        }
        uint64_t tag = 0;
        if (family == BlockFamily::ShiftedGrid) {
            // The unique cell of matching parity that contains the edge.
            int64_t parity = floor_mod(v[axis], 2);
            for (size_t j = 0; j < d; j++) {
                if (j == axis) {
                    cell[j] = v[j];
                } else {
                    cell[j] = floor_mod(v[j], 2) == parity ? v[j] : v[j] - 1;
                }
            }
            wrap(cell);
            for (size_t j = 0; j < d; j++) {
                key[j] = floor_div(cell[j], block_size);
            }
        } else {
            std::vector<int64_t> local(d);
            for (size_t j = 0; j < d; j++) {
                local[j] = floor_mod(v[j], 2);
                cell[j] = v[j] - local[j];
            }
            if (local[axis] == 1 && !windmill_grabs(local, axis)) {
                // Arm belongs to the neighboring cell across the axis.
                cell[axis] += 2;
            }
            wrap(cell);
            for (size_t j = 0; j < d; j++) {
                key[j] = floor_div(cell[j], 2 * (int64_t)block_size);
            }
        }
        uint64_t packed = pack_key(key, tag);
        auto [it, inserted] = ids.try_emplace(packed, (uint32_t)ids.size());
        cover.block_of_edge[e] = it->second;
    }
    cover.block_count = (uint32_t)ids.size();
    return cover;
}

BlockQubits block_qubits(const Cover &cover) {
    // (block, station) for both endpoints of every edge, sorted and counted.
    std::vector<uint64_t> ends;
    ends.reserve(cover.edges.size() * 2);
    for (size_t e = 0; e < cover.edges.size(); e++) {
        uint64_t block = cover.block_of_edge[e];
        ends.push_back((block << 32) | cover.edges[e].first);
        ends.push_back((block << 32) | cover.edges[e].second);
    }
    std::sort(ends.begin(), ends.end());

    BlockQubits out;
    out.offsets.assign(cover.block_count + 1, 0);
    for (size_t i = 0; i < ends.size();) {
        size_t j = i;
        while (j < ends.size() && ends[j] == ends[i]) {
            j++;
        }
        uint32_t block = (uint32_t)(ends[i] >> 32);
        out.station.push_back((Vertex)(ends[i] & 0xFFFFFFFFu));
        out.degree.push_back((uint32_t)(j - i));
        out.offsets[block + 1]++;
        i = j;
    }
    for (size_t b = 0; b < cover.block_count; b++) {
        out.offsets[b + 1] += out.offsets[b];
    }
    return out;
}

std::vector<uint32_t> station_costs(const Cover &cover) {
    BlockQubits q = block_qubits(cover);
    std::vector<uint32_t> cost(cover.lattice.size(), 0);
    for (Vertex s : q.station) {
        cost[s]++;
    }
    return cost;
}

std::vector<PlacedBlock> cover_blocks(const Cover &cover) {
    BlockQubits q = block_qubits(cover);
    std::vector<PlacedBlock> blocks(cover.block_count);
    for (uint32_t b = 0; b < cover.block_count; b++) {
        auto first = q.station.begin() + q.offsets[b];
        auto last = q.station.begin() + q.offsets[b + 1];
        blocks[b].placement.assign(first, last);
        blocks[b].graph = Graph(blocks[b].placement.size());
    }
    for (size_t e = 0; e < cover.edges.size(); e++) {
        PlacedBlock &blk = blocks[cover.block_of_edge[e]];
        auto local = [&](Vertex s) {
            auto it = std::lower_bound(blk.placement.begin(), blk.placement.end(), s);
            return (Vertex)(it - blk.placement.begin());
        };
        blk.graph.add_edge(local(cover.edges[e].first), local(cover.edges[e].second));
    }
    return blocks;
}

}  // namespace multinet
