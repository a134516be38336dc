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

#ifndef MULTINET_LATTICE_H
#define MULTINET_LATTICE_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "multinet/graph.h"

namespace multinet {

/// Hypercubic lattice of repeater stations. Station ids are row-major with
/// the first axis fastest: id = x0 + d0 * (x1 + d1 * x2).
struct Lattice {
    std::vector<uint32_t> dims;
    bool periodic = true;

    size_t dimension() const {
        return dims.size();
    }
    size_t size() const;
    Vertex index(std::span<const int64_t> coords) const;
    std::vector<int64_t> coords(Vertex v) const;
    /// Parity of the coordinate sum; a proper 2-coloring when every periodic
    /// dimension is even.
    int parity(Vertex v) const;

    /// Station edges in canonical order: for each station, for each axis, the
    /// edge towards +e_axis. Wrapped duplicates and self-loops are dropped.
    std::vector<Edge> edges() const;
    Graph graph() const;

    /// Throws std::invalid_argument on empty or zero dimensions.
    void validate() const;
};

/// Ways to cut the target lattice into elementary building blocks.
///
///  - BipartiteGrid: every lattice edge is its own Bell pair.
///  - Windmill: even cells (all cell coordinates even) carry their cube edges,
///    and every edge between two even cells is attached to exactly one of its
///    endpoint cells by a pinwheel rule. 2D stations hold 2 qubits per copy;
///    in 3D six of eight cell corners hold 3 and two hold 1.
///  - ShiftedGrid: the cells whose coordinates all share one parity. Even and
///    odd cells interleave, touch only at corners and partition the edges, so
///    every station holds 2 qubits per copy in any dimension.
///
/// `block_size` groups elementary units: b x b (x b) windmills, or cells with
/// floor(cell / b) equal for the shifted grid. Shared stations inside a group
/// need only one qubit. Groups that do not fit the lattice period are
/// truncated at the wrap.
enum class BlockFamily { BipartiteGrid, Windmill, ShiftedGrid };

std::string block_family_name(BlockFamily family);
BlockFamily parse_block_family(const std::string &name);

/// An edge partition of a lattice into blocks.
struct Cover {
    Lattice lattice;
    BlockFamily family = BlockFamily::BipartiteGrid;
    uint32_t block_size = 1;
    std::vector<Edge> edges;
    std::vector<uint32_t> block_of_edge;
    uint32_t block_count = 0;
};

/// Throws std::invalid_argument when the family is not defined for the
/// lattice dimension or the periodic dimensions are odd.
Cover make_cover(BlockFamily family, const Lattice &lattice, uint32_t block_size);

/// Qubits per copy at every station: the number of distinct blocks touching it.
std::vector<uint32_t> station_costs(const Cover &cover);

/// A block graph together with the station each of its vertices sits at.
struct PlacedBlock {
    Graph graph;
    std::vector<Vertex> placement;
};

std::vector<PlacedBlock> cover_blocks(const Cover &cover);

/// Per-qubit view of the blocks without materializing graphs: for block b,
/// entries [offsets[b], offsets[b + 1]) list (station, degree in block).
struct BlockQubits {
    std::vector<uint32_t> offsets;
    std::vector<Vertex> station;
    std::vector<uint32_t> degree;
};

BlockQubits block_qubits(const Cover &cover);

}  // namespace multinet

#endif
