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

#include "multinet/generators.h"

#include <stdexcept>

#include "multinet/lattice.h"

namespace multinet {

GraphKind parse_graph_kind(const std::string &name) {
    if (name == "ghz-star") return GraphKind::GhzStar;
    if (name == "line") return GraphKind::Line;
    if (name == "lattice2d") return GraphKind::Lattice2D;
    if (name == "lattice3d") return GraphKind::Lattice3D;
    if (name == "windmill") return GraphKind::WindmillBlock;
    if (name == "shifted-grid") return GraphKind::ShiftedGridBlock;
    throw std::invalid_argument("unknown graph generator '" + name + "'");
}

std::string graph_kind_name(GraphKind kind) {
    switch (kind) {
        case GraphKind::GhzStar:
            return "ghz-star";
        case GraphKind::Line:
            return "line";
        case GraphKind::Lattice2D:
            return "lattice2d";
        case GraphKind::Lattice3D:
            return "lattice3d";
        case GraphKind::WindmillBlock:
            return "windmill";
        case GraphKind::ShiftedGridBlock:
            return "shifted-grid";
    }
    return "?";
}

namespace {

Graph lattice_graph(const GraphParams &params, size_t rank) {
    if (params.dims.size() != rank) {
        throw std::invalid_argument("build_graph: expected " + std::to_string(rank) + " dimensions");
    }
    Lattice lattice{params.dims, params.periodic};
    lattice.validate();
    return lattice.graph();
}

Graph block_graph(BlockFamily family, const GraphParams &params) {
    size_t rank = params.dims.empty() ? 2 : params.dims.size();
    if (params.block_size == 0) {
        throw std::invalid_argument("build_graph: zero block size");
    }
    uint32_t side = 4 * params.block_size;
    Lattice lattice{std::vector<uint32_t>(rank, side), true};
    Cover cover = make_cover(family, lattice, params.block_size);
    std::vector<PlacedBlock> blocks = cover_blocks(cover);
    return std::move(blocks.front().graph);
}

}  // namespace

Graph build_graph(GraphKind kind, const GraphParams &params) {
    switch (kind) {
        case GraphKind::GhzStar: {
            if (params.size == 0) {
                throw std::invalid_argument("build_graph: zero GHZ size");
            }
            Graph g(params.size);
            for (Vertex v = 1; v < params.size; v++) {
                g.add_edge(0, v);
            }
            return g;
        }
        case GraphKind::Line: {
            if (params.size == 0) {
                throw std::invalid_argument("build_graph: zero line length");
            }
            return lattice_graph(GraphParams{0, {params.size}, params.periodic, 1}, 1);
        }
        case GraphKind::Lattice2D:
            return lattice_graph(params, 2);
        case GraphKind::Lattice3D:
            return lattice_graph(params, 3);
        case GraphKind::WindmillBlock:
            return block_graph(BlockFamily::Windmill, params);
        case GraphKind::ShiftedGridBlock:
            return block_graph(BlockFamily::ShiftedGrid, params);
    }
    throw std::invalid_argument("build_graph: unknown generator");
}

}  // namespace multinet
