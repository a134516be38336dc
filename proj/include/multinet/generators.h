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

#ifndef MULTINET_GENERATORS_H
#define MULTINET_GENERATORS_H

#include <string>
#include <vector>

#include "multinet/graph.h"

namespace multinet {

enum class GraphKind { GhzStar, Line, Lattice2D, Lattice3D, WindmillBlock, ShiftedGridBlock };

GraphKind parse_graph_kind(const std::string &name);
std::string graph_kind_name(GraphKind kind);

struct GraphParams {
    /// ghz-star: number of qubits; line: number of vertices.
    uint32_t size = 0;
    /// lattice2d / lattice3d: w, h (, d). Block kinds: dimensionality is dims.size().
    std::vector<uint32_t> dims;
    bool periodic = false;
    uint32_t block_size = 1;
};

/// Standard graphs. GHZ star: vertex 0 is the center, 1..s-1 the leaves.
/// Lattices label vertices by coordinates (first axis fastest). Block kinds
/// return one elementary block cut from a periodic lattice; `dims` only
/// selects the dimensionality. Throws std::invalid_argument on zero sizes.
Graph build_graph(GraphKind kind, const GraphParams &params);

}  // namespace multinet

#endif
