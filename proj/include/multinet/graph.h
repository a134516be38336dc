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

#ifndef MULTINET_GRAPH_H
#define MULTINET_GRAPH_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace multinet {

using Vertex = uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// A proper vertex coloring. `color_of[v]` is -1 for removed vertices.
struct Coloring {
    std::vector<int> color_of;
    int color_count = 0;

    bool operator==(const Coloring &other) const = default;

    /// Vertices grouped by color, each group in ascending id order.
    std::vector<std::vector<Vertex>> classes() const;
};

/// Undirected simple graph underlying a graph state.
///
/// Vertex ids live in a fixed id space [0, vertex_count()). Removing a vertex
/// tombstones it: its id stays reserved so coordinates attached to the other
/// ids remain valid. Neighbor lists are kept sorted.
class Graph {
   public:
    Graph() = default;
    explicit Graph(size_t vertex_count);

    /// Size of the id space, including removed vertices.
    size_t vertex_count() const {
        return adjacency_.size();
    }
    size_t alive_count() const {
        return alive_count_;
    }
    size_t edge_count() const {
        return edge_count_;
    }
    bool alive(Vertex v) const {
        return v < alive_.size() && alive_[v];
    }

    const std::vector<Vertex> &neighbors(Vertex v) const;
    size_t degree(Vertex v) const {
        return neighbors(v).size();
    }
    bool has_edge(Vertex a, Vertex b) const;

    void add_edge(Vertex a, Vertex b);
    void remove_edge(Vertex a, Vertex b);
    void toggle_edge(Vertex a, Vertex b);
    /// Tombstones `v` and drops its incident edges.
    void remove_vertex(Vertex v);

    /// All edges (a < b), sorted.
    std::vector<Edge> edges() const;
    std::vector<Vertex> alive_vertices() const;

    const std::optional<Coloring> &coloring() const {
        return coloring_;
    }
    /// Throws std::invalid_argument if the coloring is not proper.
    void set_coloring(Coloring coloring);
    void clear_coloring() {
        coloring_.reset();
    }

    /// True when the adjacency relation is symmetric, irreflexive, sorted and
    /// touches only alive vertices, and the coloring (if any) is proper.
    bool satisfies_invariants() const;

    /// Equality of id space, liveness and edge sets. Colorings are ignored.
    bool same_structure(const Graph &other) const;
    bool operator==(const Graph &other) const;

    std::string str() const;

   private:
    void check_vertex(Vertex v, const char *what) const;

    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<bool> alive_;
    size_t alive_count_ = 0;
    size_t edge_count_ = 0;
    std::optional<Coloring> coloring_;
};

/// Complements the edges inside the neighborhood of `v`.
Graph local_complement(const Graph &g, Vertex v);

/// CNOT a->b followed by a Z measurement of b: b is removed and the new
/// neighborhood of a is the symmetric difference of N_a and N_b (a and b
/// themselves excluded). Local Clifford byproducts are not tracked.
Graph merge_vertices(const Graph &g, Vertex a, Vertex b);

/// Local complementation on a and b, CNOT a->b, Z measurement of b and Y
/// measurement of a. Both vertices are removed and every pair (i, j) with
/// i in N_a, j in N_b is toggled, so for i in N_a the neighborhood becomes
/// N_i xor N_b and for j in N_b it becomes N_j xor N_a. Requires a, b
/// non-adjacent.
Graph connect_project(const Graph &g, Vertex a, Vertex b);

/// Proper coloring with at most `max_colors` colors. Bipartite graphs get the
/// BFS two-coloring (lowest id of each component gets color 0); otherwise
/// greedy in ascending id order with the lowest admissible color. Throws
/// std::runtime_error if the result would need more than `max_colors`.
Coloring color_graph(const Graph &g, int max_colors);

/// Text form: `graph <n>`, then `r <v>` per removed vertex, `e <a> <b>` per
/// edge and `c <v> <color>` per colored vertex.
void write_graph(std::ostream &out, const Graph &g);
Graph read_graph(std::istream &in);
std::string graph_to_string(const Graph &g);
Graph graph_from_string(const std::string &text);

}  // namespace multinet

#endif
