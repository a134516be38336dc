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

#include "multinet/graph.h"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace multinet {

std::vector<std::vector<Vertex>> Coloring::classes() const {
    std::vector<std::vector<Vertex>> out(color_count);
    for (size_t v = 0; v < color_of.size(); v++) {
        if (color_of[v] >= 0) {
            out[color_of[v]].push_back((Vertex)v);
        }
    }
    return out;
}

Graph::Graph(size_t vertex_count)
    : adjacency_(vertex_count), alive_(vertex_count, true), alive_count_(vertex_count) {
}

void Graph::check_vertex(Vertex v, const char *what) const {
    if (v >= adjacency_.size()) {
        throw std::out_of_range(std::string(what) + ": vertex " + std::to_string(v) + " out of range (vertex_count=" +
                                std::to_string(adjacency_.size()) + ")");
    }
    if (!alive_[v]) {
        throw std::out_of_range(std::string(what) + ": vertex " + std::to_string(v) + " was removed");
    }
}

const std::vector<Vertex> &Graph::neighbors(Vertex v) const {
    check_vertex(v, "neighbors");
    return adjacency_[v];
}

bool Graph::has_edge(Vertex a, Vertex b) const {
    check_vertex(a, "has_edge");
    check_vertex(b, "has_edge");
    const auto &n = adjacency_[a];
    return std::binary_search(n.begin(), n.end(), b);
}

void Graph::add_edge(Vertex a, Vertex b) {
    check_vertex(a, "add_edge");
    check_vertex(b, "add_edge");
    if (a == b) {
        throw std::invalid_argument("add_edge: self-edge on vertex " + std::to_string(a));
    }
    auto &na = adjacency_[a];
    auto it = std::lower_bound(na.begin(), na.end(), b);
    if (it != na.end() && *it == b) {
        return;
    }
    na.insert(it, b);
    auto &nb = adjacency_[b];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    edge_count_++;
    if (coloring_.has_value() && coloring_->color_of[a] == coloring_->color_of[b]) {
        coloring_.reset();
    }
}

void Graph::remove_edge(Vertex a, Vertex b) {
    check_vertex(a, "remove_edge");
    check_vertex(b, "remove_edge");
    auto &na = adjacency_[a];
    auto it = std::lower_bound(na.begin(), na.end(), b);
    if (it == na.end() || *it != b) {
        return;
    }
    na.erase(it);
    auto &nb = adjacency_[b];
    nb.erase(std::lower_bound(nb.begin(), nb.end(), a));
    edge_count_--;
}

void Graph::toggle_edge(Vertex a, Vertex b) {
    if (has_edge(a, b)) {
        remove_edge(a, b);
    } else {
        add_edge(a, b);
    }
}

void Graph::remove_vertex(Vertex v) {
    check_vertex(v, "remove_vertex");
    for (Vertex u : adjacency_[v]) {
        auto &nu = adjacency_[u];
        nu.erase(std::lower_bound(nu.begin(), nu.end(), v));
    }
    edge_count_ -= adjacency_[v].size();
    adjacency_[v].clear();
    alive_[v] = false;
    alive_count_--;
    if (coloring_.has_value()) {
        coloring_->color_of[v] = -1;
    }
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (size_t a = 0; a < adjacency_.size(); a++) {
        for (Vertex b : adjacency_[a]) {
            if (a < b) {
                out.emplace_back((Vertex)a, b);
            }
        }
    }
    return out;
}

std::vector<Vertex> Graph::alive_vertices() const {
    std::vector<Vertex> out;
    out.reserve(alive_count_);
    for (size_t v = 0; v < alive_.size(); v++) {
        if (alive_[v]) {
            out.push_back((Vertex)v);
        }
    }
    return out;
}

void Graph::set_coloring(Coloring coloring) {
    if (coloring.color_of.size() != adjacency_.size()) {
        throw std::invalid_argument("set_coloring: coloring size does not match vertex count");
    }
    for (size_t v = 0; v < adjacency_.size(); v++) {
        int c = coloring.color_of[v];
        if (!alive_[v]) {
            coloring.color_of[v] = -1;
            continue;
        }
        if (c < 0 || c >= coloring.color_count) {
            throw std::invalid_argument("set_coloring: vertex " + std::to_string(v) + " has no valid color");
        }
        for (Vertex u : adjacency_[v]) {
            if (coloring.color_of[u] == c) {
                throw std::invalid_argument("set_coloring: edge " + std::to_string(v) + "-" + std::to_string(u) +
                                            " joins two vertices of color " + std::to_string(c));
            }
        }
    }
    coloring_ = std::move(coloring);
}

bool Graph::satisfies_invariants() const {
    size_t half_edges = 0;
    for (size_t v = 0; v < adjacency_.size(); v++) {
        const auto &n = adjacency_[v];
        if (!alive_[v] && !n.empty()) {
            return false;
        }
        if (!std::is_sorted(n.begin(), n.end()) || std::adjacent_find(n.begin(), n.end()) != n.end()) {
            return false;
        }
        for (Vertex u : n) {
            if (u == v || u >= adjacency_.size() || !alive_[u]) {
                return false;
            }
            const auto &m = adjacency_[u];
            if (!std::binary_search(m.begin(), m.end(), (Vertex)v)) {
                return false;
            }
            if (coloring_.has_value() && coloring_->color_of[u] == coloring_->color_of[v]) {
                return false;
            }
        }
        half_edges += n.size();
    }
    return half_edges == 2 * edge_count_;
}

bool Graph::same_structure(const Graph &other) const {
    return adjacency_ == other.adjacency_ && alive_ == other.alive_;
}

bool Graph::operator==(const Graph &other) const {
    return same_structure(other);
}

std::string Graph::str() const {
    std::stringstream ss;
    write_graph(ss, *this);
    return ss.str();
}

Graph local_complement(const Graph &g, Vertex v) {
    const std::vector<Vertex> nv = g.neighbors(v);
    Graph out = g;
    out.clear_coloring();
    for (size_t i = 0; i < nv.size(); i++) {
        for (size_t j = i + 1; j < nv.size(); j++) {
            out.toggle_edge(nv[i], nv[j]);
        }
    }
    return out;
}

Graph merge_vertices(const Graph &g, Vertex a, Vertex b) {
    if (a == b) {
        throw std::invalid_argument("merge_vertices: a and b must differ (both are " + std::to_string(a) + ")");
    }
    const std::vector<Vertex> &na = g.neighbors(a);
    const std::vector<Vertex> &nb = g.neighbors(b);
    std::vector<Vertex> merged;
    std::set_symmetric_difference(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(merged));
    std::erase_if(merged, [&](Vertex u) { return u == a || u == b; });

    Graph out = g;
    out.clear_coloring();
    out.remove_vertex(b);
    for (Vertex u : std::vector<Vertex>(out.neighbors(a))) {
        out.remove_edge(a, u);
    }
    for (Vertex u : merged) {
        out.add_edge(a, u);
    }
    return out;
}

Graph connect_project(const Graph &g, Vertex a, Vertex b) {
    if (a == b) {
        throw std::invalid_argument("connect_project: a and b must differ (both are " + std::to_string(a) + ")");
    }
    if (g.has_edge(a, b)) {
        throw std::invalid_argument("connect_project: vertices " + std::to_string(a) + " and " + std::to_string(b) +
                                    " are adjacent");
    }
    const std::vector<Vertex> na = g.neighbors(a);
    const std::vector<Vertex> nb = g.neighbors(b);
    Graph out = g;
    out.clear_coloring();
    out.remove_vertex(a);
    out.remove_vertex(b);
    // Pairs counted from both sides cancel, which is the GF(2) sum of the
    // complete bipartite toggles between N_a and N_b.
    for (Vertex i : na) {
        for (Vertex j : nb) {
            if (i != j) {
                out.toggle_edge(i, j);
            }
        }
    }
    return out;
}

Coloring color_graph(const Graph &g, int max_colors) {
    if (g.alive_count() == 0) {
        throw std::invalid_argument("color_graph: graph has no vertices");
    }
    if (max_colors < 1) {
        throw std::invalid_argument("color_graph: max_colors must be at least 1");
    }
    const size_t n = g.vertex_count();
    Coloring result;
    result.color_of.assign(n, -1);

    // Bipartite attempt.
    bool bipartite = true;
    std::deque<Vertex> queue;
    for (size_t s = 0; s < n && bipartite; s++) {
        if (!g.alive((Vertex)s) || result.color_of[s] >= 0) {
            continue;
        }
        result.color_of[s] = 0;
        queue.push_back((Vertex)s);
        while (!queue.empty() && bipartite) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex u : g.neighbors(v)) {
                if (result.color_of[u] < 0) {
                    result.color_of[u] = 1 - result.color_of[v];
                    queue.push_back(u);
                } else if (result.color_of[u] == result.color_of[v]) {
                    bipartite = false;
                    break;
                }
            }
        }
    }
    if (bipartite) {
        result.color_count = g.edge_count() > 0 ? 2 : 1;
        if (result.color_count > max_colors) {
            throw std::runtime_error("color_graph: graph is not " + std::to_string(max_colors) + "-colorable");
        }
        return result;
    }
    if (max_colors <= 2) {
        throw std::runtime_error("color_graph: graph is not " + std::to_string(max_colors) +
                                 "-colorable (odd cycle found)");
    }

    // Greedy in ascending id order.
    result.color_of.assign(n, -1);
    result.color_count = 0;
    std::vector<char> used;
    for (size_t v = 0; v < n; v++) {
        if (!g.alive((Vertex)v)) {
            continue;
        }
        used.assign(result.color_count + 1, 0);
        for (Vertex u : g.neighbors((Vertex)v)) {
            int c = result.color_of[u];
            if (c >= 0) {
                used[c] = 1;
            }
        }
        int c = 0;
        while (used[c]) {
            c++;
        }
        if (c >= max_colors) {
            throw std::runtime_error("color_graph: greedy coloring needs more than " + std::to_string(max_colors) +
                                     " colors (at vertex " + std::to_string(v) + ")");
        }
        result.color_of[v] = c;
        result.color_count = std::max(result.color_count, c + 1);
    }
    return result;
}

void write_graph(std::ostream &out, const Graph &g) {
    out << "graph " << g.vertex_count() << "\n";
    for (size_t v = 0; v < g.vertex_count(); v++) {
        if (!g.alive((Vertex)v)) {
            out << "r " << v << "\n";
        }
    }
    for (const auto &[a, b] : g.edges()) {
        out << "e " << a << " " << b << "\n";
    }
    if (g.coloring().has_value()) {
        const auto &c = g.coloring()->color_of;
        for (size_t v = 0; v < c.size(); v++) {
            if (c[v] >= 0) {
                out << "c " << v << " " << c[v] << "\n";
            }
        }
    }
}

Graph read_graph(std::istream &in) {
    std::string line;
    size_t line_number = 0;
    std::optional<Graph> g;
    std::vector<int> colors;
    std::vector<Vertex> removed;
    bool any_color = false;
    auto fail = [&](const std::string &msg) {
        throw std::invalid_argument("read_graph: line " + std::to_string(line_number) + ": " + msg);
    };
    while (std::getline(in, line)) {
        line_number++;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') {
            continue;
        }
        if (tag == "graph") {
            if (g.has_value()) {
                fail("duplicate header");
            }
            long long n;
            if (!(ls >> n) || n < 0) {
                fail("bad vertex count");
            }
            g.emplace((size_t)n);
            colors.assign((size_t)n, -1);
            continue;
        }
        if (!g.has_value()) {
            fail("missing 'graph <n>' header");
        }
        long long x, y;
        if (tag == "r") {
            if (!(ls >> x) || x < 0 || (size_t)x >= g->vertex_count()) {
                fail("bad removed vertex");
            }
            removed.push_back((Vertex)x);
            continue;
        }
        if (!(ls >> x >> y)) {
            fail("expected two integers after '" + tag + "'");
        }
        if (x < 0 || (size_t)x >= g->vertex_count()) {
            fail("vertex out of range");
        }
        if (tag == "e") {
            if (y < 0 || (size_t)y >= g->vertex_count() || x == y) {
                fail("bad edge");
            }
            g->add_edge((Vertex)x, (Vertex)y);
        } else if (tag == "c") {
            if (y < 0) {
                fail("negative color");
            }
            colors[x] = (int)y;
            any_color = true;
        } else {
            fail("unknown record '" + tag + "'");
        }
    }
    if (!g.has_value()) {
        throw std::invalid_argument("read_graph: missing 'graph <n>' header");
    }
    for (Vertex v : removed) {
        if (g->degree(v) != 0) {
            throw std::invalid_argument("read_graph: removed vertex " + std::to_string(v) + " has edges");
        }
        g->remove_vertex(v);
    }
    if (any_color) {
        Coloring c;
        c.color_of = colors;
        for (int x : colors) {
            c.color_count = std::max(c.color_count, x + 1);
        }
        g->set_coloring(std::move(c));
    }
    return std::move(*g);
}

std::string graph_to_string(const Graph &g) {
    return g.str();
}

Graph graph_from_string(const std::string &text) {
    std::istringstream in(text);
    return read_graph(in);
}

}  // namespace multinet
