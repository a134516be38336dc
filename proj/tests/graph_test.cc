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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "multinet/generators.h"
#include "multinet/graph.h"

namespace multinet {
namespace {

Graph make_graph(size_t n, std::initializer_list<Edge> edges) {
    Graph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

Graph random_graph(std::mt19937_64 &rng, size_t n, double p) {
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (Vertex a = 0; a < n; a++) {
        for (Vertex b = a + 1; b < n; b++) {
            if (coin(rng)) g.add_edge(a, b);
        }
    }
    return g;
}

TEST(Graph, EdgeBookkeeping) {
    Graph g(4);
    g.add_edge(2, 0);
    g.add_edge(1, 3);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_TRUE(g.has_edge(0, 2));
    g.toggle_edge(0, 2);
    EXPECT_FALSE(g.has_edge(2, 0));
    g.toggle_edge(0, 1);
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 3}}));
    EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 9), std::out_of_range);
    EXPECT_TRUE(g.satisfies_invariants());
}

TEST(Graph, RemoveVertexKeepsIds) {
    Graph g = make_graph(3, {{0, 1}, {1, 2}});
    g.remove_vertex(1);
    EXPECT_EQ(g.vertex_count(), 3u);
    EXPECT_EQ(g.alive_count(), 2u);
    EXPECT_EQ(g.edge_count(), 0u);
    EXPECT_FALSE(g.alive(1));
    EXPECT_EQ(g.alive_vertices(), (std::vector<Vertex>{0, 2}));
}

TEST(LocalComplement, LineBecomesTriangle) {
    Graph g = make_graph(3, {{0, 1}, {1, 2}});
    Graph t = local_complement(g, 1);
    EXPECT_EQ(t.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(LocalComplement, TriangleBecomesStar) {
    Graph g = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    Graph t = local_complement(g, 0);
    EXPECT_EQ(t.edges(), (std::vector<Edge>{{0, 1}, {0, 2}}));
}

TEST(LocalComplement, IsAnInvolution) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; trial++) {
        Graph g = random_graph(rng, 8, 0.4);
        Vertex v = rng() % 8;
        EXPECT_EQ(local_complement(local_complement(g, v), v), g);
    }
}

TEST(LocalComplement, RejectsBadVertex) {
    Graph g(2);
    EXPECT_THROW(local_complement(g, 5), std::out_of_range);
}

TEST(Merge, PathSwapsToSingleEdge) {
    Graph g = make_graph(3, {{0, 1}, {1, 2}});
    Graph m = merge_vertices(g, 0, 1);
    EXPECT_FALSE(m.alive(1));
    EXPECT_EQ(m.edges(), (std::vector<Edge>{{0, 2}}));
}

TEST(Merge, LeafOfOneStarIntoCenterOfAnother) {
    // Stars 0-(1,2) and 3-(4,5): merging leaf 1 with center 3.
    Graph g = make_graph(6, {{0, 1}, {0, 2}, {3, 4}, {3, 5}});
    Graph m = merge_vertices(g, 1, 3);
    EXPECT_EQ(m.alive_count(), 5u);
    EXPECT_EQ(m.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 4}, {1, 5}}));
}

TEST(Merge, CentersGiveOneLargerStar) {
    Graph g = make_graph(6, {{0, 1}, {0, 2}, {3, 4}, {3, 5}});
    Graph m = merge_vertices(g, 0, 3);
    EXPECT_EQ(m.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {0, 4}, {0, 5}}));
}

TEST(Merge, AdjacentPairUsesSymmetricDifference) {
    // Triangle 0-1-2, merge(0, 1): N0 = {1,2}, N1 = {0,2}; the shared
    // neighbor 2 cancels and the a-b edge itself is dropped.
    Graph g = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    Graph m = merge_vertices(g, 0, 1);
    EXPECT_EQ(m.alive_count(), 2u);
    EXPECT_EQ(m.edge_count(), 0u);
}

TEST(Merge, Errors) {
    Graph g = make_graph(3, {{0, 1}});
    EXPECT_THROW(merge_vertices(g, 1, 1), std::invalid_argument);
    EXPECT_THROW(merge_vertices(g, 1, 7), std::out_of_range);
}

TEST(Connect, BellPairsJoin) {
    Graph g = make_graph(4, {{0, 1}, {2, 3}});
    Graph c = connect_project(g, 1, 2);
    EXPECT_EQ(c.alive_count(), 2u);
    EXPECT_EQ(c.edges(), (std::vector<Edge>{{0, 3}}));
}

TEST(Connect, StarsJoinToFourQubitStar) {
    // Leaf 1 of the first star with center 3 of the second.
    Graph g = make_graph(6, {{0, 1}, {0, 2}, {3, 4}, {3, 5}});
    Graph c = connect_project(g, 1, 3);
    // N(1) = {0} and N(3) = {4, 5}, so 0 picks up both far leaves.
    EXPECT_EQ(c.alive_count(), 4u);
    EXPECT_EQ(c.edges(), (std::vector<Edge>{{0, 2}, {0, 4}, {0, 5}}));
}

TEST(Connect, RejectsAdjacentVertices) {
    Graph g = make_graph(3, {{0, 1}, {1, 2}});
    EXPECT_THROW(connect_project(g, 0, 1), std::invalid_argument);
    EXPECT_THROW(connect_project(g, 0, 0), std::invalid_argument);
}

TEST(Coloring, StarAndTorus) {
    Graph star = build_graph(GraphKind::GhzStar, {3});
    Coloring c = color_graph(star, 2);
    EXPECT_EQ(c.color_count, 2);
    auto classes = c.classes();
    ASSERT_EQ(classes.size(), 2u);
    EXPECT_EQ(classes[0], (std::vector<Vertex>{0}));
    EXPECT_EQ(classes[1], (std::vector<Vertex>{1, 2}));

    Graph torus = build_graph(GraphKind::Lattice2D, {0, {64, 64}, true});
    Coloring t = color_graph(torus, 2);
    EXPECT_EQ(t.color_count, 2);
    for (auto [a, b] : torus.edges()) EXPECT_NE(t.color_of[a], t.color_of[b]);
}

TEST(Coloring, OddCycleIsNotTwoColorable) {
    Graph g = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    try {
        color_graph(g, 2);
        FAIL() << "expected an error";
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find("not 2-colorable"), std::string::npos);
    }
    EXPECT_EQ(color_graph(g, 3).color_count, 3);
}

TEST(Coloring, ImproperColoringRejected) {
    Graph g = make_graph(2, {{0, 1}});
    EXPECT_THROW(g.set_coloring(Coloring{{0, 0}, 1}), std::invalid_argument);
}

TEST(Generators, SmallShapes) {
    Graph star = build_graph(GraphKind::GhzStar, {3});
    EXPECT_EQ(star.degree(0), 2u);
    EXPECT_EQ(star.degree(1), 1u);
    EXPECT_EQ(star.degree(2), 1u);

    Graph square = build_graph(GraphKind::Lattice2D, {0, {2, 2}, false});
    EXPECT_EQ(square.alive_count(), 4u);
    EXPECT_EQ(square.edge_count(), 4u);

    Graph line = build_graph(GraphKind::Line, {5});
    EXPECT_EQ(line.edge_count(), 4u);
}

TEST(Generators, PeriodicLattices) {
    Graph torus = build_graph(GraphKind::Lattice2D, {0, {64, 64}, true});
    EXPECT_EQ(torus.alive_count(), 4096u);
    EXPECT_EQ(torus.edge_count(), 8192u);
    for (Vertex v : torus.alive_vertices()) ASSERT_EQ(torus.degree(v), 4u);

    Graph cube = build_graph(GraphKind::Lattice3D, {0, {4, 4, 4}, true});
    EXPECT_EQ(cube.edge_count(), 3u * 64u);
}

TEST(Generators, Errors) {
    EXPECT_THROW(build_graph(GraphKind::Lattice2D, {0, {0, 3}, false}), std::invalid_argument);
    EXPECT_THROW(build_graph(GraphKind::GhzStar, {0}), std::invalid_argument);
    EXPECT_THROW(parse_graph_kind("hexagon"), std::invalid_argument);
}

TEST(Serialization, RoundTrip) {
    std::mt19937_64 rng(11);
    Graph g = random_graph(rng, 9, 0.5);
    g.remove_vertex(4);
    g.set_coloring(color_graph(g, 9));
    Graph back = graph_from_string(graph_to_string(g));
    EXPECT_EQ(back, g);
    EXPECT_TRUE(back.same_structure(g));
}

TEST(Serialization, MalformedInput) {
    EXPECT_THROW(graph_from_string("not a graph"), std::invalid_argument);
}

}  // namespace
}  // namespace multinet
