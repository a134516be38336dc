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

#include <algorithm>
#include <set>

#include "multinet/generators.h"
#include "multinet/lattice.h"
#include "multinet/schemes.h"

namespace multinet {
namespace {

Lattice torus(std::vector<uint32_t> dims) {
    return Lattice{std::move(dims), true};
}

uint32_t bottleneck(ArchFamily family, std::vector<uint32_t> dims, uint32_t block_size = 1) {
    Architecture arch;
    arch.family = family;
    arch.dims = std::move(dims);
    arch.block_size = block_size;
    return storage_per_node(arch).bottleneck;
}

TEST(Lattice, IndexAndCoords) {
    Lattice l = torus({4, 6});
    EXPECT_EQ(l.size(), 24u);
    for (Vertex v = 0; v < l.size(); v++) {
        auto c = l.coords(v);
        EXPECT_EQ(l.index(c), v);
    }
    std::vector<int64_t> wrapped{-1, 6};
    EXPECT_EQ(l.coords(l.index(wrapped)), (std::vector<int64_t>{3, 0}));
    EXPECT_THROW((Lattice{{0, 3}, true}).validate(), std::invalid_argument);
}

TEST(Lattice, ParityIsProperOnEvenTorus) {
    Lattice l = torus({6, 4, 4});
    for (auto [a, b] : l.edges()) EXPECT_NE(l.parity(a), l.parity(b));
}

TEST(Lattice, SmallPeriodicSidesDropDuplicates) {
    Lattice ring{{2}, true};
    EXPECT_EQ(ring.edges().size(), 1u);
    Lattice dot{{1}, true};
    EXPECT_TRUE(dot.edges().empty());
}

TEST(Cover, EveryEdgeBelongsToOneBlock) {
    for (BlockFamily f : {BlockFamily::BipartiteGrid, BlockFamily::Windmill, BlockFamily::ShiftedGrid}) {
        for (auto dims : {std::vector<uint32_t>{8, 8}, std::vector<uint32_t>{4, 4, 4}}) {
            for (uint32_t b : {1u, 2u, 4u}) {
                Cover c = make_cover(f, torus(dims), b);
                ASSERT_EQ(c.edges.size(), c.block_of_edge.size());
                EXPECT_EQ(c.edges, c.lattice.edges());
                std::set<uint32_t> used(c.block_of_edge.begin(), c.block_of_edge.end());
                EXPECT_EQ(used.size(), c.block_count);
            }
        }
    }
}

TEST(Storage, PerNodeCosts) {
    EXPECT_EQ(bottleneck(ArchFamily::BipartiteGrid, {8, 8}), 4u);
    EXPECT_EQ(bottleneck(ArchFamily::Windmill, {8, 8}), 2u);
    EXPECT_EQ(bottleneck(ArchFamily::ShiftedGrid, {8, 8}), 2u);
    EXPECT_EQ(bottleneck(ArchFamily::BipartiteGrid, {8, 8, 8}), 6u);
    EXPECT_EQ(bottleneck(ArchFamily::Windmill, {8, 8, 8}), 3u);
    EXPECT_EQ(bottleneck(ArchFamily::ShiftedGrid, {8, 8, 8}), 2u);
}

TEST(Storage, UniformCostsAtUnitBlocks) {
    for (auto dims : {std::vector<uint32_t>{8, 8}, std::vector<uint32_t>{8, 8, 8}}) {
        Cover c = make_cover(BlockFamily::ShiftedGrid, torus(dims), 1);
        for (uint32_t cost : station_costs(c)) EXPECT_EQ(cost, 2u);
        Cover bip = make_cover(BlockFamily::BipartiteGrid, torus(dims), 1);
        for (uint32_t cost : station_costs(bip)) EXPECT_EQ(cost, 2 * dims.size());
    }
}

TEST(Storage, GhzAndTriangular) {
    Architecture ghz;
    ghz.family = ArchFamily::GhzStar;
    ghz.scheme = SchemeKind::A;
    StorageCost a = storage_per_node(ghz);
    EXPECT_EQ(a.per_class.at("center"), 1u);
    EXPECT_EQ(a.per_class.at("leaf"), 1u);
    ghz.scheme = SchemeKind::C;
    StorageCost c = storage_per_node(ghz);
    EXPECT_EQ(c.per_class.at("center"), 2u);
    EXPECT_EQ(c.bottleneck, 2u);
    EXPECT_EQ(c.copies(2000), 1000u);

    Architecture tri;
    tri.family = ArchFamily::Triangular;
    EXPECT_EQ(storage_per_node(tri).bottleneck, 3u);
    tri.scheme = SchemeKind::B;
    EXPECT_EQ(storage_per_node(tri).bottleneck, 4u);
}

TEST(Storage, UndefinedCombinations) {
    Architecture arch;
    arch.family = ArchFamily::Windmill;
    arch.dims = {8};
    EXPECT_THROW(storage_per_node(arch), std::invalid_argument);
    arch.dims = {8, 8};
    arch.block_size = 0;
    EXPECT_THROW(storage_per_node(arch), std::invalid_argument);
}

TEST(ValidateCover, AllFamiliesMergeToTheirLattice) {
    for (BlockFamily f : {BlockFamily::BipartiteGrid, BlockFamily::Windmill, BlockFamily::ShiftedGrid}) {
        for (auto dims : {std::vector<uint32_t>{8, 8}, std::vector<uint32_t>{4, 4, 4}}) {
            for (uint32_t b : {1u, 2u, 4u}) {
                Cover c = make_cover(f, torus(dims), b);
                CoverValidation v = validate_cover(cover_blocks(c), c.lattice.graph());
                EXPECT_TRUE(v.ok) << block_family_name(f) << " rank " << dims.size() << " b=" << b << ": "
                                  << v.reason;
                size_t qubits = 0;
                for (const PlacedBlock &pb : cover_blocks(c)) qubits += pb.graph.vertex_count();
                EXPECT_EQ(v.trace.size(), qubits - c.lattice.size());
            }
        }
    }
}

TEST(ValidateCover, BellGridOnOpenSquare) {
    Lattice open{{4, 4}, false};
    std::vector<PlacedBlock> blocks;
    for (auto [a, b] : open.edges()) {
        Graph pair(2);
        pair.add_edge(0, 1);
        blocks.push_back({pair, {a, b}});
    }
    CoverValidation v = validate_cover(blocks, open.graph());
    EXPECT_TRUE(v.ok) << v.reason;
    EXPECT_EQ(open.graph().edge_count(), 24u);
}

TEST(ValidateCover, MisplacedWindmillBlockFails) {
    Lattice l = torus({8, 8});
    Cover c = make_cover(BlockFamily::Windmill, l, 1);
    std::vector<PlacedBlock> blocks = cover_blocks(c);
    ASSERT_TRUE(validate_cover(blocks, l.graph()).ok);
    for (Vertex &site : blocks[3].placement) {
        auto x = l.coords(site);
        x[0] += 1;
        site = l.index(x);
    }
    CoverValidation v = validate_cover(blocks, l.graph());
    EXPECT_FALSE(v.ok);
    EXPECT_FALSE(v.reason.empty());
}

TEST(ValidateCover, MissingBlockFails) {
    Lattice l = torus({8, 8});
    std::vector<PlacedBlock> blocks = cover_blocks(make_cover(BlockFamily::ShiftedGrid, l, 1));
    blocks.pop_back();
    EXPECT_FALSE(validate_cover(blocks, l.graph()).ok);
}

TEST(Generators, BlockGraphsMatchCoverBlocks) {
    Graph windmill = build_graph(GraphKind::WindmillBlock, {0, {0, 0}, true, 1});
    Graph shifted = build_graph(GraphKind::ShiftedGridBlock, {0, {0, 0}, true, 1});
    EXPECT_GT(windmill.edge_count(), 0u);
    EXPECT_GT(shifted.edge_count(), 0u);
    EXPECT_EQ(color_graph(windmill, 2).color_count, 2);
    EXPECT_EQ(color_graph(shifted, 2).color_count, 2);
}

TEST(GlobalStorage, BipartiteGrid) {
    Architecture arch;
    arch.family = ArchFamily::BipartiteGrid;
    arch.dims = {64, 64};
    GlobalAllocation a = allocate_global_storage(arch, 1200ull * 64 * 64);
    EXPECT_EQ(a.n, 300u);
    ASSERT_EQ(a.per_station.size(), 4096u);
    EXPECT_EQ(a.per_station[0], 1200u);
}

TEST(GlobalStorage, ExactlyOneCopy) {
    Architecture arch;
    arch.family = ArchFamily::ShiftedGrid;
    arch.dims = {8, 8};
    arch.block_size = 2;
    std::vector<uint32_t> costs = station_costs(make_cover(BlockFamily::ShiftedGrid, torus({8, 8}), 2));
    uint64_t one = 0;
    for (uint32_t c : costs) one += c;
    EXPECT_EQ(allocate_global_storage(arch, one).n, 1u);
    EXPECT_THROW(allocate_global_storage(arch, one - 1), std::invalid_argument);
}

TEST(GlobalStorage, LargerShiftedBlocksGiveMoreCopies) {
    uint64_t prev = 0;
    for (uint32_t b : {1u, 2u, 4u}) {
        Architecture arch;
        arch.family = ArchFamily::ShiftedGrid;
        arch.dims = {64, 64};
        arch.block_size = b;
        std::vector<uint32_t> costs = station_costs(make_cover(BlockFamily::ShiftedGrid, torus({64, 64}), b));
        if (b > 1) {
            EXPECT_TRUE(std::count(costs.begin(), costs.end(), 1u) > 0);
        }
        uint64_t n = allocate_global_storage(arch, 1200ull * 64 * 64).n;
        EXPECT_GT(n, prev) << b;
        prev = n;
    }
}

}  // namespace
}  // namespace multinet
