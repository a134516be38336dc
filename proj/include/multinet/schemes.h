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

#ifndef MULTINET_SCHEMES_H
#define MULTINET_SCHEMES_H

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "multinet/graph.h"
#include "multinet/hashing.h"
#include "multinet/lattice.h"
#include "multinet/noise.h"

namespace multinet {

/// A: multipartite blocks purified and merged in one step.
/// B: Bell pairs purified, then merged in a separate noisy step.
/// C: Bell pairs purified and merged by one combined resource state.
enum class SchemeKind { A, B, C };

std::string scheme_name(SchemeKind s);
SchemeKind parse_scheme(const std::string &name);

struct StorageModel {
    enum class Mode { PerNode, Global };
    Mode mode = Mode::PerNode;
    /// Qubits per node, or in total for Global.
    uint64_t capacity = 1;

    void validate() const;
};

enum class ArchFamily { BipartiteGrid, Windmill, ShiftedGrid, GhzStar, Triangular };

std::string arch_family_name(ArchFamily f);
ArchFamily parse_arch_family(const std::string &name);

struct Architecture {
    ArchFamily family = ArchFamily::GhzStar;
    uint32_t block_size = 1;
    /// Target lattice for the grid families. Only its rank matters for
    /// storage_per_node.
    std::vector<uint32_t> dims;
    bool periodic = true;
    SchemeKind scheme = SchemeKind::A;
    /// Triangular network qubits per copy at a station.
    uint32_t triangular_multipartite_cost = 3;
    uint32_t triangular_bipartite_cost = 4;

    size_t dimensionality() const {
        return dims.size();
    }
    /// Throws std::invalid_argument for combinations that are not defined.
    void validate() const;
};

struct StorageCost {
    /// Node class -> qubits per copy. Grid families use "cost-<k>" classes
    /// mapping to k; the value is the number of stations only inside
    /// `stations_per_class`.
    std::map<std::string, uint32_t> per_class;
    std::map<std::string, uint64_t> stations_per_class;
    uint32_t bottleneck = 0;
    /// Copies in per-node mode: floor(capacity / bottleneck).
    uint64_t copies(uint64_t capacity) const;
};

StorageCost storage_per_node(const Architecture &arch);

struct SchemeResult {
    double F = 0;
    uint64_t m = 0;
    uint64_t n_used = 0;
    /// Node class -> qubits reserved.
    std::map<std::string, uint64_t> storage;
    bool infeasible = false;
};

/// Either a fixed output count or the largest m whose bound reaches a
/// fidelity threshold.
struct Target {
    enum class Kind { Copies, Threshold };
    Kind kind = Kind::Copies;
    uint64_t m = 1;
    double threshold = 0.9;

    static Target copies(uint64_t m) {
        return Target{Kind::Copies, m, 0.9};
    }
    static Target at_threshold(double t) {
        return Target{Kind::Threshold, 1, t};
    }
};

struct HashingOptions {
    bool optimize_split = false;
    BennettMode bennett = BennettMode::Printed;
};

/// Input noise for the 3-qubit GHZ scenarios: `channel` acts on the selected
/// qubits before distribution.
struct GhzNoise {
    enum class Qubits { All, Leaves };
    PauliChannel channel;
    Qubits qubits = Qubits::All;
};

/// 3-qubit GHZ, center at the bottleneck station. Resource noise p is folded
/// into the inputs as an extra LDN(p) on every qubit, and applied once more as
/// LDN(p) on the three output qubits (and, for scheme B, on the two qubits
/// touched by the separate merge).
SchemeResult ghz_scheme_fidelity(SchemeKind scheme, uint64_t capacity, const GhzNoise &noise, double p,
                                 const Target &target, const HashingOptions &opts = {});

/// Long-distance GHZ on a triangular network with k levels: the per-copy
/// bound raised to 3^k (scheme A) or 2^(k+1) (schemes B and C).
SchemeResult triangular_repeater(uint32_t levels, uint64_t capacity, double q, double p, SchemeKind scheme,
                                 const HashingOptions &opts = {}, uint32_t multipartite_cost = 3,
                                 uint32_t bipartite_cost = 4);

/// Precomputed block census of an architecture: blocks with identical
/// per-color degree multisets share one bound evaluation.
class ClusterModel {
   public:
    explicit ClusterModel(const Architecture &arch);

    const Architecture &architecture() const {
        return arch_;
    }
    const Cover &cover() const {
        return cover_;
    }
    const std::vector<uint32_t> &station_costs() const {
        return costs_;
    }
    uint32_t bottleneck() const {
        return bottleneck_;
    }
    uint64_t total_cost() const {
        return total_cost_;
    }
    /// Copies available under a storage model.
    uint64_t copies(const StorageModel &storage) const;

    struct Signature {
        /// Sorted block degrees of color 0 and color 1.
        std::vector<uint32_t> degrees[2];
        uint64_t count = 0;
    };
    const std::vector<Signature> &signatures() const {
        return signatures_;
    }

    /// Product of the per-block bounds under LDN(q) on every block qubit;
    /// nullopt when some block is infeasible.
    std::optional<double> fidelity(double q, uint64_t n, uint64_t m, const HashingOptions &opts) const;

   private:
    Architecture arch_;
    Cover cover_;
    std::vector<uint32_t> costs_;
    uint32_t bottleneck_ = 0;
    uint64_t total_cost_ = 0;
    std::vector<Signature> signatures_;
};

/// 2D or 3D cluster assembled from blocks, LDN(q) on every block qubit.
SchemeResult cluster_architecture_run(const ClusterModel &model, const StorageModel &storage, double q,
                                      const Target &target, const HashingOptions &opts = {});
SchemeResult cluster_architecture_run(const Architecture &arch, const StorageModel &storage, double q,
                                      const Target &target, const HashingOptions &opts = {});

struct MergeStep {
    Vertex station = 0;
    /// Global qubit ids: the survivor and the qubit merged into it.
    Vertex kept = 0;
    Vertex removed = 0;
};

struct CoverValidation {
    bool ok = false;
    std::vector<MergeStep> trace;
    std::string reason;
};

/// Unites the blocks, merges all qubits sharing a station (ascending block
/// id) and compares the result edge by edge with `target`, whose vertex ids
/// are the stations.
CoverValidation validate_cover(const std::vector<PlacedBlock> &blocks, const Graph &target);

/// Cluster built directly from Bell pairs with one half through LDN(q).
struct FromBellResult {
    SchemeResult multipartite;
    SchemeResult bipartite;
};

/// Multipartite: connect first, one qubit per site, edge channel on every
/// lattice edge, n = capacity. Bipartite: purify each pair with
/// n = capacity / (2 * rank), product over edges.
FromBellResult from_bell_run(const std::vector<uint32_t> &dims, double q, uint64_t capacity, const Target &target,
                             const HashingOptions &opts = {});

struct GlobalAllocation {
    uint64_t n = 0;
    /// Qubits given to each station.
    std::vector<uint64_t> per_station;
};

/// Largest common n with sum_station cost * n <= total. Throws
/// std::invalid_argument when not even one copy fits.
GlobalAllocation allocate_global_storage(const Architecture &arch, uint64_t total_capacity);

}  // namespace multinet

#endif
