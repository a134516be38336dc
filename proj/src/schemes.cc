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

#include "multinet/schemes.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "multinet/generators.h"

namespace multinet {

std::string scheme_name(SchemeKind s) {
    switch (s) {
        case SchemeKind::A:
            return "A";
        case SchemeKind::B:
            return "B";
        case SchemeKind::C:
            return "C";
    }
    return "?";
}

SchemeKind parse_scheme(const std::string &name) {
    if (name == "A") return SchemeKind::A;
    if (name == "B") return SchemeKind::B;
    if (name == "C") return SchemeKind::C;
    throw std::invalid_argument("unknown scheme '" + name + "' (expected A, B or C)");
}

void StorageModel::validate() const {
    if (capacity < 1) {
        throw std::invalid_argument("storage capacity must be at least 1");
    }
}

std::string arch_family_name(ArchFamily f) {
    switch (f) {
        case ArchFamily::BipartiteGrid:
            return "bipartite";
        case ArchFamily::Windmill:
            return "windmill";
        case ArchFamily::ShiftedGrid:
            return "shifted-grid";
        case ArchFamily::GhzStar:
            return "ghz-star";
        case ArchFamily::Triangular:
            return "triangular";
    }
    return "?";
}

ArchFamily parse_arch_family(const std::string &name) {
    if (name == "ghz-star" || name == "ghz") return ArchFamily::GhzStar;
    if (name == "triangular") return ArchFamily::Triangular;
    switch (parse_block_family(name)) {
        case BlockFamily::BipartiteGrid:
            return ArchFamily::BipartiteGrid;
        case BlockFamily::Windmill:
            return ArchFamily::Windmill;
        case BlockFamily::ShiftedGrid:
            return ArchFamily::ShiftedGrid;
    }
    throw std::invalid_argument("unknown architecture family '" + name + "'");
}

namespace {

bool is_grid(ArchFamily f) {
    return f == ArchFamily::BipartiteGrid || f == ArchFamily::Windmill || f == ArchFamily::ShiftedGrid;
}

BlockFamily block_family_of(ArchFamily f) {
    switch (f) {
        case ArchFamily::Windmill:
            return BlockFamily::Windmill;
        case ArchFamily::ShiftedGrid:
            return BlockFamily::ShiftedGrid;
        default:
            return BlockFamily::BipartiteGrid;
    }
}

double output_factor(double p, unsigned qubits) {
    return std::pow((1.0 + 3.0 * p) / 4.0, (double)qubits);
}

// Largest m in [1, n] with f(m) >= threshold, assuming f nonincreasing in m.
// f returns nullopt for infeasible targets.
uint64_t largest_m(uint64_t n, double threshold, const std::function<std::optional<double>(uint64_t)> &f) {
    auto reaches = [&](uint64_t m) {
        std::optional<double> v = f(m);
        return v.has_value() && *v >= threshold;
    };
    if (n == 0 || !reaches(1)) {
        return 0;
    }
    uint64_t lo = 1, hi = n;
    while (lo < hi) {
        uint64_t mid = lo + (hi - lo + 1) / 2;
        if (reaches(mid)) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

// Fills F, m, infeasible from a bound F(m) and a target.
void resolve_target(SchemeResult &r, uint64_t n, const Target &target,
                    const std::function<std::optional<double>(uint64_t)> &f) {
    r.n_used = n;
    if (target.kind == Target::Kind::Copies) {
        r.m = target.m;
        std::optional<double> v;
        if (n >= 1 && target.m >= 1 && target.m <= n) {
            v = f(target.m);
        }
        r.infeasible = !v.has_value();
        r.F = v.value_or(0.0);
        return;
    }
    if (!(target.threshold > 0 && target.threshold < 1)) {
        throw std::invalid_argument("fidelity threshold must lie in (0,1)");
    }
    r.m = largest_m(n, target.threshold, f);
    if (r.m == 0) {
        r.infeasible = true;
        r.F = 0;
        return;
    }
    r.F = f(r.m).value_or(0.0);
}

std::optional<double> bipartite_fidelity(const OutcomeDistribution &bell, uint64_t n, uint64_t m,
                                         BennettMode mode) {
    if (n < 1 || m < 1 || m > n) {
        return std::nullopt;
    }
    try {
        return bipartite_bound(bell, n, m, mode).F;
    } catch (const Infeasible &) {
        return std::nullopt;
    }
}

std::optional<double> classes_fidelity(const MarginalClasses &classes, uint64_t n, uint64_t m,
                                       const HashingOptions &opts) {
    if (n < 1 || m < 1 || m > n) {
        return std::nullopt;
    }
    if (opts.optimize_split) {
        try {
            return optimize_delta_split(classes, n, m, opts.bennett).F;
        } catch (const Infeasible &) {
            return std::nullopt;
        }
    }
    return multipartite_fidelity(classes, n, m, {}, opts.bennett);
}

OutcomeDistribution to_distribution(const std::array<double, 4> &d) {
    return OutcomeDistribution(std::vector<double>(d.begin(), d.end()));
}

}  // namespace

void Architecture::validate() const {
    if (block_size == 0) {
        throw std::invalid_argument("architecture: block size must be at least 1");
    }
    if (is_grid(family)) {
        if (dims.empty()) {
            throw std::invalid_argument("architecture: grid families need lattice dimensions");
        }
        if (family != ArchFamily::BipartiteGrid && dims.size() != 2 && dims.size() != 3) {
            throw std::invalid_argument("architecture: " + arch_family_name(family) +
                                        " blocks are defined for 2D and 3D lattices only");
        }
    }
    if (family == ArchFamily::Triangular && (triangular_multipartite_cost == 0 || triangular_bipartite_cost == 0)) {
        throw std::invalid_argument("architecture: triangular qubits per copy must be positive");
    }
}

uint64_t StorageCost::copies(uint64_t capacity) const {
    if (bottleneck == 0) {
        throw std::invalid_argument("storage cost has no bottleneck");
    }
    return capacity / bottleneck;
}

StorageCost storage_per_node(const Architecture &arch) {
    arch.validate();
    StorageCost cost;
    bool multipartite = arch.scheme == SchemeKind::A;
    switch (arch.family) {
        case ArchFamily::GhzStar:
            cost.per_class = {{"center", multipartite ? 1u : 2u}, {"leaf", 1u}};
            cost.stations_per_class = {{"center", 1}, {"leaf", 2}};
            break;
        case ArchFamily::Triangular: {
            uint32_t c = multipartite ? arch.triangular_multipartite_cost : arch.triangular_bipartite_cost;
            cost.per_class = {{"station", c}};
            cost.stations_per_class = {{"station", 1}};
            break;
        }
        default: {
            Cover cover = make_cover(block_family_of(arch.family), Lattice{arch.dims, arch.periodic}, arch.block_size);
            for (uint32_t c : station_costs(cover)) {
                std::string key = "cost-" + std::to_string(c);
                cost.per_class[key] = c;
                cost.stations_per_class[key]++;
            }
            break;
        }
    }
    for (const auto &[name, c] : cost.per_class) {
        cost.bottleneck = std::max(cost.bottleneck, c);
    }
    return cost;
}

SchemeResult ghz_scheme_fidelity(SchemeKind scheme, uint64_t capacity, const GhzNoise &noise, double p,
                                 const Target &target, const HashingOptions &opts) {
    noise.channel.validate();
    const PauliChannel resource = PauliChannel::depolarizing(p);
    const PauliChannel noisy = compose(noise.channel, resource);
    const PauliChannel &center_ch = noise.qubits == GhzNoise::Qubits::All ? noisy : resource;
    const PauliChannel &leaf_ch = noisy;

    SchemeResult r;
    if (scheme == SchemeKind::A) {
        Graph g = build_graph(GraphKind::GhzStar, GraphParams{3, {}, false, 1});
        std::vector<FlipSource> sources{channel_to_flip_source(g, 0, center_ch), channel_to_flip_source(g, 1, leaf_ch),
                                        channel_to_flip_source(g, 2, leaf_ch)};
        std::vector<BitMarginal> marg = bit_marginals(g, sources);
        Coloring coloring = color_graph(g, 2);
        MarginalClasses classes = MarginalClasses::from_marginals(coloring, marg);
        std::vector<Vertex> outputs{0, 1, 2};
        double out = output_noise_factor(g, outputs, p);
        uint64_t n = capacity;
        resolve_target(r, n, target, [&](uint64_t m) -> std::optional<double> {
            auto f = classes_fidelity(classes, n, m, opts);
            if (!f) return std::nullopt;
            return *f * out;
        });
        r.storage = {{"center", n}, {"leaf", n}};
        return r;
    }
    OutcomeDistribution pair = to_distribution(bell_pair_distribution(center_ch, leaf_ch));
    double out = output_factor(p, 3);
    if (scheme == SchemeKind::B) {
        out *= output_factor(p, 2);
    }
    uint64_t n = capacity / 2;
    resolve_target(r, n, target, [&](uint64_t m) -> std::optional<double> {
        auto f = bipartite_fidelity(pair, n, m, opts.bennett);
        if (!f) return std::nullopt;
        return *f * *f * out;
    });
    r.storage = {{"center", 2 * n}, {"leaf", n}};
    return r;
}

SchemeResult triangular_repeater(uint32_t levels, uint64_t capacity, double q, double p, SchemeKind scheme,
                                 const HashingOptions &opts, uint32_t multipartite_cost, uint32_t bipartite_cost) {
    if (levels > 30) {
        throw std::invalid_argument("triangular_repeater: too many levels");
    }
    if (multipartite_cost == 0 || bipartite_cost == 0) {
        throw std::invalid_argument("triangular_repeater: qubits per copy must be positive");
    }
    SchemeResult r;
    if (scheme == SchemeKind::A) {
        uint64_t n = capacity / multipartite_cost;
        GhzNoise noise{PauliChannel::depolarizing(q), GhzNoise::Qubits::All};
        SchemeResult elem = ghz_scheme_fidelity(SchemeKind::A, n, noise, p, Target::copies(1), opts);
        r = elem;
        r.F = std::pow(elem.F, std::pow(3.0, levels));
        r.storage = {{"station", n * multipartite_cost}};
        return r;
    }
    uint64_t n = capacity / bipartite_cost;
    PauliChannel ch = PauliChannel::depolarizing(compose_depolarizing(q, p));
    OutcomeDistribution pair = to_distribution(bell_pair_distribution(ch, ch));
    double out = output_factor(p, 2);
    if (scheme == SchemeKind::B) {
        out *= output_factor(p, 1);
    }
    std::optional<double> f = bipartite_fidelity(pair, n, 1, opts.bennett);
    r.n_used = n;
    r.m = 1;
    r.infeasible = !f.has_value();
    r.F = f ? std::pow(*f * out, std::pow(2.0, levels + 1)) : 0.0;
    r.storage = {{"station", n * bipartite_cost}};
    return r;
}

ClusterModel::ClusterModel(const Architecture &arch) : arch_(arch) {
    arch_.validate();
    if (!is_grid(arch_.family)) {
        throw std::invalid_argument("cluster model needs a grid family, got " + arch_family_name(arch_.family));
    }
    Lattice lattice{arch_.dims, arch_.periodic};
    cover_ = make_cover(block_family_of(arch_.family), lattice, arch_.block_size);
    BlockQubits bq = block_qubits(cover_);
    costs_.assign(lattice.size(), 0);
    for (Vertex s : bq.station) {
        costs_[s]++;
    }
    for (uint32_t c : costs_) {
        bottleneck_ = std::max(bottleneck_, c);
        total_cost_ += c;
    }

    std::map<std::pair<std::vector<uint32_t>, std::vector<uint32_t>>, uint64_t> census;
    for (uint32_t b = 0; b < cover_.block_count; b++) {
        std::vector<uint32_t> by_color[2];
        for (uint32_t i = bq.offsets[b]; i < bq.offsets[b + 1]; i++) {
            by_color[lattice.parity(bq.station[i])].push_back(bq.degree[i]);
        }
        std::sort(by_color[0].begin(), by_color[0].end());
        std::sort(by_color[1].begin(), by_color[1].end());
        // Colors are interchangeable: store the smaller list first.
        if (by_color[1] < by_color[0]) {
            std::swap(by_color[0], by_color[1]);
        }
        census[{by_color[0], by_color[1]}]++;
    }
    for (auto &[key, count] : census) {
        Signature s;
        s.degrees[0] = key.first;
        s.degrees[1] = key.second;
        s.count = count;
        signatures_.push_back(std::move(s));
    }
}

uint64_t ClusterModel::copies(const StorageModel &storage) const {
    storage.validate();
    if (storage.mode == StorageModel::Mode::PerNode) {
        return storage.capacity / bottleneck_;
    }
    return storage.capacity / total_cost_;
}

std::optional<double> ClusterModel::fidelity(double q, uint64_t n, uint64_t m, const HashingOptions &opts) const {
    if (n < 1 || m < 1 || m > n) {
        return std::nullopt;
    }
    double log_f = 0;
    if (arch_.family == ArchFamily::BipartiteGrid) {
        OutcomeDistribution pair =
            to_distribution(bell_pair_distribution(PauliChannel::depolarizing(q), PauliChannel::depolarizing(q)));
        std::optional<double> f = bipartite_fidelity(pair, n, m, opts.bennett);
        if (!f) {
            return std::nullopt;
        }
        log_f = (double)cover_.block_count * std::log(*f);
    } else {
        for (const Signature &s : signatures_) {
            MarginalClasses classes;
            classes.color_count = 2;
            for (int c = 0; c < 2; c++) {
                for (uint32_t d : s.degrees[c]) {
                    classes.add(c, depolarized_marginal(d, q), 1);
                }
            }
            std::optional<double> f = classes_fidelity(classes, n, m, opts);
            if (!f) {
                return std::nullopt;
            }
            log_f += (double)s.count * std::log(*f);
        }
    }
    return std::exp(log_f);
}

SchemeResult cluster_architecture_run(const ClusterModel &model, const StorageModel &storage, double q,
                                      const Target &target, const HashingOptions &opts) {
    if (!(q >= 0 && q <= 1)) {
        throw std::invalid_argument("q must lie in [0,1]");
    }
    SchemeResult r;
    uint64_t n = model.copies(storage);
    resolve_target(r, n, target, [&](uint64_t m) { return model.fidelity(q, n, m, opts); });
    for (uint32_t c : model.station_costs()) {
        r.storage["cost-" + std::to_string(c)] += (uint64_t)c * n;
    }
    return r;
}

SchemeResult cluster_architecture_run(const Architecture &arch, const StorageModel &storage, double q,
                                      const Target &target, const HashingOptions &opts) {
    return cluster_architecture_run(ClusterModel(arch), storage, q, target, opts);
}

CoverValidation validate_cover(const std::vector<PlacedBlock> &blocks, const Graph &target) {
    CoverValidation out;
    size_t total = 0;
    for (const PlacedBlock &b : blocks) {
        if (b.placement.size() != b.graph.vertex_count()) {
            throw std::invalid_argument("validate_cover: placement size differs from block size");
        }
        total += b.placement.size();
    }
    Graph g(total);
    // Qubits at each station in ascending block id.
    std::vector<std::vector<Vertex>> at_station(target.vertex_count());
    std::vector<Vertex> station_of(total);
    size_t base = 0;
    for (const PlacedBlock &b : blocks) {
        for (Vertex v = 0; v < b.graph.vertex_count(); v++) {
            Vertex s = b.placement[v];
            if (s >= target.vertex_count()) {
                out.reason = "block qubit placed outside the target";
                return out;
            }
            at_station[s].push_back((Vertex)(base + v));
            station_of[base + v] = s;
            if (!b.graph.alive(v)) {
                g.remove_vertex((Vertex)(base + v));
            }
        }
        for (const Edge &e : b.graph.edges()) {
            g.add_edge((Vertex)(base + e.first), (Vertex)(base + e.second));
        }
        base += b.placement.size();
    }
    std::vector<Vertex> survivor(target.vertex_count(), UINT32_MAX);
    for (Vertex s = 0; s < target.vertex_count(); s++) {
        const auto &qs = at_station[s];
        if (qs.empty()) {
            continue;
        }
        Vertex keep = qs[0];
        for (size_t i = 1; i < qs.size(); i++) {
            g = merge_vertices(g, keep, qs[i]);
            out.trace.push_back(MergeStep{s, keep, qs[i]});
        }
        survivor[s] = keep;
    }
    for (Vertex s = 0; s < target.vertex_count(); s++) {
        bool wanted = target.alive(s) && target.degree(s) > 0;
        bool present = survivor[s] != UINT32_MAX && g.degree(survivor[s]) > 0;
        if (wanted != present) {
            out.reason = "station " + std::to_string(s) + (wanted ? " is not covered" : " is covered but not in target");
            return out;
        }
    }
    size_t edges = 0;
    for (Vertex s = 0; s < target.vertex_count(); s++) {
        if (survivor[s] == UINT32_MAX) {
            continue;
        }
        for (Vertex u : g.neighbors(survivor[s])) {
            Vertex t = station_of[u];
            if (!target.has_edge(s, t)) {
                out.reason = "merged graph has edge " + std::to_string(s) + "-" + std::to_string(t) +
                             " missing from the target";
                return out;
            }
            edges++;
        }
    }
    if (edges != 2 * target.edge_count()) {
        out.reason = "merged graph lacks some target edges";
        return out;
    }
    out.ok = true;
    return out;
}

FromBellResult from_bell_run(const std::vector<uint32_t> &dims, double q, uint64_t capacity, const Target &target,
                             const HashingOptions &opts) {
    Lattice lattice{dims, true};
    lattice.validate();
    Graph g = lattice.graph();
    EdgeZChannel ch{q};
    std::vector<FlipSource> sources;
    sources.reserve(g.edge_count());
    for (const Edge &e : g.edges()) {
        sources.push_back(edge_channel_to_flip_source(e.first, e.second, ch));
    }
    std::vector<BitMarginal> marg = bit_marginals(g, sources);
    Coloring coloring = color_graph(g, 2);
    MarginalClasses classes = MarginalClasses::from_marginals(coloring, marg);

    FromBellResult out;
    uint64_t n_multi = capacity;
    resolve_target(out.multipartite, n_multi, target,
                   [&](uint64_t m) { return classes_fidelity(classes, n_multi, m, opts); });
    out.multipartite.storage = {{"station", n_multi * lattice.size()}};

    OutcomeDistribution pair =
        to_distribution(bell_pair_distribution(PauliChannel::depolarizing(q), PauliChannel::depolarizing(1.0)));
    uint64_t n_bip = capacity / (2 * dims.size());
    double edges = (double)g.edge_count();
    resolve_target(out.bipartite, n_bip, target, [&](uint64_t m) -> std::optional<double> {
        auto f = bipartite_fidelity(pair, n_bip, m, opts.bennett);
        if (!f) return std::nullopt;
        return std::exp(edges * std::log(*f));
    });
    out.bipartite.storage = {{"station", n_bip * 2 * dims.size() * lattice.size()}};
    return out;
}

GlobalAllocation allocate_global_storage(const Architecture &arch, uint64_t total_capacity) {
    arch.validate();
    if (!is_grid(arch.family)) {
        throw std::invalid_argument("global storage allocation needs a grid family");
    }
    Cover cover = make_cover(block_family_of(arch.family), Lattice{arch.dims, arch.periodic}, arch.block_size);
    std::vector<uint32_t> costs = station_costs(cover);
    uint64_t per_copy = 0;
    for (uint32_t c : costs) {
        per_copy += c;
    }
    if (per_copy == 0 || total_capacity < per_copy) {
        throw std::invalid_argument("global storage of " + std::to_string(total_capacity) +
                                    " qubits does not fit one copy (" + std::to_string(per_copy) + " needed)");
    }
    GlobalAllocation a;
    a.n = total_capacity / per_copy;
    a.per_station.reserve(costs.size());
    for (uint32_t c : costs) {
        a.per_station.push_back((uint64_t)c * a.n);
    }
    return a;
}

}  // namespace multinet
