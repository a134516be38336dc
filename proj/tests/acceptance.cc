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

// End-to-end acceptance checks. Prints one PASS/FAIL line per check and
// exits non-zero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "multinet/experiment.h"
#include "multinet/generators.h"
#include "multinet/hashing.h"
#include "multinet/lattice.h"
#include "multinet/noise.h"
#include "multinet/oracle.h"
#include "multinet/schemes.h"

using namespace multinet;

namespace {

const std::string kPresetDir = MULTINET_PRESET_DIR;
constexpr double kTie = 1e-12;

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Sweep values and F (or m) per scheme label.
struct Curves {
    std::vector<double> x;
    std::map<std::string, std::vector<double>> F;
    std::map<std::string, std::vector<double>> m;
};

Curves run_preset(const std::string &name, unsigned threads = 0) {
    ExperimentConfig cfg = load_config(kPresetDir + "/" + name + ".ini");
    Curves c;
    for (const CsvRow &r : run_experiment(cfg, threads)) {
        if (c.x.size() <= r.sweep_index) c.x.resize(r.sweep_index + 1);
        c.x[r.sweep_index] = r.sweep_value;
        c.F[r.scheme].push_back(r.result.F);
        c.m[r.scheme].push_back((double)r.result.m);
    }
    return c;
}

std::string fmt(const char *f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Graph random_graph(std::mt19937_64 &rng, size_t n, double p) {
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (Vertex a = 0; a < n; a++)
        for (Vertex b = a + 1; b < n; b++)
            if (coin(rng)) g.add_edge(a, b);
    return g;
}

Outcome oracle_marginals() {
    std::mt19937_64 rng(20261014);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0;
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + rng() % 8;
        Graph g = random_graph(rng, n, u(rng));
        oracle::NoiseSpec spec;
        std::vector<FlipSource> src;
        for (Vertex v = 0; v < n; v++) {
            PauliChannel ch;
            switch (rng() % 3) {
                case 0:
                    ch = PauliChannel::depolarizing(0.7 + 0.3 * u(rng));
                    break;
                case 1:
                    ch = PauliChannel::biased(0.05 * u(rng), 0.05 * u(rng), 0.2 * u(rng));
                    break;
                default:
                    continue;
            }
            spec.vertex_channels.push_back({v, ch});
            src.push_back(channel_to_flip_source(g, v, ch));
        }
        for (const Edge &e : g.edges()) {
            if (u(rng) < 0.5) {
                EdgeZChannel ch{0.8 + 0.2 * u(rng)};
                spec.edge_channels.push_back({e, ch});
                src.push_back(edge_channel_to_flip_source(e.first, e.second, ch));
            }
        }
        auto exact = oracle::exact_distribution(g, spec).marginals();
        auto fast = bit_marginals(g, src);
        for (size_t i = 0; i < exact.size(); i++) {
            worst = std::max(worst, std::abs(exact[i].lambda1 - fast[i].lambda1));
            worst = std::max(worst, std::abs(exact[i].lambda0 - fast[i].lambda0));
        }
    }
    return {worst <= 1e-12, fmt("200 graphs, max |diff| = %.3g", worst)};
}

Outcome oracle_transforms() {
    std::mt19937_64 rng(7);
    int merges = 0, connects = 0, bad = 0;
    while (merges < 50 || connects < 50) {
        size_t n = 2 + rng() % 6;
        Graph g = random_graph(rng, n, 0.5);
        Vertex a = rng() % n, b = rng() % n;
        if (a == b) continue;
        if (merges < 50) {
            bad += !oracle::statevector_check(g, {oracle::Transform::Kind::Merge, a, b}, merge_vertices(g, a, b));
            merges++;
        }
        if (!g.has_edge(a, b) && connects < 50) {
            bad += !oracle::statevector_check(g, {oracle::Transform::Kind::Connect, a, b},
                                              connect_project(g, a, b));
            connects++;
        }
    }
    // The checker must also reject a wrong rule graph.
    Graph chain(3);
    chain.add_edge(0, 1);
    chain.add_edge(1, 2);
    bool rejects = !oracle::statevector_check(chain, {oracle::Transform::Kind::Merge, 0, 1}, chain);
    return {bad == 0 && rejects,
            fmt("%.0f merges + %.0f connects, %.0f mismatches", merges, connects, bad) +
                (rejects ? ", wrong graph rejected" : ", wrong graph ACCEPTED")};
}

Outcome closed_forms() {
    double worst = 0;
    for (double q : {0.9, 0.95, 0.98, 0.99}) {
        for (uint32_t s : {2u, 3u, 5u, 8u}) {
            Graph g = build_graph(GraphKind::GhzStar, {s});
            std::vector<FlipSource> src;
            oracle::NoiseSpec spec;
            for (Vertex v = 0; v < s; v++) {
                src.push_back(channel_to_flip_source(g, v, PauliChannel::depolarizing(q)));
                spec.vertex_channels.push_back({v, PauliChannel::depolarizing(q)});
            }
            auto fast = bit_marginals(g, src);
            auto exact = oracle::exact_distribution(g, spec).marginals();
            for (Vertex v = 0; v < s; v++) {
                double want = (1 - std::pow(q, (double)g.degree(v) + 1)) / 2;
                worst = std::max(worst, std::abs(fast[v].lambda1 - want));
                worst = std::max(worst, std::abs(exact[v].lambda1 - want));
            }
        }
    }
    return {worst <= 1e-12, fmt("max |diff| = %.3g", worst)};
}

Outcome fig3() {
    Curves c = run_preset("fig3");
    bool ok = true, bc_equal = true;
    for (size_t i = 0; i < c.x.size(); i++) {
        ok &= c.F["C"][i] + kTie >= c.F["A"][i];
        bc_equal &= std::abs(c.F["B"][i] - c.F["C"][i]) <= kTie;
    }
    return {ok && bc_equal, fmt("F_C >= F_A at all %.0f points; at 200: A=%.6f C=%.6f", c.x.size(), c.F["A"][0],
                                c.F["C"][0]) +
                                (bc_equal ? ", F_B = F_C" : ", F_B != F_C")};
}

Outcome fig4() {
    Curves c = run_preset("fig4");
    bool ok = true, strict_ca = false, strict_ab = false;
    for (size_t i = 0; i < c.x.size(); i++) {
        double a = c.F["A"][i], b = c.F["B"][i], cc = c.F["C"][i];
        ok &= cc + kTie >= a && a + kTie >= b;
        strict_ca |= cc > a + kTie;
        strict_ab |= a > b + kTie;
    }
    return {ok && strict_ca && strict_ab,
            std::string("C >= A >= B everywhere: ") + (ok ? "yes" : "no") + "; strict C > A somewhere: " +
                (strict_ca ? "yes" : "no") + "; strict A > B somewhere: " + (strict_ab ? "yes" : "no")};
}

Outcome fig5() {
    Curves c = run_preset("fig5");
    size_t bad = 0;
    for (size_t i = 0; i < c.x.size(); i++) bad += c.F["A"][i] + kTie < c.F["C"][i];
    return {bad == 0, fmt("F_A >= F_C at %.0f of %.0f points", c.x.size() - bad, c.x.size())};
}

Outcome fig6() {
    Curves biased = run_preset("fig6");
    bool never_worse = true, strict = false;
    for (size_t i = 0; i < biased.x.size(); i++) {
        never_worse &= biased.F["A-opt"][i] >= biased.F["A"][i];
        strict |= biased.F["A-opt"][i] > biased.F["A"][i];
    }
    Curves sym = run_preset("fig6_ldn");
    double worst_gain = 0, worst_x = 0;
    for (size_t i = 0; i < sym.x.size(); i++) {
        double gain = sym.F["A-opt"][i] - sym.F["A"][i];
        if (gain > worst_gain) {
            worst_gain = gain;
            worst_x = sym.x[i];
        }
    }
    bool small = worst_gain < 1e-6;
    return {never_worse && strict && small,
            std::string("biased: opt >= equal everywhere ") + (never_worse ? "yes" : "no") + ", strict somewhere " +
                (strict ? "yes" : "no") + fmt("; symmetric LDN max gain %.3g at capacity %.0f", worst_gain, worst_x)};
}

int sign_changes(const std::vector<double> &d) {
    int changes = 0, prev = 0;
    for (double v : d) {
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s != 0 && prev != 0 && s != prev) changes++;
        if (s != 0) prev = s;
    }
    return changes;
}

Outcome fig8() {
    Curves c = run_preset("fig8");
    std::vector<double> dc, db;
    for (size_t i = 0; i < c.x.size(); i++) {
        dc.push_back(c.F["A"][i] - c.F["C"][i]);
        db.push_back(c.F["A"][i] - c.F["B"][i]);
    }
    int nc = sign_changes(dc), nb = sign_changes(db);
    bool ok = nc == 1 && nb == 1 && dc.front() > 0 && db.front() > 0;
    return {ok, fmt("sign changes of F_A - F_C: %.0f, of F_A - F_B: %.0f; advantage at k=0: %.3g", nc, nb, dc.front())};
}

// Indices where `a` beats `b`: nonempty, one contiguous run, and it reaches
// the last sweep point where the curves differ.
bool contiguous_region_near_one(const std::vector<double> &a, const std::vector<double> &b, std::string &why) {
    std::vector<int> win;
    size_t last_diff = 0;
    bool any_diff = false;
    for (size_t i = 0; i < a.size(); i++) {
        win.push_back(a[i] > b[i]);
        if (a[i] != b[i]) {
            last_diff = i;
            any_diff = true;
        }
    }
    int runs = 0;
    for (size_t i = 0; i < win.size(); i++) runs += win[i] && (i == 0 || !win[i - 1]);
    bool reaches_top = any_diff && win[last_diff];
    why = fmt("%.0f run(s), reaches top: ", runs) + (reaches_top ? "yes" : "no");
    return runs == 1 && reaches_top;
}

Outcome fig9_10() {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    Curves c2 = run_preset("fig9");
    double t2 = std::chrono::duration<double>(clock::now() - t0).count();
    t0 = clock::now();
    Curves c3 = run_preset("fig10");
    double t3 = std::chrono::duration<double>(clock::now() - t0).count();

    std::string w2, w3;
    bool r2 = contiguous_region_near_one(c2.F["shifted-grid"], c2.F["bipartite-grid"], w2);
    bool r3 = contiguous_region_near_one(c3.F["shifted-grid"], c3.F["bipartite-grid"], w3);
    size_t dominated = 0;
    for (size_t i = 0; i < c3.x.size(); i++) dominated += c3.F["shifted-grid"][i] + kTie >= c3.F["windmill"][i];
    bool ok = r2 && r3 && dominated == c3.x.size() && t2 < 60 && t3 < 60;
    return {ok, "2D " + w2 + "; 3D " + w3 +
                    fmt("; 3D shifted >= windmill at %.0f/%.0f", dominated, c3.x.size()) +
                    fmt("; times %.2fs, %.2fs", t2, t3)};
}

Outcome fig13() {
    Curves f = run_preset("fig13");
    Curves t = run_preset("fig13_threshold");
    size_t wins = 0;
    for (size_t i = 0; i < f.x.size(); i++) wins += f.F["multipartite"][i] > f.F["bipartite"][i];
    // Sweep runs over increasing q, i.e. decreasing 1-q.
    bool monotone = true;
    for (const char *label : {"multipartite", "bipartite"}) {
        const auto &m = t.m[label];
        for (size_t i = 1; i < m.size(); i++) monotone &= m[i] >= m[i - 1];
    }
    return {wins > 0 && monotone,
            fmt("multipartite wins at %.0f of %.0f q values; m* nonincreasing in 1-q: ", wins, f.x.size()) +
                (monotone ? "yes" : "no")};
}

Outcome storage() {
    struct Case {
        ArchFamily f;
        std::vector<uint32_t> dims;
        uint32_t want;
    };
    std::vector<Case> cases{{ArchFamily::BipartiteGrid, {8, 8}, 4}, {ArchFamily::Windmill, {8, 8}, 2},
                            {ArchFamily::ShiftedGrid, {8, 8}, 2},   {ArchFamily::BipartiteGrid, {8, 8, 8}, 6},
                            {ArchFamily::Windmill, {8, 8, 8}, 3},   {ArchFamily::ShiftedGrid, {8, 8, 8}, 2}};
    bool ok = true;
    std::string got;
    for (const Case &c : cases) {
        Architecture a;
        a.family = c.f;
        a.dims = c.dims;
        uint32_t b = storage_per_node(a).bottleneck;
        ok &= b == c.want;
        got += (got.empty() ? "" : " ") + std::to_string(b);
    }
    return {ok, "bottlenecks " + got + " (want 4 2 2 6 3 2)"};
}

Outcome covers() {
    int total = 0, good = 0;
    std::string missing;
    for (BlockFamily f : {BlockFamily::BipartiteGrid, BlockFamily::Windmill, BlockFamily::ShiftedGrid}) {
        for (auto dims : {std::vector<uint32_t>{8, 8}, std::vector<uint32_t>{4, 4, 4}}) {
            for (uint32_t b : {1u, 2u, 4u}) {
                Cover c = make_cover(f, Lattice{dims, true}, b);
                bool v = validate_cover(cover_blocks(c), c.lattice.graph()).ok;
                total++;
                good += v;
                if (!v) missing += " " + block_family_name(f) + "/" + std::to_string(dims.size()) + "D/b" +
                                   std::to_string(b);
            }
        }
    }
    // Open Bell-pair grid on 4x4.
    Lattice open{{4, 4}, false};
    std::vector<PlacedBlock> pairs;
    for (auto [a, b] : open.edges()) {
        Graph p(2);
        p.add_edge(0, 1);
        pairs.push_back({p, {a, b}});
    }
    bool bell = validate_cover(pairs, open.graph()).ok;
    // A shifted block must be caught.
    Lattice l{{8, 8}, true};
    auto blocks = cover_blocks(make_cover(BlockFamily::Windmill, l, 1));
    for (Vertex &v : blocks[0].placement) {
        auto x = l.coords(v);
        x[1] += 1;
        v = l.index(x);
    }
    bool caught = !validate_cover(blocks, l.graph()).ok;
    return {good == total && bell && caught,
            fmt("%.0f/%.0f covers merge exactly", good, total) + (bell ? ", open Bell grid ok" : ", open Bell grid FAILED") +
                (caught ? ", misplaced block rejected" : ", misplaced block ACCEPTED") + missing};
}

Outcome bound_sanity() {
    bool range = true, mono_n = true, mono_d = true, limit = true;
    std::vector<OutcomeDistribution> dists{{0.98, 0.02}, {0.9802, 0.0198}, {0.6, 0.4},
                                           {0.97, 0.01, 0.01, 0.01}, {1.0, 0.0}};
    for (BennettMode mode : {BennettMode::Printed, BennettMode::Standard}) {
        for (const auto &d : dists) {
            for (double delta : {1e-3, 0.01, 0.05, 0.2}) {
                double prev = -1;
                for (double n = 1; n <= 1e8; n *= 1.5) {
                    double f = bennett_success(d, n, delta, mode);
                    range &= f >= 0 && f <= 1;
                    mono_n &= f >= prev;
                    prev = f;
                }
                limit &= prev > 1 - 1e-9;
            }
            for (double n : {50.0, 500.0, 5000.0}) {
                double prev = -1;
                for (double delta = 1e-5; delta < 0.5; delta *= 1.2) {
                    double f = bennett_success(d, n, delta, mode);
                    mono_d &= f >= prev;
                    prev = f;
                }
            }
        }
    }
    // Feasibility boundary of the two-color protocol.
    bool yield_ok = true;
    double worst = 0;
    for (double q : {0.95, 0.98, 0.99}) {
        Graph g = build_graph(GraphKind::GhzStar, {3});
        Coloring col = color_graph(g, 2);
        std::vector<FlipSource> src;
        for (Vertex v = 0; v < 3; v++) src.push_back(channel_to_flip_source(g, v, PauliChannel::depolarizing(q)));
        auto marg = bit_marginals(g, src);
        auto h = [](double p) { return entropy(OutcomeDistribution{1 - p, p}); };
        double yield = 1 - h(marg[0].lambda1) - h(marg[1].lambda1);
        yield_ok &= yield > 0;
        auto classes = MarginalClasses::from_marginals(col, marg);
        const uint64_t n = 10000000;
        uint64_t lo = 1, hi = n;
        while (lo < hi) {
            uint64_t mid = lo + (hi - lo + 1) / 2;
            if (multipartite_fidelity(classes, n, mid).has_value()) lo = mid;
            else hi = mid - 1;
        }
        double gap = std::abs((double)lo / n - yield);
        worst = std::max(worst, gap);
        yield_ok &= gap <= 2.0 / n;
    }
    bool ok = range && mono_n && mono_d && limit && yield_ok;
    return {ok, std::string("range ") + (range ? "ok" : "BAD") + ", monotone in n " + (mono_n ? "ok" : "BAD") +
                    ", in delta " + (mono_d ? "ok" : "BAD") + ", n->inf " + (limit ? "ok" : "BAD") +
                    fmt(", max |m*/n - (1 - S_A - S_B)| = %.3g", worst)};
}

Outcome determinism() {
    int same = 0, total = 0;
    std::string differ;
    for (const char *name : {"fig3", "fig4", "fig5", "fig6", "fig6_ldn", "fig8", "fig9", "fig9_threshold", "fig10",
                             "fig11", "fig12", "fig13", "fig13_threshold"}) {
        ExperimentConfig cfg = load_config(kPresetDir + "/" + name + ".ini");
        std::string a = csv_string(run_experiment(cfg, 1));
        std::string b = csv_string(run_experiment(cfg, 4));
        total++;
        if (a == b) same++;
        else differ += std::string(" ") + name;
    }
    return {same == total, fmt("%.0f/%.0f presets byte-identical (1 vs 4 threads)", same, total) + differ};
}

}  // namespace

int main() {
    struct Check {
        int id;
        const char *name;
        std::function<Outcome()> run;
    };
    std::vector<Check> checks{
        {1, "oracle marginals", oracle_marginals},
        {2, "oracle transforms", oracle_transforms},
        {3, "ghz closed forms", closed_forms},
        {4, "ghz ideal resources", fig3},
        {5, "ghz noisy resources", fig4},
        {6, "ghz z noise on leaves", fig5},
        {7, "delta split optimization", fig6},
        {8, "triangular network", fig8},
        {9, "cluster 2d/3d", fig9_10},
        {10, "cluster from bell pairs", fig13},
        {11, "storage accounting", storage},
        {12, "cover validation", covers},
        {13, "bound sanity", bound_sanity},
        {14, "determinism", determinism},
    };
    int failed = 0;
    for (const Check &c : checks) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %2d %-26s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
        std::fflush(stdout);
        failed += !o.ok;
    }
    std::printf("%d of %zu checks passed\n", (int)checks.size() - failed, checks.size());
    return failed == 0 ? 0 : 1;
}
