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

#include "multinet/hashing.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "multinet/kernels.h"

namespace multinet {

void OutcomeDistribution::validate() const {
    if (probabilities.empty()) {
        throw std::invalid_argument("outcome distribution is empty");
    }
    double sum = 0;
    for (double p : probabilities) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("outcome probabilities must lie in [0,1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("outcome probabilities must sum to 1");
    }
}

BennettMode parse_bennett_mode(const std::string &name) {
    if (name == "printed") return BennettMode::Printed;
    if (name == "standard") return BennettMode::Standard;
    throw std::invalid_argument("unknown bennett mode '" + name + "' (expected printed|standard)");
}

std::string bennett_mode_name(BennettMode mode) {
    return mode == BennettMode::Standard ? "standard" : "printed";
}

double entropy(const OutcomeDistribution &d) {
    d.validate();
    double s = 0;
    for (double p : d.probabilities) {
        if (p > 0) {
            s -= p * std::log2(p);
        }
    }
    return std::max(0.0, s);
}

BennettStats bennett_stats(const OutcomeDistribution &d) {
    BennettStats st;
    st.entropy = entropy(d);
    for (double p : d.probabilities) {
        if (p > 0) {
            double dev = -std::log2(p) - st.entropy;
            st.a = std::max(st.a, std::abs(dev));
            // Centered form; equal to sum p log^2 p - S^2 without cancellation.
            st.variance += p * dev * dev;
        }
    }
    return st;
}

namespace {

// 1 - f before clamping.
double bennett_penalty(const BennettStats &st, double n, double delta, BennettMode mode) {
    double concentration = 0;
    if (st.variance > 0 && st.a > 0) {
        double u = st.a * delta / st.variance;
        double h = (1.0 + u) * std::log1p(u);
        if (mode == BennettMode::Standard) {
            h -= u;
        }
        concentration = 2.0 * std::exp(-n * (st.variance / (st.a * st.a)) * h);
    }
    return concentration + std::exp2(-n * delta);
}

void check_copies(uint64_t n, uint64_t m) {
    if (n < 1 || m < 1 || m > n) {
        throw std::invalid_argument("hashing target needs 1 <= m <= n (got n=" + std::to_string(n) +
                                    ", m=" + std::to_string(m) + ")");
    }
}

}  // namespace

double bennett_success(const BennettStats &stats, double n, double delta, BennettMode mode) {
    if (!(n >= 1)) {
        throw std::invalid_argument("bennett_success: n must be at least 1");
    }
    if (!(delta > 0)) {
        throw Infeasible("bennett_success: delta must be positive");
    }
    return std::clamp(1.0 - bennett_penalty(stats, n, delta, mode), 0.0, 1.0);
}

double bennett_success(const OutcomeDistribution &d, double n, double delta, BennettMode mode) {
    return bennett_success(bennett_stats(d), n, delta, mode);
}

HashingRun bipartite_bound(const OutcomeDistribution &bell, uint64_t n, uint64_t m, BennettMode mode) {
    check_copies(n, m);
    BennettStats st = bennett_stats(bell);
    double delta = 0.5 * (1.0 - st.entropy - (double)m / (double)n);
    if (!(delta > 0)) {
        throw Infeasible("bipartite hashing: no slack left (S=" + std::to_string(st.entropy) +
                         ", m/n=" + std::to_string((double)m / (double)n) + ")");
    }
    HashingRun run;
    run.n = n;
    run.m = m;
    run.color_delta = {delta};
    run.color_entropy = {st.entropy};
    run.F = bennett_success(st, (double)n, delta, mode);
    return run;
}

namespace {

// Shares per color from a user split. Inactive colors get 0 and the active
// shares are rescaled to sum to 1.
std::vector<double> effective_split(std::span<const double> split, int color_count,
                                    const std::vector<int> &active) {
    std::vector<double> out(color_count, 0.0);
    if (split.empty()) {
        for (int c : active) {
            out[c] = 1.0 / (double)active.size();
        }
        return out;
    }
    if ((int)split.size() != color_count) {
        throw std::invalid_argument("delta split needs one fraction per color");
    }
    double total = 0;
    for (double s : split) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw std::invalid_argument("delta split fractions must lie in [0,1]");
        }
        total += s;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("delta split fractions must sum to 1");
    }
    double active_total = 0;
    for (int c : active) {
        active_total += split[c];
    }
    if (!(active_total > 0)) {
        throw Infeasible("delta split gives no slack to any active color");
    }
    for (int c : active) {
        out[c] = split[c] / active_total;
    }
    return out;
}

std::vector<int> active_from_entropies(const std::vector<double> &color_entropy, const std::vector<bool> &present) {
    std::vector<int> active;
    for (int c = 0; c < (int)color_entropy.size(); c++) {
        if (color_entropy[c] > 0) {
            active.push_back(c);
        }
    }
    if (active.empty()) {
        for (int c = 0; c < (int)color_entropy.size(); c++) {
            if (present[c]) {
                active.push_back(c);
            }
        }
    }
    return active;
}

}  // namespace

HashingRun multipartite_bound(const Graph &g, const Coloring &coloring, std::span<const BitMarginal> marginals,
                              uint64_t n, uint64_t m, std::span<const double> split, BennettMode mode) {
    check_copies(n, m);
    if (coloring.color_of.size() < g.vertex_count()) {
        throw std::invalid_argument("coloring does not cover the graph");
    }
    for (const Edge &e : g.edges()) {
        if (coloring.color_of[e.first] == coloring.color_of[e.second]) {
            throw std::invalid_argument("improper coloring: edge " + std::to_string(e.first) + "-" +
                                        std::to_string(e.second) + " joins one color");
        }
    }
    const int colors = coloring.color_count;
    HashingRun run;
    run.n = n;
    run.m = m;
    run.color_entropy.assign(colors, 0.0);
    std::vector<bool> present(colors, false);
    std::vector<BennettStats> stats;
    stats.reserve(marginals.size());
    for (const BitMarginal &bm : marginals) {
        if (!g.alive(bm.vertex)) {
            throw std::invalid_argument("marginal for vertex " + std::to_string(bm.vertex) + " outside the graph");
        }
        int c = coloring.color_of[bm.vertex];
        if (c < 0 || c >= colors) {
            throw std::invalid_argument("vertex " + std::to_string(bm.vertex) + " has no color");
        }
        stats.push_back(bennett_stats(OutcomeDistribution::from_marginal(bm)));
        run.vertices.push_back(bm.vertex);
        run.vertex_color.push_back(c);
        present[c] = true;
        run.color_entropy[c] = std::max(run.color_entropy[c], stats.back().entropy);
    }
    std::vector<int> active = active_from_entropies(run.color_entropy, present);
    std::vector<bool> is_active(colors, false);
    for (int c : active) {
        is_active[c] = true;
    }
    double entropy_sum = std::accumulate(run.color_entropy.begin(), run.color_entropy.end(), 0.0);
    double budget = 0.5 * (1.0 - entropy_sum - (double)m / (double)n);
    if (!(budget > 0)) {
        throw Infeasible("multipartite hashing: no slack left (sum of color entropies " + std::to_string(entropy_sum) +
                         ", m/n=" + std::to_string((double)m / (double)n) + ")");
    }
    std::vector<double> shares = effective_split(split, colors, active);
    run.color_delta.assign(colors, 0.0);
    for (int c : active) {
        run.color_delta[c] = budget * shares[c];
    }
    run.vertex_delta.resize(stats.size());
    run.vertex_f.resize(stats.size());
    for (size_t i = 0; i < stats.size(); i++) {
        int c = run.vertex_color[i];
        if (!is_active[c]) {
            run.vertex_delta[i] = 0;
            run.vertex_f[i] = 1.0;
            continue;
        }
        double dk = run.color_delta[c] + 0.5 * (run.color_entropy[c] - stats[i].entropy);
        if (!(dk > 0)) {
            throw Infeasible("multipartite hashing: vertex " + std::to_string(run.vertices[i]) + " has no slack");
        }
        run.vertex_delta[i] = dk;
        run.vertex_f[i] = bennett_success(stats[i], (double)n, dk, mode);
    }
    run.F = std::clamp(kernels::product(run.vertex_f), 0.0, 1.0);
    return run;
}

MarginalClasses MarginalClasses::from_marginals(const Coloring &coloring, std::span<const BitMarginal> marginals) {
    MarginalClasses out;
    out.color_count = coloring.color_count;
    for (const BitMarginal &bm : marginals) {
        if (bm.vertex >= coloring.color_of.size() || coloring.color_of[bm.vertex] < 0) {
            throw std::invalid_argument("vertex " + std::to_string(bm.vertex) + " has no color");
        }
        out.add(coloring.color_of[bm.vertex], bm.lambda1, 1);
    }
    return out;
}

void MarginalClasses::add(int color, double lambda1, uint64_t multiplicity) {
    if (color < 0) {
        throw std::invalid_argument("negative color id");
    }
    if (multiplicity == 0) {
        return;
    }
    color_count = std::max(color_count, color + 1);
    for (Entry &e : entries) {
        if (e.color == color && e.lambda1 == lambda1) {
            e.multiplicity += multiplicity;
            return;
        }
    }
    entries.push_back(Entry{color, lambda1, multiplicity});
}

std::vector<int> MarginalClasses::active_colors() const {
    std::vector<double> s(color_count, 0.0);
    std::vector<bool> present(color_count, false);
    for (const Entry &e : entries) {
        present[e.color] = true;
        if (e.lambda1 > 0 && e.lambda1 < 1) {
            s[e.color] = 1.0;
        }
    }
    return active_from_entropies(s, present);
}

namespace {

// Precomputed per-class statistics for repeated evaluation at varying splits.
struct ClassEvaluator {
    int colors = 0;
    std::vector<int> active;
    std::vector<BennettStats> stats;
    std::vector<double> color_entropy;
    double entropy_sum = 0;
    const MarginalClasses *classes = nullptr;
    BennettMode mode = BennettMode::Printed;

    ClassEvaluator(const MarginalClasses &c, BennettMode md) : colors(c.color_count), classes(&c), mode(md) {
        color_entropy.assign(colors, 0.0);
        std::vector<bool> present(colors, false);
        for (const auto &e : c.entries) {
            stats.push_back(bennett_stats(OutcomeDistribution{1.0 - e.lambda1, e.lambda1}));
            color_entropy[e.color] = std::max(color_entropy[e.color], stats.back().entropy);
            present[e.color] = true;
        }
        entropy_sum = std::accumulate(color_entropy.begin(), color_entropy.end(), 0.0);
        active = active_from_entropies(color_entropy, present);
    }

    // shares: one per color, already restricted to active colors.
    std::optional<double> eval(const std::vector<double> &shares, uint64_t n, uint64_t m) const {
        double budget = 0.5 * (1.0 - entropy_sum - (double)m / (double)n);
        if (!(budget > 0)) {
            return std::nullopt;
        }
        std::vector<bool> is_active(colors, false);
        for (int c : active) {
            is_active[c] = true;
        }
        double log_f = 0;
        for (size_t i = 0; i < stats.size(); i++) {
            const auto &e = classes->entries[i];
            if (!is_active[e.color]) {
                continue;
            }
            double dk = budget * shares[e.color] + 0.5 * (color_entropy[e.color] - stats[i].entropy);
            if (!(dk > 0)) {
                return std::nullopt;
            }
            double pen = bennett_penalty(stats[i], (double)n, dk, mode);
            if (pen >= 1.0) {
                return 0.0;
            }
            log_f += (double)e.multiplicity * std::log1p(-pen);
        }
        return std::clamp(std::exp(log_f), 0.0, 1.0);
    }
};

double distance_to_equal(const std::vector<double> &shares, const std::vector<int> &active) {
    double eq = 1.0 / (double)active.size();
    double d = 0;
    for (int c : active) {
        d += (shares[c] - eq) * (shares[c] - eq);
    }
    return d;
}

struct SplitSearch {
    const ClassEvaluator &ev;
    uint64_t n, m;
    std::vector<double> best;
    double best_f = -1;
    bool any_feasible = false;

    void consider(const std::vector<double> &shares) {
        std::optional<double> f = ev.eval(shares, n, m);
        double value = f.value_or(0.0);
        any_feasible |= f.has_value();
        if (value > best_f || (value == best_f && !best.empty() &&
                               distance_to_equal(shares, ev.active) < distance_to_equal(best, ev.active))) {
            best_f = value;
            best = shares;
        }
    }
};

}  // namespace

std::optional<double> multipartite_fidelity(const MarginalClasses &classes, uint64_t n, uint64_t m,
                                            std::span<const double> split, BennettMode mode) {
    check_copies(n, m);
    ClassEvaluator ev(classes, mode);
    std::vector<double> shares;
    try {
        shares = effective_split(split, ev.colors, ev.active);
    } catch (const Infeasible &) {
        return std::nullopt;
    }
    return ev.eval(shares, n, m);
}

SplitResult optimize_delta_split(const MarginalClasses &classes, uint64_t n, uint64_t m, BennettMode mode) {
    check_copies(n, m);
    ClassEvaluator ev(classes, mode);
    const int k = (int)ev.active.size();
    const std::vector<int> &act = ev.active;
    SplitSearch search{ev, n, m, {}, -1.0, false};
    std::vector<double> equal = effective_split({}, ev.colors, act);
    search.consider(equal);
    double F_equal = search.best_f;

    constexpr int kSteps = 200;
    constexpr double kStep = 1.0 / kSteps;
    constexpr int kRefine = 20;
    std::vector<double> shares(ev.colors, 0.0);

    if (k == 2) {
        for (int i = 0; i <= kSteps; i++) {
            shares[act[0]] = i * kStep;
            shares[act[1]] = 1.0 - i * kStep;
            search.consider(shares);
        }
        double center = search.best[act[0]];
        for (int j = -kRefine; j <= kRefine; j++) {
            double s = center + j * kStep / kRefine;
            if (s < 0 || s > 1) {
                continue;
            }
            shares[act[0]] = s;
            shares[act[1]] = 1.0 - s;
            search.consider(shares);
        }
    } else if (k == 3) {
        for (int i = 0; i <= kSteps; i++) {
            for (int j = 0; i + j <= kSteps; j++) {
                shares[act[0]] = i * kStep;
                shares[act[1]] = j * kStep;
                shares[act[2]] = 1.0 - (i + j) * kStep;
                search.consider(shares);
            }
        }
        double c0 = search.best[act[0]];
        double c1 = search.best[act[1]];
        for (int i = -kRefine; i <= kRefine; i++) {
            for (int j = -kRefine; j <= kRefine; j++) {
                double s0 = c0 + i * kStep / kRefine;
                double s1 = c1 + j * kStep / kRefine;
                double s2 = 1.0 - s0 - s1;
                if (s0 < 0 || s1 < 0 || s2 < -1e-15) {
                    continue;
                }
                shares[act[0]] = s0;
                shares[act[1]] = s1;
                shares[act[2]] = std::max(0.0, s2);
                search.consider(shares);
            }
        }
    } else if (k > 3) {
        // Pairwise transfers until no grid move helps.
        for (int round = 0; round < 50; round++) {
            double before = search.best_f;
            for (int a = 0; a < k; a++) {
                for (int b = a + 1; b < k; b++) {
                    std::vector<double> base = search.best;
                    double pool = base[act[a]] + base[act[b]];
                    for (int i = 0; i <= kSteps; i++) {
                        shares = base;
                        shares[act[a]] = pool * i * kStep;
                        shares[act[b]] = pool - shares[act[a]];
                        search.consider(shares);
                    }
                }
            }
            if (!(search.best_f > before)) {
                break;
            }
        }
    }
    if (!search.any_feasible) {
        throw Infeasible("multipartite hashing: no feasible delta split");
    }
    return SplitResult{search.best, search.best_f, F_equal};
}

SplitResult optimize_delta_split(const Graph &g, const Coloring &coloring, std::span<const BitMarginal> marginals,
                                 uint64_t n, uint64_t m, BennettMode mode) {
    for (const Edge &e : g.edges()) {
        if (coloring.color_of.at(e.first) == coloring.color_of.at(e.second)) {
            throw std::invalid_argument("improper coloring");
        }
    }
    return optimize_delta_split(MarginalClasses::from_marginals(coloring, marginals), n, m, mode);
}

uint64_t max_output_copies(const MarginalClasses &classes, uint64_t n, double threshold, BennettMode mode) {
    if (!(threshold > 0 && threshold < 1)) {
        throw std::invalid_argument("fidelity threshold must lie in (0,1)");
    }
    auto reaches = [&](uint64_t m) {
        try {
            return optimize_delta_split(classes, n, m, mode).F >= threshold;
        } catch (const Infeasible &) {
            return false;
        }
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

uint64_t max_output_copies(const Graph &g, const Coloring &coloring, std::span<const BitMarginal> marginals,
                           uint64_t n, double threshold, BennettMode mode) {
    (void)g;
    return max_output_copies(MarginalClasses::from_marginals(coloring, marginals), n, threshold, mode);
}

uint64_t max_output_copies_bipartite(const OutcomeDistribution &bell, uint64_t n, double threshold,
                                     BennettMode mode) {
    if (!(threshold > 0 && threshold < 1)) {
        throw std::invalid_argument("fidelity threshold must lie in (0,1)");
    }
    auto reaches = [&](uint64_t m) {
        try {
            return bipartite_bound(bell, n, m, mode).F >= threshold;
        } catch (const Infeasible &) {
            return false;
        }
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

}  // namespace multinet
