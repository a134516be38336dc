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

#ifndef MULTINET_HASHING_H
#define MULTINET_HASHING_H

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinet/graph.h"
#include "multinet/noise.h"

namespace multinet {

/// Thrown when an (n, m) target leaves no slack for the likely-subspace
/// argument.
class Infeasible : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A finite outcome distribution: a bit marginal (2 entries) or a
/// Bell-diagonal state (4 entries).
struct OutcomeDistribution {
    std::vector<double> probabilities;

    OutcomeDistribution() = default;
    OutcomeDistribution(std::initializer_list<double> p) : probabilities(p) {
    }
    explicit OutcomeDistribution(std::vector<double> p) : probabilities(std::move(p)) {
    }
    static OutcomeDistribution from_marginal(const BitMarginal &m) {
        return OutcomeDistribution{m.lambda0, m.lambda1};
    }

    /// Throws std::invalid_argument unless entries are in [0,1] and sum to 1
    /// within 1e-12.
    void validate() const;
};

/// Which h(u) enters the concentration term. `Printed` uses
/// h(u) = (1+u) ln(1+u); `Standard` is the usual Bennett
/// h(u) = (1+u) ln(1+u) - u.
enum class BennettMode { Printed, Standard };

BennettMode parse_bennett_mode(const std::string &name);
std::string bennett_mode_name(BennettMode mode);

/// Shannon entropy in bits with 0 log 0 = 0.
double entropy(const OutcomeDistribution &d);

/// Ingredients of the concentration bound for one distribution.
struct BennettStats {
    double entropy = 0;
    /// max_i |-log2 p_i - S| over outcomes with p_i > 0.
    double a = 0;
    /// Variance of -log2 p over the distribution.
    double variance = 0;
};

BennettStats bennett_stats(const OutcomeDistribution &d);

/// Lower bound on the probability that n copies are projected into the
/// likely subspace with slack delta:
///   f = 1 - 2 exp(-n (V/a^2) h(a delta / V)) - 2^(-n delta),
/// clamped to [0,1]. When V = 0 the sample entropy is constant and the
/// concentration term is 0. Throws Infeasible for delta <= 0.
double bennett_success(const OutcomeDistribution &d, double n, double delta,
                       BennettMode mode = BennettMode::Printed);
double bennett_success(const BennettStats &stats, double n, double delta,
                       BennettMode mode = BennettMode::Printed);

/// One evaluation of the hashing bound.
struct HashingRun {
    uint64_t n = 0;
    uint64_t m = 0;
    /// Slack per color (a single entry for the bipartite protocol). Colors
    /// with no subprotocol hold 0.
    std::vector<double> color_delta;
    /// Per-color entropy S_color (the maximum bit entropy within the color).
    std::vector<double> color_entropy;
    /// Per-vertex data, in the order of the marginals passed in.
    std::vector<Vertex> vertices;
    std::vector<int> vertex_color;
    std::vector<double> vertex_delta;
    std::vector<double> vertex_f;
    double F = 0;
};

/// Bipartite hashing on a Bell-diagonal ensemble:
/// delta = (1 - S - m/n) / 2 and F = bennett_success(bell, n, delta).
/// Throws Infeasible when delta <= 0 and std::invalid_argument unless
/// 1 <= m <= n.
HashingRun bipartite_bound(const OutcomeDistribution &bell, uint64_t n, uint64_t m,
                           BennettMode mode = BennettMode::Printed);

/// Multipartite hashing with one subprotocol per color. The total slack
/// Delta = (1 - sum_c S_c - m/n) / 2 is split as delta_c = Delta * split_c,
/// and every vertex k of color c gets delta_k = delta_c + (S_c - S_k) / 2.
/// F is the product of bennett_success over all vertices.
///
/// A color whose bits are all noiseless needs no subprotocol when some other
/// color does: its vertices contribute f = 1 and its split share is handed
/// to the active colors in proportion. If no color is active, every color is
/// treated as active.
///
/// `split` has one entry per color and must sum to 1; an empty span means
/// equal shares. Throws Infeasible when Delta <= 0 or some delta_k <= 0.
HashingRun multipartite_bound(const Graph &g, const Coloring &coloring, std::span<const BitMarginal> marginals,
                              uint64_t n, uint64_t m, std::span<const double> split = {},
                              BennettMode mode = BennettMode::Printed);

/// Marginals grouped by (color, lambda1). The bound only depends on this
/// multiset, which makes sweeps over large lattices cheap.
struct MarginalClasses {
    struct Entry {
        int color = 0;
        double lambda1 = 0;
        uint64_t multiplicity = 0;
    };
    int color_count = 0;
    std::vector<Entry> entries;

    static MarginalClasses from_marginals(const Coloring &coloring, std::span<const BitMarginal> marginals);
    void add(int color, double lambda1, uint64_t multiplicity);
    /// Colors that carry at least one noisy bit, or all colors if none does.
    std::vector<int> active_colors() const;
};

/// F of multipartite_bound computed on classes; nullopt when infeasible.
std::optional<double> multipartite_fidelity(const MarginalClasses &classes, uint64_t n, uint64_t m,
                                            std::span<const double> split = {},
                                            BennettMode mode = BennettMode::Printed);

struct SplitResult {
    std::vector<double> split;
    double F = 0;
    /// F at the equal split, for reference.
    double F_equal = 0;
};

/// Grid search over split fractions (step 1/200, then once more at 1/20 of
/// a step around the best cell). Infeasible points count as F = 0. The equal
/// split is the starting point and only strictly better points replace it.
/// Throws Infeasible when no grid point is feasible.
SplitResult optimize_delta_split(const MarginalClasses &classes, uint64_t n, uint64_t m,
                                 BennettMode mode = BennettMode::Printed);
SplitResult optimize_delta_split(const Graph &g, const Coloring &coloring, std::span<const BitMarginal> marginals,
                                 uint64_t n, uint64_t m, BennettMode mode = BennettMode::Printed);

/// Largest m in [1, n] whose optimized bound reaches `threshold`, or 0.
uint64_t max_output_copies(const MarginalClasses &classes, uint64_t n, double threshold,
                           BennettMode mode = BennettMode::Printed);
uint64_t max_output_copies(const Graph &g, const Coloring &coloring, std::span<const BitMarginal> marginals,
                           uint64_t n, double threshold, BennettMode mode = BennettMode::Printed);

/// Largest m in [1, n] with bipartite_bound(bell, n, m).F >= threshold, or 0.
uint64_t max_output_copies_bipartite(const OutcomeDistribution &bell, uint64_t n, double threshold,
                                     BennettMode mode = BennettMode::Printed);

}  // namespace multinet

#endif
