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

#include <algorithm>

#include "multinet/kernels.h"

namespace multinet::kernels::scalar {

double product(std::span<const double> values) {
    double p = 1.0;
    for (double v : values) {
        p *= v;
    }
    return p;
}

void xor_scatter_add(std::span<double> dst, std::span<const double> src, uint64_t mask, double weight) {
    const size_t n = src.size();
    for (size_t x = 0; x < n; x++) {
        dst[x ^ mask] += weight * src[x];
    }
}

void bit_sums(std::span<const double> dist, unsigned bits, std::span<double> out) {
    std::fill(out.begin(), out.begin() + bits, 0.0);
    for (size_t x = 0; x < dist.size(); x++) {
        for (unsigned k = 0; k < bits; k++) {
            if ((x >> k) & 1) {
                out[k] += dist[x];
            }
        }
    }
}

}  // namespace multinet::kernels::scalar
