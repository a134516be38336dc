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

// Compiled with -mavx2 only; callers reach it through the dispatcher after a
// CPU check. No FMA: xor_scatter_add must round exactly like the scalar loop.

#include <immintrin.h>

#include <algorithm>

#include "multinet/kernels.h"

namespace multinet::kernels::avx2 {

double product(std::span<const double> values) {
    const size_t n = values.size();
    const double *p = values.data();
    __m256d acc0 = _mm256_set1_pd(1.0);
    __m256d acc1 = _mm256_set1_pd(1.0);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_mul_pd(acc0, _mm256_loadu_pd(p + i));
        acc1 = _mm256_mul_pd(acc1, _mm256_loadu_pd(p + i + 4));
    }
    acc0 = _mm256_mul_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double result = (lanes[0] * lanes[1]) * (lanes[2] * lanes[3]);
    for (; i < n; i++) {
        result *= p[i];
    }
    return result;
}

namespace {

// Lane t of the result holds lane t ^ m of v.
inline __m256d permute_lanes(__m256d v, unsigned m) {
    switch (m) {
        case 1:
            return _mm256_permute_pd(v, 0b0101);
        case 2:
            return _mm256_permute2f128_pd(v, v, 0x01);
        case 3:
            return _mm256_permute_pd(_mm256_permute2f128_pd(v, v, 0x01), 0b0101);
        default:
            return v;
    }
}

}  // namespace

void xor_scatter_add(std::span<double> dst, std::span<const double> src, uint64_t mask, double weight) {
    const size_t n = src.size();
    if (n < 4) {
        scalar::xor_scatter_add(dst, src, mask, weight);
        return;
    }
    const unsigned low = (unsigned)(mask & 3);
    const uint64_t high = mask & ~(uint64_t)3;
    const __m256d w = _mm256_set1_pd(weight);
    double *d = dst.data();
    const double *s = src.data();
    for (size_t x = 0; x < n; x += 4) {
        __m256d v = permute_lanes(_mm256_loadu_pd(s + x), low);
        double *target = d + (x ^ high);
        _mm256_storeu_pd(target, _mm256_add_pd(_mm256_loadu_pd(target), _mm256_mul_pd(w, v)));
    }
}

void bit_sums(std::span<const double> dist, unsigned bits, std::span<double> out) {
    const size_t n = dist.size();
    if (n < 4) {
        scalar::bit_sums(dist, bits, out);
        return;
    }
    std::fill(out.begin(), out.begin() + bits, 0.0);
    // acc[k] collects blocks whose (shared) bit k >= 2 is set; lanes stay
    // separate until the end.
    __m256d acc[64];
    for (unsigned k = 0; k < bits; k++) {
        acc[k] = _mm256_setzero_pd();
    }
    __m256d total = _mm256_setzero_pd();
    const double *p = dist.data();
    for (size_t x = 0; x < n; x += 4) {
        __m256d v = _mm256_loadu_pd(p + x);
        total = _mm256_add_pd(total, v);
        for (uint64_t rest = x >> 2; rest != 0; rest &= rest - 1) {
            unsigned k = 2 + (unsigned)__builtin_ctzll(rest);
            acc[k] = _mm256_add_pd(acc[k], v);
        }
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, total);
    out[0] = lanes[1] + lanes[3];
    out[1] = lanes[2] + lanes[3];
    for (unsigned k = 2; k < bits; k++) {
        _mm256_store_pd(lanes, acc[k]);
        out[k] = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    }
}

}  // namespace multinet::kernels::avx2
