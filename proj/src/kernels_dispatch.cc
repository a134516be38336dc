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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "multinet/kernels.h"

namespace multinet::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(MULTINET_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa detect() {
    const char *env = std::getenv("MULTINET_KERNELS");
    if (env != nullptr) {
        std::string v(env);
        if (v == "scalar") {
            return Isa::Scalar;
        }
        if (v == "avx2" && cpu_has_avx2()) {
            return Isa::Avx2;
        }
    }
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

// -1: automatic; otherwise the forced Isa value.
std::atomic<int> override_isa{-1};

}  // namespace

std::string isa_name(Isa isa) {
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool isa_available(Isa isa) {
    return isa == Isa::Scalar || cpu_has_avx2();
}

Isa active_isa() {
    int forced = override_isa.load(std::memory_order_relaxed);
    if (forced >= 0) {
        return (Isa)forced;
    }
    static const Isa detected = detect();
    return detected;
}

void set_isa_override(std::optional<Isa> isa) {
    if (isa.has_value() && !isa_available(*isa)) {
        throw std::invalid_argument("kernel ISA " + isa_name(*isa) + " is not available on this machine");
    }
    override_isa.store(isa.has_value() ? (int)*isa : -1, std::memory_order_relaxed);
}

#if defined(MULTINET_HAVE_AVX2)
#define MULTINET_DISPATCH(fn, ...) \
    (active_isa() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define MULTINET_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double product(std::span<const double> values) {
    return MULTINET_DISPATCH(product, values);
}

void xor_scatter_add(std::span<double> dst, std::span<const double> src, uint64_t mask, double weight) {
    if (dst.size() != src.size() || (src.size() & (src.size() - 1)) != 0 || mask >= src.size()) {
        throw std::invalid_argument("xor_scatter_add: spans must share a power-of-two length above the mask");
    }
    MULTINET_DISPATCH(xor_scatter_add, dst, src, mask, weight);
}

void bit_sums(std::span<const double> dist, unsigned bits, std::span<double> out) {
    if (bits >= 64 || dist.size() != ((size_t)1 << bits) || out.size() < bits) {
        throw std::invalid_argument("bit_sums: distribution length must be 2^bits");
    }
    MULTINET_DISPATCH(bit_sums, dist, bits, out);
}

}  // namespace multinet::kernels
