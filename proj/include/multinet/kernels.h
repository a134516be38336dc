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

#ifndef MULTINET_KERNELS_H
#define MULTINET_KERNELS_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// when built for x86-64, an AVX2 version picked at runtime. The two agree
// exactly for xor_scatter_add and up to summation order elsewhere.

namespace multinet::kernels {

enum class Isa { Scalar, Avx2 };

std::string isa_name(Isa isa);
bool isa_available(Isa isa);

/// The ISA used by the dispatching entry points. Chosen once from the CPU,
/// unless MULTINET_KERNELS=scalar|avx2 or set_isa_override says otherwise.
Isa active_isa();

/// Forces an ISA (nullopt restores automatic selection). Throws
/// std::invalid_argument if the ISA is not available on this machine.
void set_isa_override(std::optional<Isa> isa);

/// Product of all values (1 for an empty span).
double product(std::span<const double> values);

/// dst[x ^ mask] += weight * src[x] for every x. Both spans have the same
/// power-of-two length and mask < length. dst and src must not alias.
void xor_scatter_add(std::span<double> dst, std::span<const double> src, uint64_t mask, double weight);

/// out[k] = sum of dist[x] over all x whose bit k is set, for k < bits.
/// dist.size() == 2^bits.
void bit_sums(std::span<const double> dist, unsigned bits, std::span<double> out);

namespace scalar {
double product(std::span<const double> values);
void xor_scatter_add(std::span<double> dst, std::span<const double> src, uint64_t mask, double weight);
void bit_sums(std::span<const double> dist, unsigned bits, std::span<double> out);
}  // namespace scalar

namespace avx2 {
double product(std::span<const double> values);
void xor_scatter_add(std::span<double> dst, std::span<const double> src, uint64_t mask, double weight);
void bit_sums(std::span<const double> dist, unsigned bits, std::span<double> out);
}  // namespace avx2

}  // namespace multinet::kernels

#endif
