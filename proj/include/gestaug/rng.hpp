// Copyright 2026 The gestaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file rng.hpp
 * @brief Deterministic, splittable parameter sampling.
 *
 * Randomness is managed per (sample, copy), not as one shared stream, so a
 * dataset's contents are a pure function of (global_seed, sample_id,
 * copy_index) regardless of worker count or processing order. Ports in
 * other languages reproduce identical datasets by following this exact
 * construction:
 *
 *   key      = mix(mix(mix(global_seed) ^ fnv1a64(sample_id)) ^ copy_index)
 *   mix(z)   = SplitMix64 step: z += 0x9E3779B97F4A7C15, then finalize with
 *              (z ^ z>>30) * 0xBF58476D1CE4E5B9,
 *              (z ^ z>>27) * 0x94D049BB133111EB, z ^ z>>31
 *   state    = four successive SplitMix64 outputs starting from key
 *   stream   = xoshiro256++ (rotl(s0 + s3, 23) + s0)
 *   uniform  = (next() >> 11) * 2^-53, giving doubles in [0, 1)
 *
 * Test vectors live in tests/test_rng.cpp.
 */

#pragma once

#include <cstdint>
#include <string_view>

#include "gestaug/transforms.hpp"

namespace gestaug {

/// FNV-1a 64-bit hash (offset 14695981039346656037, prime 1099511628211).
std::uint64_t fnv1a64(std::string_view bytes);

/// SplitMix64 output function applied to one step from @p z.
std::uint64_t splitmix64_next(std::uint64_t& z);

/// xoshiro256++ stream, seeded via SplitMix64 from a 64-bit key.
class Rng {
public:
    explicit Rng(std::uint64_t key);

    /// Next 64 uniform bits.
    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 significant bits.
    double next_unit();

    /// Uniform double in [lo, hi).
    double next_range(double lo, double hi);

private:
    std::uint64_t state_[4];
};

/// Rekey a stream for one augmented copy of one sample. Pure function of
/// its inputs; independent of call order and worker assignment.
Rng derive_rng(std::uint64_t global_seed, std::string_view sample_id,
               std::uint32_t copy_index);

/**
 * @brief Draw one parameter tuple for the augmentation chain.
 *
 * Consumes exactly 7 draws in this fixed order: crop_scale (fair coin over
 * {0.90, 0.95}), crop_offset_x, crop_offset_y, theta_deg in [-15,15),
 * zeta in [0.90,1.10), beta and gamma in [0.8,1.2).
 */
AugmentationParams sample_params(Rng& rng);

}  // namespace gestaug
