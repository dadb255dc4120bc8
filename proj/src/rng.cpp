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

#include "gestaug/rng.hpp"

namespace gestaug {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char ch : bytes) {
        hash ^= ch;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::uint64_t splitmix64_next(std::uint64_t& z) {
    z += kGolden;
    std::uint64_t out = z;
    out = (out ^ (out >> 30)) * 0xBF58476D1CE4E5B9ULL;
    out = (out ^ (out >> 27)) * 0x94D049BB133111EBULL;
    return out ^ (out >> 31);
}

Rng::Rng(std::uint64_t key) {
    std::uint64_t z = key;
    for (auto& word : state_) {
        word = splitmix64_next(z);
    }
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_range(double lo, double hi) {
    return lo + next_unit() * (hi - lo);
}

Rng derive_rng(std::uint64_t global_seed, std::string_view sample_id,
               std::uint32_t copy_index) {
    std::uint64_t z = global_seed;
    std::uint64_t key = splitmix64_next(z);
    z = key ^ fnv1a64(sample_id);
    key = splitmix64_next(z);
    z = key ^ copy_index;
    key = splitmix64_next(z);
    return Rng(key);
}

AugmentationParams sample_params(Rng& rng) {
    AugmentationParams params;
    params.crop_scale = rng.next_unit() < 0.5 ? kCropScaleSmall : kCropScaleLarge;
    params.crop_offset_x = rng.next_unit();
    params.crop_offset_y = rng.next_unit();
    params.theta_deg = rng.next_range(-15.0, 15.0);
    params.zeta = rng.next_range(0.90, 1.10);
    params.beta = rng.next_range(0.8, 1.2);
    params.gamma = rng.next_range(0.8, 1.2);
    return params;
}

}  // namespace gestaug
