// Copyright 2026 The hmsim Authors
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

#ifndef HMS_RANDOM_HPP
#define HMS_RANDOM_HPP

// Keyed random streams.
//
// Generator: xoshiro256** (period 2^256 - 1). The 256-bit state for the key
// (seed, stream_id) is filled as follows, with splitmix64(x) denoting one
// SplitMix64 step from state x:
//   x = seed;  a = splitmix64(x)
//   x = a ^ (stream_id * 0xD1B54A32D192ED03)
//   s[0..3] = four successive splitmix64(x) outputs
// Identical keys give identical streams on every platform.

#include <array>
#include <cstdint>

#include "hms/dichotomic.hpp"

namespace hms {

/// One SplitMix64 step: advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

class RandomSource {
   public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Next raw 64-bit output.
    std::uint64_t next_u64();

    /// Source for trial `index`: stream_id = index and seed = one
    /// splitmix64 step from seed ^ rotl(stream_id, 32) of this source.
    RandomSource for_trial(std::uint64_t index) const;

   private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> state_{};
};

/// Uniform double in [0, 1) with 53-bit resolution.
double draw_uniform(RandomSource& rng);

/// Number of fair coin flips up to and including the first head, capped at
/// lambda_max: P(k) = 2^-k for k < lambda_max, the remaining mass on
/// lambda_max. Throws DomainError if lambda_max < 1.
DiscreteContext draw_lambda(RandomSource& rng, int lambda_max);

}  // namespace hms

#endif  // HMS_RANDOM_HPP
