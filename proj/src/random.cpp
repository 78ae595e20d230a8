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

#include "hms/random.hpp"

#include <bit>
#include <string>

namespace hms {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    std::uint64_t x = seed;
    const std::uint64_t a = splitmix64(x);
    x = a ^ (stream_id * 0xD1B54A32D192ED03ULL);
    for (auto& word : state_) {
        word = splitmix64(x);
    }
}

std::uint64_t RandomSource::next_u64() {
    // xoshiro256**
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

RandomSource RandomSource::for_trial(std::uint64_t index) const {
    std::uint64_t x = seed_ ^ std::rotl(stream_id_, 32);
    return RandomSource(splitmix64(x), index);
}

double draw_uniform(RandomSource& rng) {
    return static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;
}

DiscreteContext draw_lambda(RandomSource& rng, int lambda_max) {
    if (lambda_max < 1) {
        throw DomainError("lambda_max must be >= 1, got " + std::to_string(lambda_max));
    }
    int k = 1;
    while (true) {
        const std::uint64_t flips = rng.next_u64();
        for (int b = 0; b < 64; ++b, ++k) {
            if (k >= lambda_max) {
                return DiscreteContext(lambda_max);
            }
            if ((flips >> b) & 1U) {
                return DiscreteContext(k);
            }
        }
    }
}

}  // namespace hms
