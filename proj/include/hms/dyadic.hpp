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

#ifndef HMS_DYADIC_HPP
#define HMS_DYADIC_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace hms {

/// Exact nonnegative binary fraction N * 2^-kFractionBits.
///
/// Every finite double in [0, 1] converts exactly (the smallest subnormal is
/// 2^-1074), so thresholds of the form S + 2^-lambda can be compared against
/// a probability without any rounding. Values up to 2^64 are representable;
/// subtraction below zero throws.
class Dyadic {
   public:
    static constexpr int kFractionBits = 1088;

    Dyadic() = default;

    /// Exact conversion; throws DomainError unless x is finite and 0 <= x <= 1.
    static Dyadic from_double(double x);
    static Dyadic zero() { return Dyadic(); }
    static Dyadic one();
    /// 2^-k for 0 <= k <= kFractionBits.
    static Dyadic pow2(int k);

    /// k-th binary digit after the point of the terminating expansion
    /// (k >= 1). Zero for k > kFractionBits.
    bool digit(int k) const;

    bool is_zero() const;
    bool is_one() const { return *this == one(); }

    /// 1 - x; x must not exceed 1.
    Dyadic complement() const;

    /// Correctly rounded (round-half-even) conversion.
    double to_double() const;

    /// Hex dump of the significant limbs, most significant first. Debug aid.
    std::string to_hex() const;

    Dyadic operator+(const Dyadic& other) const;
    /// Throws DomainError if other > *this.
    Dyadic operator-(const Dyadic& other) const;
    Dyadic& operator+=(const Dyadic& other) { return *this = *this + other; }

    std::strong_ordering operator<=>(const Dyadic& other) const;
    bool operator==(const Dyadic& other) const = default;

   private:
    static constexpr int kLimbs = 18;  // 1152 bits: 1088 fractional + 64 integral.

    bool bit(int index) const { return (limbs_[index / 64] >> (index % 64)) & 1U; }
    void set_bit(int index) { limbs_[index / 64] |= std::uint64_t{1} << (index % 64); }

    std::array<std::uint64_t, kLimbs> limbs_{};  // little-endian
};

}  // namespace hms

#endif  // HMS_DYADIC_HPP
