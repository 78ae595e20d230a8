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

#include "hms/dyadic.hpp"

#include <cmath>
#include <cstdio>

#include "hms/errors.hpp"

namespace hms {

namespace {

// Global bit index of 2^-1074, the least significant bit of any double.
constexpr int kSmallestDoubleBit = Dyadic::kFractionBits - 1074;

}  // namespace

Dyadic Dyadic::from_double(double x) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        throw DomainError(std::string("value ") + buf + " is not a probability in [0,1]");
    }
    Dyadic out;
    if (x == 0.0) {
        return out;
    }
    int exponent = 0;
    const double fraction = std::frexp(x, &exponent);  // x = fraction * 2^exponent
    const auto mantissa = static_cast<std::uint64_t>(std::ldexp(fraction, 53));
    // x = mantissa * 2^(exponent - 53) = mantissa * 2^(shift - kFractionBits)
    const int shift = exponent - 53 + kFractionBits;
    for (int b = 0; b < 53; ++b) {
        if ((mantissa >> b) & 1U) {
            // Bits that would fall below index 0 are zero for any double.
            const int index = b + shift;
            if (index >= 0) {
                out.set_bit(index);
            }
        }
    }
    return out;
}

Dyadic Dyadic::one() {
    Dyadic out;
    out.set_bit(kFractionBits);
    return out;
}

Dyadic Dyadic::pow2(int k) {
    if (k < 0 || k > kFractionBits) {
        throw DomainError("2^-" + std::to_string(k) + " is not representable");
    }
    Dyadic out;
    out.set_bit(kFractionBits - k);
    return out;
}

bool Dyadic::digit(int k) const {
    if (k < 1) {
        throw DomainError("binary digit index must be >= 1");
    }
    if (k > kFractionBits) {
        return false;
    }
    return bit(kFractionBits - k);
}

bool Dyadic::is_zero() const {
    for (auto limb : limbs_) {
        if (limb != 0) {
            return false;
        }
    }
    return true;
}

Dyadic Dyadic::complement() const { return one() - *this; }

Dyadic Dyadic::operator+(const Dyadic& other) const {
    Dyadic out;
    unsigned carry = 0;
    for (int i = 0; i < kLimbs; ++i) {
        const std::uint64_t a = limbs_[i];
        const std::uint64_t s = a + other.limbs_[i];
        const unsigned c1 = s < a;
        const std::uint64_t r = s + carry;
        const unsigned c2 = r < s;
        out.limbs_[i] = r;
        carry = c1 | c2;
    }
    if (carry != 0) {
        throw DomainError("dyadic addition overflow");
    }
    return out;
}

Dyadic Dyadic::operator-(const Dyadic& other) const {
    if (*this < other) {
        throw DomainError("dyadic subtraction would be negative");
    }
    Dyadic out;
    unsigned borrow = 0;
    for (int i = 0; i < kLimbs; ++i) {
        const std::uint64_t a = limbs_[i];
        const std::uint64_t d = a - other.limbs_[i];
        const unsigned b1 = a < other.limbs_[i];
        const std::uint64_t r = d - borrow;
        const unsigned b2 = d < borrow;
        out.limbs_[i] = r;
        borrow = b1 | b2;
    }
    return out;
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& other) const {
    for (int i = kLimbs - 1; i >= 0; --i) {
        if (limbs_[i] != other.limbs_[i]) {
            return limbs_[i] <=> other.limbs_[i];
        }
    }
    return std::strong_ordering::equal;
}

double Dyadic::to_double() const {
    int top = -1;
    for (int i = kLimbs - 1; i >= 0 && top < 0; --i) {
        if (limbs_[i] != 0) {
            top = i * 64 + 63 - __builtin_clzll(limbs_[i]);
        }
    }
    if (top < 0) {
        return 0.0;
    }
    // Keep at most 53 significant bits, never below the subnormal floor.
    const int low = std::max(top - 52, kSmallestDoubleBit);
    if (top < low) {
        // Entire value lies below 2^-1074: round to zero or the smallest subnormal.
        const bool above_half = top == low - 1 && [&] {
            for (int i = 0; i < top; ++i) {
                if (bit(i)) return true;
            }
            return false;
        }();
        return above_half ? std::ldexp(1.0, -1074) : 0.0;
    }
    std::uint64_t kept = 0;
    for (int i = top; i >= low; --i) {
        kept = (kept << 1) | static_cast<std::uint64_t>(bit(i));
    }
    const bool round_bit = low > 0 && bit(low - 1);
    bool sticky = false;
    for (int i = 0; i < low - 1 && !sticky; ++i) {
        sticky = bit(i);
    }
    if (round_bit && (sticky || (kept & 1U))) {
        ++kept;
    }
    return std::ldexp(static_cast<double>(kept), low - kFractionBits);
}

std::string Dyadic::to_hex() const {
    std::string out;
    bool leading = true;
    for (int i = kLimbs - 1; i >= 0; --i) {
        if (leading && limbs_[i] == 0 && i > 0) {
            continue;
        }
        char buf[20];
        std::snprintf(buf, sizeof buf, leading ? "%llx" : "%016llx",
                      static_cast<unsigned long long>(limbs_[i]));
        out += buf;
        if (i > 0) out += '_';
        leading = false;
    }
    return out;
}

}  // namespace hms
