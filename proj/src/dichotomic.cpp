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

#include "hms/dichotomic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hms {

namespace {

void require_lambda(int lambda) {
    if (lambda < 1) {
        throw DomainError("lambda must be >= 1, got " + std::to_string(lambda));
    }
}

void require_max_lambda(int max_lambda) {
    if (max_lambda < 1 || max_lambda > kMaxExactLambda) {
        throw DomainError("L must lie in [1, " + std::to_string(kMaxExactLambda) + "], got " +
                          std::to_string(max_lambda));
    }
}

void require_probability(const Dyadic& p) {
    if (p > Dyadic::one()) {
        throw DomainError("probability exceeds 1");
    }
}

}  // namespace

std::string_view to_string(Outcome o) { return o == Outcome::Alpha ? "alpha" : "not_alpha"; }

std::string_view to_string(DyadicRule r) { return r == DyadicRule::Greedy ? "greedy" : "geometric"; }

DyadicRule parse_dyadic_rule(std::string_view name) {
    if (name == "greedy") return DyadicRule::Greedy;
    if (name == "geometric") return DyadicRule::Geometric;
    throw DomainError("unknown dyadic rule '" + std::string(name) + "'");
}

BlochVector BlochVector::make(double x, double y, double z) {
    const double n2 = x * x + y * y + z * z;
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-12) {
        throw DomainError("Bloch vector is not a unit vector (|v|^2 = " + std::to_string(n2) + ")");
    }
    return {x, y, z};
}

BlochVector BlochVector::from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

DiagonalCoordinate::DiagonalCoordinate(double t) : t_(t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("diagonal coordinate " + std::to_string(t) + " outside [0,1]");
    }
}

DiscreteContext::DiscreteContext(int lambda) : lambda_(lambda) { require_lambda(lambda); }

double DiscreteContext::weight() const { return std::ldexp(1.0, -lambda_); }

BlochVector bloch_of_qubit(const StateVector& p) {
    if (p.dim() != 2) {
        throw DimensionError("bloch_of_qubit: expected a qubit, got dimension " + std::to_string(p.dim()));
    }
    if (!p.is_normalized()) {
        throw NormalizationError("bloch_of_qubit: state is not normalized");
    }
    const Complex a = p[0];
    const Complex b = p[1];
    const Complex c = std::conj(a) * b;
    return {2.0 * c.real(), 2.0 * c.imag(), std::norm(a) - std::norm(b)};
}

StateVector qubit_from_angles(double theta, double phi) {
    return StateVector{Complex(std::cos(theta / 2.0), 0.0), std::polar(std::sin(theta / 2.0), phi)};
}

DiagonalCoordinate diagonal_coordinate(const BlochVector& p, const BlochVector& alpha) {
    return DiagonalCoordinate(std::clamp((1.0 - p.dot(alpha)) / 2.0, 0.0, 1.0));
}

Outcome continuous_outcome(DiagonalCoordinate t, double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw DomainError("context coordinate u = " + std::to_string(u) + " outside [0,1]");
    }
    return u >= t.value() ? Outcome::Alpha : Outcome::NotAlpha;
}

double continuous_probability(DiagonalCoordinate t) { return 1.0 - t.value(); }

// ---------------------------------------------------------------------------
// Greedy rule

GreedyExpansion::GreedyExpansion(const Dyadic& probability) : probability_(probability) {
    require_probability(probability);
}

Outcome GreedyExpansion::next() {
    ++lambda_;
    if (lambda_ > kMaxExactLambda) {
        // sum_ already equals P for P < 1 (every double has at most 1074
        // digits), so P >= sum_ + 2^-lambda fails; only P = 1 keeps saying yes.
        return probability_.is_one() ? Outcome::Alpha : Outcome::NotAlpha;
    }
    const Dyadic threshold = sum_ + Dyadic::pow2(lambda_);
    if (probability_ >= threshold) {
        sum_ = threshold;
        return Outcome::Alpha;
    }
    return Outcome::NotAlpha;
}

Outcome dyadic_outcome(const Dyadic& probability, int lambda) {
    require_lambda(lambda);
    GreedyExpansion expansion(probability);
    Outcome out = Outcome::NotAlpha;
    const int steps = std::min(lambda, kMaxExactLambda + 1);
    for (int i = 0; i < steps; ++i) {
        out = expansion.next();
    }
    return out;
}

Outcome dyadic_outcome(double probability, int lambda) {
    return dyadic_outcome(Dyadic::from_double(probability), lambda);
}

// ---------------------------------------------------------------------------
// Geometric rule

Outcome dyadic_outcome_geometric(const Dyadic& t, int lambda) {
    require_lambda(lambda);
    require_probability(t);
    if (t.is_one()) {
        return Outcome::NotAlpha;
    }
    // floor(t * 2^lambda) mod 2 is the lambda-th binary digit of t.
    return t.digit(lambda) ? Outcome::NotAlpha : Outcome::Alpha;
}

Outcome dyadic_outcome_geometric(DiagonalCoordinate t, int lambda) {
    return dyadic_outcome_geometric(Dyadic::from_double(t.value()), lambda);
}

// ---------------------------------------------------------------------------

Outcome dyadic_outcome_for_rule(const Dyadic& probability, int lambda, DyadicRule rule) {
    if (rule == DyadicRule::Greedy) {
        return dyadic_outcome(probability, lambda);
    }
    require_probability(probability);
    return dyadic_outcome_geometric(probability.complement(), lambda);
}

Dyadic dyadic_partial_sum_exact(const Dyadic& probability, int max_lambda, DyadicRule rule) {
    require_probability(probability);
    require_max_lambda(max_lambda);
    if (rule == DyadicRule::Greedy) {
        GreedyExpansion expansion(probability);
        while (expansion.lambda() < max_lambda) {
            expansion.next();
        }
        return expansion.partial_sum();
    }
    const Dyadic t = probability.complement();
    Dyadic sum;
    for (int lambda = 1; lambda <= max_lambda; ++lambda) {
        if (dyadic_outcome_geometric(t, lambda) == Outcome::Alpha) {
            sum += Dyadic::pow2(lambda);
        }
    }
    return sum;
}

double dyadic_partial_sum(double probability, int max_lambda, DyadicRule rule) {
    return dyadic_partial_sum_exact(Dyadic::from_double(probability), max_lambda, rule).to_double();
}

}  // namespace hms
