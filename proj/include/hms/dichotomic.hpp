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

#ifndef HMS_DICHOTOMIC_HPP
#define HMS_DICHOTOMIC_HPP

// Deterministic hidden-measurement models for a yes/no question alpha.
//
// Continuous model: the context is a point u on the diagonal joining alpha
// (u = 0) and not-alpha (u = 1), uniformly distributed. The state p projects
// to the diagonal at t = (1 - p.alpha) / 2 and the answer is alpha iff u >= t.
//
// Discrete models: the context is lambda in {1, 2, ...} with weight 2^-lambda.
//   greedy     alpha iff P >= 2^-lambda + (sum of 2^-i over earlier alpha steps)
//   geometric  split [0,1] into 2^lambda equal cells; alpha iff t lies in an
//              even-indexed half-open cell (t = 1 is always not-alpha)
// Both reproduce P exactly in the limit; their lambda-wise outcomes differ
// only when P is dyadic.

#include <cstdint>
#include <string_view>

#include "hms/dyadic.hpp"
#include "hms/hilbert.hpp"

namespace hms {

enum class Outcome : std::uint8_t { Alpha, NotAlpha };

enum class DyadicRule : std::uint8_t { Greedy, Geometric };

std::string_view to_string(Outcome o);
std::string_view to_string(DyadicRule r);
/// Parses "greedy" / "geometric"; throws DomainError otherwise.
DyadicRule parse_dyadic_rule(std::string_view name);

/// Largest lambda for which 2^-lambda is held exactly by Dyadic.
inline constexpr int kMaxExactLambda = Dyadic::kFractionBits;

/// Unit vector in R^3.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    /// Validates |v| = 1 within 1e-12; throws DomainError otherwise.
    static BlochVector make(double x, double y, double z);
    /// Polar angle theta from +z, azimuth phi from +x.
    static BlochVector from_angles(double theta, double phi);

    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
    BlochVector antipode() const { return {-x, -y, -z}; }
};

/// Position of the projected state on the diagonal, 0 at alpha, 1 at not-alpha.
class DiagonalCoordinate {
   public:
    /// Throws DomainError unless 0 <= t <= 1.
    explicit DiagonalCoordinate(double t);
    double value() const noexcept { return t_; }

   private:
    double t_;
};

/// A discrete context lambda >= 1 with weight 2^-lambda.
class DiscreteContext {
   public:
    explicit DiscreteContext(int lambda);
    int lambda() const noexcept { return lambda_; }
    /// 2^-lambda; exact for lambda <= 1074.
    double weight() const;

    bool operator==(const DiscreteContext&) const = default;

   private:
    int lambda_;
};

/// Standard qubit to sphere map; p must be a normalized 2-vector.
BlochVector bloch_of_qubit(const StateVector& p);

/// Qubit cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
StateVector qubit_from_angles(double theta, double phi);

/// t = (1 - p.alpha) / 2.
DiagonalCoordinate diagonal_coordinate(const BlochVector& p, const BlochVector& alpha);

/// Alpha iff u >= t. Throws DomainError if u is outside [0,1].
Outcome continuous_outcome(DiagonalCoordinate t, double u);

/// Probability of alpha under uniform u: 1 - t.
double continuous_probability(DiagonalCoordinate t);

/// Greedy dyadic rule at step lambda >= 1. Throws DomainError if P is not in
/// [0,1] or lambda < 1.
Outcome dyadic_outcome(double probability, int lambda);
Outcome dyadic_outcome(const Dyadic& probability, int lambda);

/// Interval-parity rule at step lambda >= 1.
Outcome dyadic_outcome_geometric(DiagonalCoordinate t, int lambda);
Outcome dyadic_outcome_geometric(const Dyadic& t, int lambda);

/// Streams the greedy outcomes for lambda = 1, 2, ... in O(1) amortized
/// dyadic additions per step.
class GreedyExpansion {
   public:
    explicit GreedyExpansion(const Dyadic& probability);
    /// Outcome for the next lambda.
    Outcome next();
    int lambda() const noexcept { return lambda_; }
    /// Accumulated mass of the alpha steps so far.
    const Dyadic& partial_sum() const noexcept { return sum_; }

   private:
    Dyadic probability_;
    Dyadic sum_;
    int lambda_ = 0;
};

/// Outcome of `rule` at lambda for probability P; for the geometric rule the
/// coordinate t = 1 - P is formed exactly.
Outcome dyadic_outcome_for_rule(const Dyadic& probability, int lambda, DyadicRule rule);

/// Exact sum of 2^-lambda over lambda <= L with outcome Alpha.
/// Throws DomainError if P is outside [0,1] or L is outside [1, kMaxExactLambda].
Dyadic dyadic_partial_sum_exact(const Dyadic& probability, int max_lambda, DyadicRule rule);

/// Correctly rounded dyadic_partial_sum_exact.
double dyadic_partial_sum(double probability, int max_lambda, DyadicRule rule);

}  // namespace hms

#endif  // HMS_DICHOTOMIC_HPP
