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

#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hms/dichotomic.hpp"
#include "hms/errors.hpp"

using namespace hms;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

cpp_rational pow2_rational(int k) { return cpp_rational(cpp_int(1), cpp_int(1) << k); }

// Literal greedy recursion over rationals.
std::vector<Outcome> greedy_oracle(const cpp_rational& p, int max_lambda) {
    std::vector<Outcome> out;
    cpp_rational sum = 0;
    for (int lambda = 1; lambda <= max_lambda; ++lambda) {
        if (p >= sum + pow2_rational(lambda)) {
            sum += pow2_rational(lambda);
            out.push_back(Outcome::Alpha);
        } else {
            out.push_back(Outcome::NotAlpha);
        }
    }
    return out;
}

// Cell index floor(t 2^lambda); even cells answer alpha, t = 1 never does.
std::vector<Outcome> geometric_oracle(const cpp_rational& t, int max_lambda) {
    std::vector<Outcome> out;
    for (int lambda = 1; lambda <= max_lambda; ++lambda) {
        if (t == 1) {
            out.push_back(Outcome::NotAlpha);
            continue;
        }
        const cpp_rational scaled = t * cpp_rational(cpp_int(1) << lambda);
        const cpp_int cell = numerator(scaled) / denominator(scaled);
        out.push_back((cell & 1) == 0 ? Outcome::Alpha : Outcome::NotAlpha);
    }
    return out;
}

cpp_rational partial_sum_oracle(const std::vector<Outcome>& outcomes) {
    cpp_rational sum = 0;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if (outcomes[k] == Outcome::Alpha) sum += pow2_rational(static_cast<int>(k) + 1);
    }
    return sum;
}

std::vector<Outcome> greedy_impl(double p, int max_lambda) {
    std::vector<Outcome> out;
    for (int lambda = 1; lambda <= max_lambda; ++lambda) out.push_back(dyadic_outcome(p, lambda));
    return out;
}

std::vector<Outcome> geometric_impl(double t, int max_lambda) {
    std::vector<Outcome> out;
    for (int lambda = 1; lambda <= max_lambda; ++lambda) {
        out.push_back(dyadic_outcome_geometric(DiagonalCoordinate(t), lambda));
    }
    return out;
}

bool near(const BlochVector& v, double x, double y, double z) {
    return std::abs(v.x - x) < 1e-15 && std::abs(v.y - y) < 1e-15 && std::abs(v.z - z) < 1e-15;
}

}  // namespace

TEST_CASE("sphere correspondence") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(near(bloch_of_qubit(StateVector::basis(2, 0)), 0, 0, 1));
    CHECK(near(bloch_of_qubit(StateVector{s, s}), 1, 0, 0));
    CHECK(near(bloch_of_qubit(StateVector{Complex(s, 0), Complex(0, s)}), 0, 1, 0));
    CHECK_THROWS_AS(bloch_of_qubit(StateVector::basis(3, 0)), DimensionError);
}

TEST_CASE("diagonal coordinate") {
    const BlochVector alpha{0, 0, 1};
    CHECK(diagonal_coordinate(alpha, alpha).value() == 0.0);
    CHECK(diagonal_coordinate(alpha.antipode(), alpha).value() == 1.0);
    const BlochVector p = BlochVector::from_angles(std::numbers::pi / 3, 0.0);
    CHECK(std::abs(diagonal_coordinate(p, alpha).value() - 0.25) < 1e-15);
    CHECK_THROWS_AS(DiagonalCoordinate(1.5), DomainError);
    CHECK_THROWS_AS(BlochVector::make(1, 1, 0), DomainError);
}

TEST_CASE("continuous model") {
    for (double u : {0.0, 0.3, 1.0}) CHECK(continuous_outcome(DiagonalCoordinate(0.0), u) == Outcome::Alpha);
    CHECK(continuous_outcome(DiagonalCoordinate(0.25), 0.5) == Outcome::Alpha);
    CHECK(continuous_outcome(DiagonalCoordinate(0.25), 0.25) == Outcome::Alpha);
    CHECK(continuous_outcome(DiagonalCoordinate(0.25), 0.2) == Outcome::NotAlpha);
    CHECK(continuous_probability(DiagonalCoordinate(0.0)) == 1.0);
    CHECK(continuous_probability(DiagonalCoordinate(0.25)) == 0.75);
    CHECK(continuous_probability(DiagonalCoordinate(0.5)) == 0.5);
    CHECK_THROWS_AS(continuous_outcome(DiagonalCoordinate(0.25), 1.5), DomainError);
}

TEST_CASE("continuous probability matches Born on random qubits") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> angle(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double theta = std::acos(1 - 2 * angle(gen));
        const double phi = 2 * std::numbers::pi * angle(gen);
        const double theta_a = std::acos(1 - 2 * angle(gen));
        const double phi_a = 2 * std::numbers::pi * angle(gen);
        const StateVector p = qubit_from_angles(theta, phi);
        const StateVector a = qubit_from_angles(theta_a, phi_a);
        const double born = born_probability(p, ketbra(a));
        const double model =
            continuous_probability(diagonal_coordinate(bloch_of_qubit(p), bloch_of_qubit(a)));
        CHECK(std::abs(born - model) <= 1e-12);
    }
}

TEST_CASE("greedy rule hand traces") {
    for (int lambda = 1; lambda <= 70; ++lambda) CHECK(dyadic_outcome(0.0, lambda) == Outcome::NotAlpha);
    CHECK(dyadic_outcome(0.5, 1) == Outcome::Alpha);
    CHECK(dyadic_outcome(0.5, 2) == Outcome::NotAlpha);
    CHECK(dyadic_outcome(0.75, 1) == Outcome::Alpha);
    CHECK(dyadic_outcome(0.75, 2) == Outcome::Alpha);
    CHECK(dyadic_outcome(0.75, 3) == Outcome::NotAlpha);
    for (int lambda : {1, 2, 60, 1088, 2000}) CHECK(dyadic_outcome(1.0, lambda) == Outcome::Alpha);
    CHECK_THROWS_AS(dyadic_outcome(0.5, 0), DomainError);
    CHECK_THROWS_AS(dyadic_outcome(1.5, 1), DomainError);
}

TEST_CASE("geometric rule hand traces") {
    for (int lambda = 1; lambda <= 70; ++lambda) {
        CHECK(dyadic_outcome_geometric(DiagonalCoordinate(0.0), lambda) == Outcome::Alpha);
        CHECK(dyadic_outcome_geometric(DiagonalCoordinate(1.0), lambda) == Outcome::NotAlpha);
    }
    CHECK(dyadic_outcome_geometric(DiagonalCoordinate(0.25), 2) == Outcome::NotAlpha);
    CHECK(dyadic_outcome_geometric(DiagonalCoordinate(0.25), 3) == Outcome::Alpha);
}

TEST_CASE("rules agree with the rational oracles") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> values{0.0, 1.0, 0.5, 0.75, 1.0 / 3, 1.0 / 7, 1 / std::numbers::pi, std::sqrt(2.0) - 1};
    for (int i = 0; i < 100; ++i) values.push_back(unit(gen));
    for (int k = 0; k <= 16; ++k) values.push_back(k / 16.0);
    for (double v : values) {
        CAPTURE(v);
        CHECK(greedy_impl(v, 64) == greedy_oracle(cpp_rational(v), 64));
        CHECK(geometric_impl(v, 64) == geometric_oracle(cpp_rational(v), 64));
    }
}

TEST_CASE("partial sums") {
    CHECK(dyadic_partial_sum(0.5, 10, DyadicRule::Greedy) == 0.5);
    CHECK(dyadic_partial_sum(1.0, 10, DyadicRule::Greedy) == 1.0 - std::ldexp(1.0, -10));
    CHECK(dyadic_partial_sum(1.0, 10, DyadicRule::Geometric) == 1.0 - std::ldexp(1.0, -10));
    const double third = 1.0 / 3.0;
    const cpp_rational oracle = partial_sum_oracle(greedy_oracle(cpp_rational(third), 20));
    const cpp_rational error = cpp_rational(third) - oracle;
    CHECK(error >= 0);
    CHECK(error <= pow2_rational(20));
    CHECK(std::abs(dyadic_partial_sum(third, 20, DyadicRule::Greedy) - third) <= std::ldexp(1.0, -20));
    CHECK_THROWS_AS(dyadic_partial_sum(0.5, 0, DyadicRule::Greedy), DomainError);
    CHECK_THROWS_AS(dyadic_partial_sum(0.5, kMaxExactLambda + 1, DyadicRule::Greedy), DomainError);
}

TEST_CASE("exact partial sums match the oracle at depth") {
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double p = unit(gen);
        for (int L : {1, 40, 53, 200}) {
            for (DyadicRule rule : {DyadicRule::Greedy, DyadicRule::Geometric}) {
                const auto outcomes = rule == DyadicRule::Greedy
                                          ? greedy_oracle(cpp_rational(p), L)
                                          : geometric_oracle(1 - cpp_rational(p), L);
                const cpp_rational sum = partial_sum_oracle(outcomes);
                const Dyadic got = dyadic_partial_sum_exact(Dyadic::from_double(p), L, rule);
                // compare digit by digit
                bool same = true;
                for (int k = 1; k <= L; ++k) {
                    const cpp_rational scaled = sum * cpp_rational(cpp_int(1) << k);
                    const cpp_int cell = numerator(scaled) / denominator(scaled);
                    same = same && (got.digit(k) == ((cell & 1) != 0));
                }
                CHECK(same);
            }
        }
    }
}

TEST_CASE("rules differ only on dyadic probabilities") {
    // At P = 3/4 the greedy rule answers yes at 1, 2 and the geometric rule
    // (t = 1/4) at 1 and every lambda >= 3.
    CHECK(greedy_impl(0.75, 5) ==
          std::vector{Outcome::Alpha, Outcome::Alpha, Outcome::NotAlpha, Outcome::NotAlpha, Outcome::NotAlpha});
    CHECK(geometric_impl(0.25, 5) ==
          std::vector{Outcome::Alpha, Outcome::NotAlpha, Outcome::Alpha, Outcome::Alpha, Outcome::Alpha});
    for (double p : {1.0 / 3, 1.0 / 7, 1 / std::numbers::pi, std::sqrt(2.0) - 1}) {
        for (int lambda = 1; lambda <= 40; ++lambda) {
            CHECK(dyadic_outcome_for_rule(Dyadic::from_double(p), lambda, DyadicRule::Greedy) ==
                  dyadic_outcome_for_rule(Dyadic::from_double(p), lambda, DyadicRule::Geometric));
        }
    }
}

TEST_CASE("parse rule names") {
    CHECK(parse_dyadic_rule("greedy") == DyadicRule::Greedy);
    CHECK(parse_dyadic_rule("geometric") == DyadicRule::Geometric);
    CHECK_THROWS_AS(parse_dyadic_rule("other"), DomainError);
    CHECK(to_string(Outcome::Alpha) != to_string(Outcome::NotAlpha));
    CHECK(DiscreteContext(3).weight() == 0.125);
    CHECK_THROWS_AS(DiscreteContext(0), DomainError);
}
