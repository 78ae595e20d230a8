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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hms/errors.hpp"
#include "hms/hilbert.hpp"

using namespace hms;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Complex kI(0.0, 1.0);

CMatrix diag(std::initializer_list<double> entries) {
    const auto n = static_cast<Eigen::Index>(entries.size());
    CMatrix m = CMatrix::Zero(n, n);
    Eigen::Index k = 0;
    for (double e : entries) {
        m(k, k) = e;
        ++k;
    }
    return m;
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

StateVector plus() { return StateVector{kInvSqrt2, kInvSqrt2}; }

Projector p0() { return Projector(diag({1, 0})); }

}  // namespace

TEST_CASE("inner products of basis and circular states") {
    CHECK(std::abs(inner_product(StateVector::basis(2, 0), StateVector::basis(2, 0)) - 1.0) < 1e-15);
    CHECK(std::abs(inner_product(StateVector::basis(2, 0), StateVector::basis(2, 1))) < 1e-15);
    const StateVector right{kInvSqrt2, kInvSqrt2 * kI};
    const StateVector left{kInvSqrt2, -kInvSqrt2 * kI};
    CHECK(std::abs(inner_product(right, left)) < 1e-15);
    // conjugate-linear in the first slot
    CHECK(std::abs(inner_product(right, StateVector::basis(2, 1)) - (-kInvSqrt2 * kI)) < 1e-15);
}

TEST_CASE("projector from span") {
    const StateVector e0 = StateVector::basis(2, 0);
    const StateVector e1 = StateVector::basis(2, 1);
    CHECK(max_abs_diff(projector_from_span(std::vector{e0}).matrix(), diag({1, 0})) < 1e-15);
    CHECK(max_abs_diff(projector_from_span(std::vector{e0, e1}).matrix(), CMatrix::Identity(2, 2)) < 1e-15);
    CHECK(max_abs_diff(projector_from_span(std::vector{plus()}).matrix(), CMatrix::Constant(2, 2, 0.5)) < 1e-15);

    SUBCASE("non-orthogonal spanning set") {
        const Projector p = projector_from_span(std::vector{e0, plus()});
        CHECK(max_abs_diff(p.matrix(), CMatrix::Identity(2, 2)) < 1e-12);
    }
    SUBCASE("degenerate") {
        CHECK_THROWS_AS(projector_from_span(std::vector{e0, e0}), DegenerateSpanError);
        CHECK_THROWS_AS(projector_from_span(std::vector{StateVector::zero(2)}), DegenerateSpanError);
        CHECK_THROWS_AS(projector_from_span(std::vector<StateVector>{}), DegenerateSpanError);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(projector_from_span(std::vector{e0, StateVector::basis(3, 0)}), DimensionError);
    }
}

TEST_CASE("apply projector") {
    const Projector half(CMatrix::Constant(2, 2, 0.5));
    CHECK(apply_projector(p0(), StateVector::basis(2, 1)).norm() == 0.0);
    const StateVector v = apply_projector(p0(), plus());
    CHECK(std::abs(v[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(v[1]) == 0.0);
    const StateVector w = apply_projector(half, StateVector::basis(2, 0));
    CHECK(std::abs(w[0] - 0.5) < 1e-15);
    CHECK(std::abs(w[1] - 0.5) < 1e-15);
    CHECK_THROWS_AS(apply_projector(p0(), StateVector::basis(3, 0)), DimensionError);
}

TEST_CASE("born probability") {
    CHECK(born_probability(StateVector::basis(2, 0), p0()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(born_probability(plus(), p0()) - 0.5) < 1e-15);
    const double theta = std::numbers::pi / 3;
    const StateVector q{std::cos(theta / 2), std::sin(theta / 2)};
    CHECK(std::abs(born_probability(q, p0()) - 0.75) < 1e-15);
    CHECK_THROWS_AS(born_probability(StateVector{1.0, 1.0}, p0()), NormalizationError);
}

TEST_CASE("complement") {
    CHECK(max_abs_diff(complement_projector(p0()).matrix(), diag({0, 1})) == 0.0);
    CHECK(max_abs_diff(complement_projector(Projector::identity(3)).matrix(), CMatrix::Zero(3, 3)) == 0.0);
    CMatrix expected(2, 2);
    expected << 0.5, -0.5, -0.5, 0.5;
    CHECK(max_abs_diff(complement_projector(Projector(CMatrix::Constant(2, 2, 0.5))).matrix(), expected) < 1e-15);
}

TEST_CASE("tensor products are big-endian") {
    const StateVector e0 = StateVector::basis(2, 0);
    const StateVector e1 = StateVector::basis(2, 1);
    const StateVector e00 = tensor_vectors(std::vector{e0, e0});
    CHECK(max_abs_diff(e00.amplitudes(), StateVector::basis(4, 0).amplitudes()) == 0.0);
    CHECK(e00.factorization().factor_dims() == std::vector<std::size_t>{2, 2});
    const StateVector e01 = tensor_vectors(std::vector{e0, e1});
    CHECK(max_abs_diff(e01.amplitudes(), StateVector::basis(4, 1).amplitudes()) == 0.0);
    const StateVector pe0 = tensor_vectors(std::vector{plus(), e0});
    CVector expected(4);
    expected << kInvSqrt2, 0, kInvSqrt2, 0;
    CHECK(max_abs_diff(pe0.amplitudes(), expected) < 1e-15);

    const Projector p1(diag({0, 1}));
    CHECK(max_abs_diff(tensor_projectors(std::vector{p0(), p0()}).matrix(), diag({1, 0, 0, 0})) == 0.0);
    CHECK(max_abs_diff(tensor_projectors(std::vector{Projector::identity(2), Projector::identity(2)}).matrix(),
                       CMatrix::Identity(4, 4)) == 0.0);
    CHECK(max_abs_diff(tensor_projectors(std::vector{p0(), p1}).matrix(), diag({0, 1, 0, 0})) == 0.0);

    CHECK_THROWS_AS(tensor_vectors(std::vector<StateVector>{}), EmptyTensorError);
    CHECK_THROWS_AS(tensor_projectors(std::vector<Projector>{}), EmptyTensorError);
}

TEST_CASE("conjugation") {
    CHECK(max_abs_diff(conjugate(p0(), UnitaryMap::identity(2)).matrix(), p0().matrix()) == 0.0);
    CHECK(max_abs_diff(conjugate(p0(), UnitaryMap(pauli_x())).matrix(), diag({0, 1})) == 0.0);
    CHECK_THROWS_AS(UnitaryMap(diag({1, 2})), DomainError);
}

TEST_CASE("conjugation commutes with tensor products") {
    std::mt19937_64 gen(7);
    std::normal_distribution<double> normal;
    auto random_unitary = [&]() {
        CMatrix m(2, 2);
        for (Eigen::Index i = 0; i < 2; ++i)
            for (Eigen::Index j = 0; j < 2; ++j) m(i, j) = Complex(normal(gen), normal(gen));
        Eigen::HouseholderQR<CMatrix> qr(m);
        return UnitaryMap(qr.householderQ() * CMatrix::Identity(2, 2));
    };
    auto random_projector = [&]() {
        const StateVector v = StateVector{Complex(normal(gen), normal(gen)), Complex(normal(gen), normal(gen))};
        return ketbra(v.normalized());
    };
    for (int trial = 0; trial < 50; ++trial) {
        const UnitaryMap u = random_unitary();
        const UnitaryMap v = random_unitary();
        const Projector p = random_projector();
        const Projector q = random_projector();
        const Projector lhs = conjugate(tensor_projectors(std::vector{p, q}), tensor_unitaries(std::vector{u, v}));
        const Projector rhs = tensor_projectors(std::vector{conjugate(p, u), conjugate(q, v)});
        CHECK(max_abs_diff(lhs.matrix(), rhs.matrix()) < 1e-12);
    }
}

TEST_CASE("projector validation") {
    CHECK_THROWS_AS(Projector(diag({1, 0.5})), DomainError);
    CMatrix not_hermitian(2, 2);
    not_hermitian << 1, 1, 0, 0;
    CHECK_THROWS_AS(Projector{not_hermitian}, DomainError);
    CHECK(Projector::identity(3).rank() == 3);
    const std::vector<std::size_t> twice{1, 1};
    CHECK_THROWS_AS(Projector::basis(2, twice), DegenerateSpanError);
}

TEST_CASE("state normalization") {
    const StateVector v{3.0, 4.0};
    CHECK_FALSE(v.is_normalized());
    const StateVector n = v.normalized();
    CHECK(n.is_normalized());
    CHECK(std::abs(n[0] - 0.6) < 1e-15);
    CHECK_THROWS_AS(StateVector::zero(2).normalized(), NormalizationError);
    CHECK(same_ray(plus(), StateVector{kInvSqrt2 * kI, kInvSqrt2 * kI}));
    CHECK_FALSE(same_ray(plus(), StateVector::basis(2, 0)));
}
