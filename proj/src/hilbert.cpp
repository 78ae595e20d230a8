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

#include "hms/hilbert.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace hms {

namespace {

std::string dims_message(const char* what, std::size_t a, std::size_t b) {
    return std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
           std::to_string(b) + ")";
}

void require_same_dim(const char* what, std::size_t a, std::size_t b) {
    if (a != b) {
        throw DimensionError(dims_message(what, a, b));
    }
}

void require_normalized(const char* what, const StateVector& v) {
    if (!v.is_normalized()) {
        throw NormalizationError(std::string(what) + ": state is not normalized (|v|^2 = " +
                                 std::to_string(v.squared_norm()) + ")");
    }
}

void check_factorization(const TensorFactorization& f, std::size_t dim) {
    if (f.total_dim() != dim) {
        throw DimensionError(dims_message("tensor factorization", f.total_dim(), dim));
    }
}

std::vector<std::size_t> concat_factors(const std::vector<std::size_t>& acc,
                                        const TensorFactorization& next) {
    auto out = acc;
    out.insert(out.end(), next.factor_dims().begin(), next.factor_dims().end());
    return out;
}

}  // namespace

TensorFactorization::TensorFactorization(std::vector<std::size_t> factor_dims)
    : factor_dims_(std::move(factor_dims)), total_dim_(1) {
    if (factor_dims_.empty()) {
        throw EmptyTensorError("tensor factorization needs at least one factor");
    }
    for (auto d : factor_dims_) {
        if (d == 0) {
            throw DimensionError("tensor factor of dimension 0");
        }
        total_dim_ *= d;
    }
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(CVector amplitudes)
    : StateVector(amplitudes, TensorFactorization::single(static_cast<std::size_t>(amplitudes.size()))) {}

StateVector::StateVector(CVector amplitudes, TensorFactorization factorization)
    : amplitudes_(std::move(amplitudes)), factorization_(std::move(factorization)) {
    if (amplitudes_.size() == 0) {
        throw DimensionError("state vector of dimension 0");
    }
    check_factorization(factorization_, dim());
}

StateVector::StateVector(std::span<const Complex> amplitudes)
    : StateVector(CVector(Eigen::Map<const CVector>(amplitudes.data(),
                                                    static_cast<Eigen::Index>(amplitudes.size())))) {}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(std::span<const Complex>(amplitudes.begin(), amplitudes.size())) {}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionError("basis index " + std::to_string(index) + " out of range for dimension " +
                             std::to_string(dim));
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

StateVector StateVector::zero(std::size_t dim) {
    return StateVector(CVector::Zero(static_cast<Eigen::Index>(dim)));
}

bool StateVector::is_normalized(double tolerance) const {
    return std::abs(squared_norm() - 1.0) <= tolerance;
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw NormalizationError("cannot normalize the zero vector");
    }
    return StateVector(amplitudes_ / n, factorization_);
}

// ---------------------------------------------------------------------------
// Projector

Projector::Projector(CMatrix matrix)
    : Projector(matrix, TensorFactorization::single(static_cast<std::size_t>(matrix.rows()))) {}

Projector::Projector(CMatrix matrix, TensorFactorization factorization)
    : matrix_(std::move(matrix)), factorization_(std::move(factorization)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw DimensionError("projector matrix must be square and nonempty");
    }
    check_factorization(factorization_, dim());
    const double herm = max_abs_diff(matrix_, matrix_.adjoint());
    if (herm > kOperatorTolerance) {
        throw DomainError("projector is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const double idem = max_abs_diff(matrix_ * matrix_, matrix_);
    if (idem > kOperatorTolerance) {
        throw DomainError("projector is not idempotent (deviation " + std::to_string(idem) + ")");
    }
}

Projector Projector::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return Projector(CMatrix::Identity(n, n));
}

Projector Projector::zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return Projector(CMatrix::Zero(n, n));
}

Projector Projector::basis(std::size_t dim, std::span<const std::size_t> indices) {
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix m = CMatrix::Zero(n, n);
    for (auto i : indices) {
        if (i >= dim) {
            throw DimensionError("basis index " + std::to_string(i) + " out of range for dimension " +
                                 std::to_string(dim));
        }
        const auto k = static_cast<Eigen::Index>(i);
        if (m(k, k) != 0.0) {
            throw DegenerateSpanError("basis index " + std::to_string(i) + " listed twice");
        }
        m(k, k) = 1.0;
    }
    return Projector(std::move(m));
}

std::size_t Projector::rank() const {
    return static_cast<std::size_t>(std::llround(matrix_.trace().real()));
}

// ---------------------------------------------------------------------------
// UnitaryMap

UnitaryMap::UnitaryMap(CMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw DimensionError("unitary matrix must be square and nonempty");
    }
    const auto n = matrix_.rows();
    const double dev = max_abs_diff(matrix_.adjoint() * matrix_, CMatrix::Identity(n, n));
    if (dev > kOperatorTolerance) {
        throw DomainError("matrix is not unitary (deviation " + std::to_string(dev) + ")");
    }
}

UnitaryMap UnitaryMap::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return UnitaryMap(CMatrix::Identity(n, n));
}

StateVector UnitaryMap::apply(const StateVector& v) const {
    require_same_dim("unitary apply", dim(), v.dim());
    return StateVector(matrix_ * v.amplitudes(), v.factorization());
}

// ---------------------------------------------------------------------------
// Operations

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

Complex inner_product(const StateVector& u, const StateVector& v) {
    require_same_dim("inner_product", u.dim(), v.dim());
    return u.amplitudes().dot(v.amplitudes());  // Eigen's dot conjugates the left operand.
}

bool same_ray(const StateVector& u, const StateVector& v, double tolerance) {
    require_normalized("same_ray", u);
    require_normalized("same_ray", v);
    return std::abs(std::abs(inner_product(u, v)) - 1.0) <= tolerance;
}

Projector projector_from_span(std::span<const StateVector> vectors) {
    if (vectors.empty()) {
        throw DegenerateSpanError("projector_from_span: empty vector list");
    }
    const std::size_t dim = vectors.front().dim();
    std::vector<CVector> basis;
    basis.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        require_same_dim("projector_from_span", dim, vectors[i].dim());
        // Modified Gram-Schmidt, applied twice for stability.
        CVector w = vectors[i].amplitudes();
        const double scale = w.norm();
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                w -= q.dot(w) * q;
            }
        }
        const double residual = w.norm();
        if (scale == 0.0 || residual <= 1e-10 * std::max(1.0, scale)) {
            throw DegenerateSpanError("projector_from_span: vector " + std::to_string(i) +
                                      " is linearly dependent on the preceding ones");
        }
        basis.push_back(w / residual);
    }
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix m = CMatrix::Zero(n, n);
    for (const auto& q : basis) {
        m.noalias() += q * q.adjoint();
    }
    return Projector(std::move(m));
}

Projector ketbra(const StateVector& v) {
    return projector_from_span(std::span<const StateVector>(&v, 1));
}

StateVector apply_projector(const Projector& p, const StateVector& v) {
    require_same_dim("apply_projector", p.dim(), v.dim());
    return StateVector(p.matrix() * v.amplitudes(), v.factorization());
}

double born_probability(const StateVector& p, const Projector& projector) {
    require_same_dim("born_probability", projector.dim(), p.dim());
    require_normalized("born_probability", p);
    return (projector.matrix() * p.amplitudes()).squaredNorm();
}

Projector complement_projector(const Projector& p) {
    const auto n = static_cast<Eigen::Index>(p.dim());
    return Projector(CMatrix::Identity(n, n) - p.matrix(), p.factorization());
}

StateVector tensor_vectors(std::span<const StateVector> factors) {
    if (factors.empty()) {
        throw EmptyTensorError("tensor_vectors: empty factor list");
    }
    CVector acc = factors.front().amplitudes();
    auto dims = factors.front().factorization().factor_dims();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        CVector next = Eigen::kroneckerProduct(acc, factors[i].amplitudes()).eval();
        acc = std::move(next);
        dims = concat_factors(dims, factors[i].factorization());
    }
    return StateVector(std::move(acc), TensorFactorization(std::move(dims)));
}

Projector tensor_projectors(std::span<const Projector> factors) {
    if (factors.empty()) {
        throw EmptyTensorError("tensor_projectors: empty factor list");
    }
    CMatrix acc = factors.front().matrix();
    auto dims = factors.front().factorization().factor_dims();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        CMatrix next = Eigen::kroneckerProduct(acc, factors[i].matrix()).eval();
        acc = std::move(next);
        dims = concat_factors(dims, factors[i].factorization());
    }
    return Projector(std::move(acc), TensorFactorization(std::move(dims)));
}

UnitaryMap tensor_unitaries(std::span<const UnitaryMap> factors) {
    if (factors.empty()) {
        throw EmptyTensorError("tensor_unitaries: empty factor list");
    }
    CMatrix acc = factors.front().matrix();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        CMatrix next = Eigen::kroneckerProduct(acc, factors[i].matrix()).eval();
        acc = std::move(next);
    }
    return UnitaryMap(std::move(acc));
}

Projector conjugate(const Projector& p, const UnitaryMap& u) {
    require_same_dim("conjugate", p.dim(), u.dim());
    CMatrix m = u.matrix() * p.matrix() * u.matrix().adjoint();
    // Restore exact Hermiticity lost to rounding.
    CMatrix h = (0.5 * (m + m.adjoint())).eval();
    return Projector(std::move(h), p.factorization());
}

}  // namespace hms
