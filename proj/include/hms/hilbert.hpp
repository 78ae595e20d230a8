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

#ifndef HMS_HILBERT_HPP
#define HMS_HILBERT_HPP

// Dense finite-dimensional complex linear algebra: state vectors,
// orthogonal projectors, unitaries and their Kronecker products.
//
// Tensor products are big-endian: the first factor varies slowest, so the
// basis index of e_i (x) e_j with factor dims (d0, d1) is i * d1 + j.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hms/errors.hpp"

namespace hms {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// |<v|v> - 1| above this means "not a physical state".
inline constexpr double kNormTolerance = 1e-12;
/// Entrywise tolerance on Hermiticity, idempotence and unitarity.
inline constexpr double kOperatorTolerance = 1e-10;

/// The list of factor dimensions of a (possibly trivial) tensor product.
class TensorFactorization {
   public:
    explicit TensorFactorization(std::vector<std::size_t> factor_dims);
    static TensorFactorization single(std::size_t dim) { return TensorFactorization({dim}); }

    const std::vector<std::size_t>& factor_dims() const noexcept { return factor_dims_; }
    std::size_t total_dim() const noexcept { return total_dim_; }
    std::size_t num_factors() const noexcept { return factor_dims_.size(); }

    bool operator==(const TensorFactorization&) const = default;

   private:
    std::vector<std::size_t> factor_dims_;
    std::size_t total_dim_;
};

/// Amplitude vector. Not necessarily normalized; operations that need a
/// physical state check normalization themselves.
class StateVector {
   public:
    explicit StateVector(CVector amplitudes);
    StateVector(CVector amplitudes, TensorFactorization factorization);
    explicit StateVector(std::span<const Complex> amplitudes);
    StateVector(std::initializer_list<Complex> amplitudes);

    static StateVector basis(std::size_t dim, std::size_t index);
    static StateVector zero(std::size_t dim);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    const CVector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }
    const TensorFactorization& factorization() const noexcept { return factorization_; }

    double norm() const { return amplitudes_.norm(); }
    double squared_norm() const { return amplitudes_.squaredNorm(); }
    bool is_normalized(double tolerance = kNormTolerance) const;
    /// Returns v / |v|. Throws NormalizationError for the zero vector.
    StateVector normalized() const;

   private:
    CVector amplitudes_;
    TensorFactorization factorization_;
};

/// Hermitian idempotent matrix.
class Projector {
   public:
    /// Validates the projector invariants; throws DomainError otherwise.
    explicit Projector(CMatrix matrix);
    Projector(CMatrix matrix, TensorFactorization factorization);

    static Projector identity(std::size_t dim);
    static Projector zero(std::size_t dim);
    /// Diagonal projector onto the listed computational basis vectors.
    static Projector basis(std::size_t dim, std::span<const std::size_t> indices);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    const CMatrix& matrix() const noexcept { return matrix_; }
    const TensorFactorization& factorization() const noexcept { return factorization_; }
    /// Trace rounded to the nearest integer.
    std::size_t rank() const;

   private:
    CMatrix matrix_;
    TensorFactorization factorization_;
};

class UnitaryMap {
   public:
    /// Validates M^dagger M = I; throws DomainError otherwise.
    explicit UnitaryMap(CMatrix matrix);

    static UnitaryMap identity(std::size_t dim);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    const CMatrix& matrix() const noexcept { return matrix_; }

    StateVector apply(const StateVector& v) const;

   private:
    CMatrix matrix_;
};

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// <u|v>, conjugate-linear in u.
Complex inner_product(const StateVector& u, const StateVector& v);

/// True iff u and v span the same ray: ||<u|v>| - 1| <= tolerance.
/// Both must be normalized.
bool same_ray(const StateVector& u, const StateVector& v, double tolerance = kNormTolerance);

/// Orthogonal projector onto span(vectors). Throws DegenerateSpanError if the
/// vectors are (numerically) linearly dependent.
Projector projector_from_span(std::span<const StateVector> vectors);
Projector ketbra(const StateVector& v);

StateVector apply_projector(const Projector& p, const StateVector& v);

/// <p|P p>; p must be normalized.
double born_probability(const StateVector& p, const Projector& projector);

/// I - P.
Projector complement_projector(const Projector& p);

/// Kronecker products; throw EmptyTensorError on an empty list.
StateVector tensor_vectors(std::span<const StateVector> factors);
Projector tensor_projectors(std::span<const Projector> factors);
UnitaryMap tensor_unitaries(std::span<const UnitaryMap> factors);

/// U P U^dagger.
Projector conjugate(const Projector& p, const UnitaryMap& u);

}  // namespace hms

#endif  // HMS_HILBERT_HPP
