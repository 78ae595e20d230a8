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

#ifndef HMS_HPO_HPP
#define HMS_HPO_HPP

// History projection operators.
//
// A homogeneous history (pi_1 at t_1, ..., pi_n at t_n) is represented by the
// pure tensor pi_1 (x) ... (x) pi_n on n copies of the system space. Its
// negation is I minus that tensor and a disjunction of pairwise orthogonal
// histories is the sum of their tensors.
//
// The pseudo-projection of a state p along a history is the tensor of the
// successive projected states p (x) q_1 (x) ... (x) q_{n-1}. Two readings of
// the history probability <p_A | pi_A p_A> are provided:
//   Lueders  the chain is renormalized at every step, giving the sequential
//            measurement probability |pi_n ... pi_1 p|^2;
//   Literal  the chain is left unnormalized, giving
//            prod_k |pi_k ... pi_1 p|^2.
// They agree for single-time histories.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hms/dichotomic.hpp"
#include "hms/hilbert.hpp"

namespace hms {

/// Squared norms at or below this count as an annihilated chain.
inline constexpr double kZeroSurvival = 1e-24;

enum class Convention : std::uint8_t { Lueders, Literal };
enum class HistoryOutcome : std::uint8_t { A, NotA };
enum class HistoryForm : std::uint8_t { PureTensor, Complement, DisjointSum };

std::string_view to_string(Convention c);
std::string_view to_string(HistoryOutcome o);
std::string_view to_string(HistoryForm f);
/// Parses "lueders" / "literal"; throws DomainError otherwise.
Convention parse_convention(std::string_view name);

/// Strictly increasing, nonempty list of times.
class TemporalSupport {
   public:
    explicit TemporalSupport(std::vector<double> times);
    const std::vector<double>& times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }
    bool operator==(const TemporalSupport&) const = default;

   private:
    std::vector<double> times_;
};

class HomogeneousHistory {
   public:
    HomogeneousHistory(TemporalSupport support, std::vector<Projector> projectors);

    const TemporalSupport& support() const noexcept { return support_; }
    const std::vector<Projector>& projectors() const noexcept { return projectors_; }
    std::size_t size() const noexcept { return projectors_.size(); }
    /// Dimension of each slot, in time order.
    TensorFactorization factorization() const;

   private:
    TemporalSupport support_;
    std::vector<Projector> projectors_;
};

struct HistoryProjector {
    Projector projector;
    HistoryForm form;

    const TensorFactorization& factorization() const noexcept { return projector.factorization(); }
    const CMatrix& matrix() const noexcept { return projector.matrix(); }
};

/// Pairwise orthogonal homogeneous branches over one temporal support. The
/// branch list is a chosen decomposition: different decompositions of the
/// same projector are different procedures.
class InhomogeneousHistory {
   public:
    /// Throws SupportError, DimensionError or DisjointnessError.
    explicit InhomogeneousHistory(std::vector<HomogeneousHistory> branches);

    const std::vector<HomogeneousHistory>& branches() const noexcept { return branches_; }
    const TemporalSupport& support() const noexcept { return branches_.front().support(); }

   private:
    std::vector<HomogeneousHistory> branches_;
};

struct PseudoProjection {
    /// q_0 = p, q_k = normalize(pi_k q_{k-1}), k < n. Stops early if the
    /// chain is annihilated.
    std::vector<StateVector> chain;
    /// q_0 (x) ... (x) q_{n-1}; the zero vector if the chain was annihilated.
    StateVector tensor;
    /// |pi_k q_{k-1}|^2 for each computed step k = 1 .. n-1.
    std::vector<double> survival;
    bool annihilated = false;
};

HistoryProjector hpo_projector(const HomogeneousHistory& history);
HistoryProjector hpo_negation(const HomogeneousHistory& history);

/// True iff the two pure tensors are orthogonal. Throws SupportError if the
/// supports differ and DimensionError if slot dimensions differ.
bool are_disjoint(const HomogeneousHistory& a, const HomogeneousHistory& b);

/// Sum of the branch tensors; throws DisjointnessError naming the first
/// overlapping pair.
HistoryProjector disjoint_or(std::span<const HomogeneousHistory> branches);
HistoryProjector disjoint_or(const InhomogeneousHistory& history);

/// True iff some member of `family` dominates `candidate` slot by slot.
bool downset_contains(const HomogeneousHistory& candidate, std::span<const HomogeneousHistory> family);

PseudoProjection pseudo_project(const StateVector& p, const HomogeneousHistory& history);

double history_probability(const StateVector& p, const HomogeneousHistory& history,
                           Convention convention = Convention::Lueders);

/// Sum of the branch probabilities, each branch with its own pseudo-projection.
double inhomogeneous_probability(const StateVector& p, const InhomogeneousHistory& history,
                                 Convention convention = Convention::Lueders);

/// Greedy dyadic outcome of the history probability at lambda.
HistoryOutcome history_hms_outcome(const StateVector& p, const HomogeneousHistory& history, int lambda,
                                   Convention convention = Convention::Lueders);

/// Computed probabilities within this distance of a multiple of
/// 2^-kSnapBits are moved onto it before a discrete rule sees them.
inline constexpr double kSnapTolerance = 1e-13;
inline constexpr int kSnapBits = 24;

/// Maps a computed probability to the greedy rule's input. Overshoot of at
/// most 1e-12 outside [0,1] is clamped, and values within kSnapTolerance of
/// a short dyadic are snapped to it: the discrete rules are discontinuous
/// there, and rounding noise would otherwise flip outcomes (|+> built from
/// 1/sqrt(2) gives 0.4999999999999999 for P0).
Dyadic history_probability_as_dyadic(double probability);

/// Post-measurement states (q_1, ..., q_n) when the history was affirmed;
/// empty for NotA. Throws InfeasibleError if A is requested but the chain is
/// annihilated.
std::optional<std::vector<StateVector>> trajectory(const StateVector& p, const HomogeneousHistory& history,
                                                   HistoryOutcome outcome);

/// Slotwise U_k pi_k U_k^dagger.
HomogeneousHistory conjugate_history(const HomogeneousHistory& history, std::span<const UnitaryMap> unitaries);

enum class NegationOrder : std::uint8_t {
    /// Branch k: pi_1 .. pi_{k-1}, not pi_k, then identities.
    FirstFailure,
    /// Branch k: identities, not pi_k, then pi_{k+1} .. pi_n.
    LastFailure,
};

/// A disjoint decomposition of the negation of `history`. Both orders sum to
/// hpo_negation(history) but prescribe different state changes.
InhomogeneousHistory negation_branches(const HomogeneousHistory& history, NegationOrder order);

}  // namespace hms

#endif  // HMS_HPO_HPP
