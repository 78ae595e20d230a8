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

#include "hms/hpo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hms {

namespace {

void require_same_support(const HomogeneousHistory& a, const HomogeneousHistory& b) {
    if (!(a.support() == b.support())) {
        throw SupportError("histories have different temporal supports");
    }
}

void require_same_slots(const HomogeneousHistory& a, const HomogeneousHistory& b) {
    require_same_support(a, b);
    if (!(a.factorization() == b.factorization())) {
        throw DimensionError("histories have different slot dimensions");
    }
}

void require_state_matches(const StateVector& p, const HomogeneousHistory& history) {
    if (!p.is_normalized()) {
        throw NormalizationError("initial state is not normalized");
    }
    for (std::size_t k = 0; k < history.size(); ++k) {
        if (history.projectors()[k].dim() != p.dim()) {
            throw DimensionError("slot " + std::to_string(k + 1) + " has dimension " +
                                 std::to_string(history.projectors()[k].dim()) + " but the state has " +
                                 std::to_string(p.dim()));
        }
    }
}

// (x)_k pi_k f_{k-1}: the image of a product vector under the history tensor.
StateVector apply_slotwise(const HomogeneousHistory& history, std::span<const StateVector> factors) {
    std::vector<StateVector> images;
    images.reserve(factors.size());
    for (std::size_t k = 0; k < factors.size(); ++k) {
        images.push_back(apply_projector(history.projectors()[k], factors[k]));
    }
    return tensor_vectors(images);
}

double product_expectation(const HomogeneousHistory& history, std::span<const StateVector> factors) {
    const StateVector raw = tensor_vectors(factors);
    const StateVector image = apply_slotwise(history, factors);
    return std::clamp(inner_product(raw, image).real(), 0.0, 1.0);
}

HomogeneousHistory with_projectors(const HomogeneousHistory& like, std::vector<Projector> projectors) {
    return HomogeneousHistory(like.support(), std::move(projectors));
}

}  // namespace

std::string_view to_string(Convention c) { return c == Convention::Lueders ? "lueders" : "literal"; }

std::string_view to_string(HistoryOutcome o) { return o == HistoryOutcome::A ? "A" : "not_A"; }

std::string_view to_string(HistoryForm f) {
    switch (f) {
        case HistoryForm::PureTensor:
            return "pure_tensor";
        case HistoryForm::Complement:
            return "complement";
        case HistoryForm::DisjointSum:
            return "disjoint_sum";
    }
    return "?";
}

Convention parse_convention(std::string_view name) {
    if (name == "lueders") return Convention::Lueders;
    if (name == "literal") return Convention::Literal;
    throw DomainError("unknown convention '" + std::string(name) + "'");
}

TemporalSupport::TemporalSupport(std::vector<double> times) : times_(std::move(times)) {
    if (times_.empty()) {
        throw DomainError("temporal support must contain at least one time");
    }
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!std::isfinite(times_[i])) {
            throw DomainError("temporal support contains a non-finite time");
        }
        if (i > 0 && !(times_[i] > times_[i - 1])) {
            throw DomainError("times must be strictly increasing (t_" + std::to_string(i + 1) +
                              " <= t_" + std::to_string(i) + ")");
        }
    }
}

HomogeneousHistory::HomogeneousHistory(TemporalSupport support, std::vector<Projector> projectors)
    : support_(std::move(support)), projectors_(std::move(projectors)) {
    if (projectors_.size() != support_.size()) {
        throw DimensionError("history has " + std::to_string(projectors_.size()) + " projectors for " +
                             std::to_string(support_.size()) + " times");
    }
}

TensorFactorization HomogeneousHistory::factorization() const {
    std::vector<std::size_t> dims;
    dims.reserve(projectors_.size());
    for (const auto& p : projectors_) {
        dims.push_back(p.dim());
    }
    return TensorFactorization(std::move(dims));
}

InhomogeneousHistory::InhomogeneousHistory(std::vector<HomogeneousHistory> branches)
    : branches_(std::move(branches)) {
    if (branches_.empty()) {
        throw DomainError("an inhomogeneous history needs at least one branch");
    }
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        for (std::size_t j = i + 1; j < branches_.size(); ++j) {
            if (!are_disjoint(branches_[i], branches_[j])) {
                throw DisjointnessError("branches " + std::to_string(i) + " and " + std::to_string(j) +
                                            " are not disjoint",
                                        i, j);
            }
        }
    }
}

// ---------------------------------------------------------------------------

HistoryProjector hpo_projector(const HomogeneousHistory& history) {
    return {tensor_projectors(history.projectors()), HistoryForm::PureTensor};
}

HistoryProjector hpo_negation(const HomogeneousHistory& history) {
    return {complement_projector(tensor_projectors(history.projectors())), HistoryForm::Complement};
}

bool are_disjoint(const HomogeneousHistory& a, const HomogeneousHistory& b) {
    require_same_slots(a, b);
    // The largest entry of a Kronecker product is the product of the
    // factors' largest entries, so the slotwise products suffice.
    double max_entry = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const CMatrix prod = a.projectors()[k].matrix() * b.projectors()[k].matrix();
        max_entry *= prod.cwiseAbs().maxCoeff();
    }
    return max_entry <= kOperatorTolerance;
}

HistoryProjector disjoint_or(std::span<const HomogeneousHistory> branches) {
    if (branches.empty()) {
        throw EmptyTensorError("disjoint_or: empty branch list");
    }
    for (std::size_t i = 0; i < branches.size(); ++i) {
        for (std::size_t j = i + 1; j < branches.size(); ++j) {
            if (!are_disjoint(branches[i], branches[j])) {
                throw DisjointnessError("disjoint_or: branches " + std::to_string(i) + " and " +
                                            std::to_string(j) + " are not disjoint",
                                        i, j);
            }
        }
    }
    const Projector first = tensor_projectors(branches.front().projectors());
    CMatrix sum = first.matrix();
    for (std::size_t i = 1; i < branches.size(); ++i) {
        sum += tensor_projectors(branches[i].projectors()).matrix();
    }
    return {Projector(std::move(sum), first.factorization()), HistoryForm::DisjointSum};
}

HistoryProjector disjoint_or(const InhomogeneousHistory& history) { return disjoint_or(history.branches()); }

bool downset_contains(const HomogeneousHistory& candidate, std::span<const HomogeneousHistory> family) {
    for (const auto& member : family) {
        require_same_slots(candidate, member);
    }
    for (const auto& member : family) {
        bool below = true;
        for (std::size_t k = 0; k < candidate.size() && below; ++k) {
            const CMatrix& c = candidate.projectors()[k].matrix();
            below = max_abs_diff(member.projectors()[k].matrix() * c, c) <= kOperatorTolerance;
        }
        if (below) {
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------

PseudoProjection pseudo_project(const StateVector& p, const HomogeneousHistory& history) {
    require_state_matches(p, history);
    std::vector<StateVector> chain{p};
    std::vector<double> survival;
    bool annihilated = false;
    for (std::size_t k = 1; k < history.size(); ++k) {
        const StateVector projected = apply_projector(history.projectors()[k - 1], chain.back());
        const double s = projected.squared_norm();
        survival.push_back(s);
        if (s <= kZeroSurvival) {
            annihilated = true;
            break;
        }
        chain.push_back(projected.normalized());
    }
    if (annihilated) {
        const auto f = history.factorization();
        StateVector zero(CVector::Zero(static_cast<Eigen::Index>(f.total_dim())), f);
        return {std::move(chain), std::move(zero), std::move(survival), true};
    }
    StateVector tensor = tensor_vectors(chain);
    return {std::move(chain), std::move(tensor), std::move(survival), false};
}

double history_probability(const StateVector& p, const HomogeneousHistory& history, Convention convention) {
    if (convention == Convention::Lueders) {
        const PseudoProjection pp = pseudo_project(p, history);
        if (pp.annihilated) {
            return 0.0;
        }
        return product_expectation(history, pp.chain);
    }
    require_state_matches(p, history);
    std::vector<StateVector> raw{p};
    for (std::size_t k = 1; k < history.size(); ++k) {
        raw.push_back(apply_projector(history.projectors()[k - 1], raw.back()));
    }
    return product_expectation(history, raw);
}

double inhomogeneous_probability(const StateVector& p, const InhomogeneousHistory& history,
                                 Convention convention) {
    double total = 0.0;
    for (const auto& branch : history.branches()) {
        total += history_probability(p, branch, convention);
    }
    return total;
}

Dyadic history_probability_as_dyadic(double probability) {
    if (probability > 1.0 && probability <= 1.0 + 1e-12) {
        probability = 1.0;
    } else if (probability < 0.0 && probability >= -1e-12) {
        probability = 0.0;
    }
    if (std::isfinite(probability)) {
        const double scale = std::ldexp(1.0, kSnapBits);
        const double nearest = std::round(probability * scale);
        if (std::abs(probability * scale - nearest) <= kSnapTolerance * scale) {
            probability = nearest / scale;
        }
    }
    return Dyadic::from_double(probability);
}

HistoryOutcome history_hms_outcome(const StateVector& p, const HomogeneousHistory& history, int lambda,
                                   Convention convention) {
    const double probability = history_probability(p, history, convention);
    return dyadic_outcome(history_probability_as_dyadic(probability), lambda) == Outcome::Alpha
               ? HistoryOutcome::A
               : HistoryOutcome::NotA;
}

std::optional<std::vector<StateVector>> trajectory(const StateVector& p, const HomogeneousHistory& history,
                                                   HistoryOutcome outcome) {
    require_state_matches(p, history);
    if (outcome == HistoryOutcome::NotA) {
        return std::nullopt;
    }
    std::vector<StateVector> states;
    states.reserve(history.size());
    StateVector current = p;
    for (std::size_t k = 0; k < history.size(); ++k) {
        const StateVector projected = apply_projector(history.projectors()[k], current);
        if (projected.squared_norm() <= kZeroSurvival) {
            throw InfeasibleError("history has zero probability: slot " + std::to_string(k + 1) +
                                  " annihilates the state, no trajectory exists");
        }
        current = projected.normalized();
        states.push_back(current);
    }
    return states;
}

HomogeneousHistory conjugate_history(const HomogeneousHistory& history, std::span<const UnitaryMap> unitaries) {
    if (unitaries.size() != history.size()) {
        throw DimensionError("conjugate_history: " + std::to_string(unitaries.size()) + " unitaries for " +
                             std::to_string(history.size()) + " slots");
    }
    std::vector<Projector> out;
    out.reserve(history.size());
    for (std::size_t k = 0; k < history.size(); ++k) {
        out.push_back(conjugate(history.projectors()[k], unitaries[k]));
    }
    return with_projectors(history, std::move(out));
}

InhomogeneousHistory negation_branches(const HomogeneousHistory& history, NegationOrder order) {
    const std::size_t n = history.size();
    std::vector<HomogeneousHistory> branches;
    branches.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Projector> slots;
        slots.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            const Projector& pj = history.projectors()[j];
            if (j == k) {
                slots.push_back(complement_projector(pj));
            } else if ((order == NegationOrder::FirstFailure) == (j < k)) {
                slots.push_back(pj);
            } else {
                slots.push_back(Projector::identity(pj.dim()));
            }
        }
        branches.push_back(with_projectors(history, std::move(slots)));
    }
    return InhomogeneousHistory(std::move(branches));
}

}  // namespace hms
