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

#ifndef HMS_SAMPLER_HPP
#define HMS_SAMPLER_HPP

// Monte Carlo runs of the deterministic models and exact enumeration over
// lambda.
//
// Trial i draws its context from base.for_trial(i), so a run's counts do not
// depend on how trials are split across threads.

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "hms/dichotomic.hpp"
#include "hms/hpo.hpp"
#include "hms/random.hpp"

namespace hms {

inline constexpr int kDefaultLambdaMax = 60;
inline constexpr std::uint64_t kDefaultSeed = 0;

enum class DichotomicModel : std::uint8_t { Continuous, Greedy, Geometric };

std::string_view to_string(DichotomicModel m);
/// Parses "continuous" / "greedy" / "geometric"; throws DomainError otherwise.
DichotomicModel parse_dichotomic_model(std::string_view name);

struct TrialRecord {
    std::uint64_t trial_index = 0;
    /// Uniform coordinate u for the continuous model, lambda otherwise.
    std::variant<double, DiscreteContext> context;
    /// For histories Alpha stands for A.
    Outcome outcome = Outcome::NotAlpha;

    bool operator==(const TrialRecord&) const = default;
};

struct FrequencySummary {
    std::uint64_t n_trials = 0;
    std::uint64_t count_alpha = 0;
    double expected_p = 0.0;
    double z_score = 0.0;

    double frequency() const { return static_cast<double>(count_alpha) / static_cast<double>(n_trials); }
    bool operator==(const FrequencySummary&) const = default;
};

/// (freq - p) sqrt(n) / sqrt(p (1 - p)). For p in {0, 1} the score is 0 when
/// the count matches exactly and +-infinity otherwise.
double z_score(std::uint64_t count_alpha, std::uint64_t n_trials, double expected_p);

struct SamplerOptions {
    int lambda_max = kDefaultLambdaMax;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// `value` is the probability P for the greedy model and the diagonal
/// coordinate t for the continuous and geometric models.
FrequencySummary run_dichotomic(DichotomicModel model, double value, std::uint64_t n_trials,
                                const RandomSource& base, const SamplerOptions& options = {});

/// Records for trials [first, first + count) of the same run.
std::vector<TrialRecord> dichotomic_trials(DichotomicModel model, double value, std::uint64_t first,
                                           std::uint64_t count, const RandomSource& base,
                                           const SamplerOptions& options = {});

/// Alpha probability of the model at `value`.
double dichotomic_expected(DichotomicModel model, double value);

FrequencySummary run_history(const StateVector& p, const HomogeneousHistory& history, Convention convention,
                             std::uint64_t n_trials, const RandomSource& base,
                             const SamplerOptions& options = {});

/// Samples the disjunction of the branches: the greedy rule is applied to the
/// summed branch probability.
FrequencySummary run_inhomogeneous(const StateVector& p, const InhomogeneousHistory& history,
                                   Convention convention, std::uint64_t n_trials, const RandomSource& base,
                                   const SamplerOptions& options = {});

/// All lambda <= L whose outcome under `rule` is `outcome`, ascending.
std::vector<int> lambda_preimage(double probability, Outcome outcome, int max_lambda, DyadicRule rule);

/// Exact mass sum of 2^-lambda over the listed lambdas.
Dyadic lambda_measure(const std::vector<int>& lambdas);

struct ExactCheckReport {
    double partial_sum = 0.0;
    /// P - partial_sum, correctly rounded from the exact difference.
    double abs_error = 0.0;
    /// 0 <= P - partial_sum <= 2^-L, decided exactly.
    bool bound_satisfied = false;
    /// Mass 2^-L of the contexts lambda > L left out of the enumeration.
    double tail_mass = 0.0;
};

ExactCheckReport exact_check(double probability, int max_lambda, DyadicRule rule);

/// 2^-L.
double tail_mass(int max_lambda);

}  // namespace hms

#endif  // HMS_SAMPLER_HPP
