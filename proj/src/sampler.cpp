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

#include "hms/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

namespace hms {

namespace {

void require_trials(std::uint64_t n) {
    if (n < 1) {
        throw DomainError("number of trials must be >= 1");
    }
}

void require_lambda_max(int lambda_max) {
    if (lambda_max < 1 || lambda_max > kMaxExactLambda) {
        throw DomainError("lambda_max must lie in [1, " + std::to_string(kMaxExactLambda) + "], got " +
                          std::to_string(lambda_max));
    }
}

// Outcome for every lambda in [1, lambda_max]; index 0 unused.
std::vector<Outcome> discrete_table(const Dyadic& probability, int lambda_max, DyadicRule rule) {
    std::vector<Outcome> table(static_cast<std::size_t>(lambda_max) + 1, Outcome::NotAlpha);
    if (rule == DyadicRule::Greedy) {
        GreedyExpansion expansion(probability);
        for (int lambda = 1; lambda <= lambda_max; ++lambda) {
            table[static_cast<std::size_t>(lambda)] = expansion.next();
        }
    } else {
        const Dyadic t = probability.complement();
        for (int lambda = 1; lambda <= lambda_max; ++lambda) {
            table[static_cast<std::size_t>(lambda)] = dyadic_outcome_geometric(t, lambda);
        }
    }
    return table;
}

// Counts trials i in [0, n) with is_alpha(i), split into contiguous chunks.
std::uint64_t parallel_count(std::uint64_t n, unsigned threads,
                             const std::function<bool(std::uint64_t)>& is_alpha) {
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    const auto workers = static_cast<std::uint64_t>(std::min<std::uint64_t>(threads, n));
    std::vector<std::uint64_t> counts(workers, 0);
    auto work = [&](std::uint64_t w) {
        const std::uint64_t begin = n * w / workers;
        const std::uint64_t end = n * (w + 1) / workers;
        std::uint64_t c = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            c += is_alpha(i) ? 1 : 0;
        }
        counts[w] = c;
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
    }
    std::uint64_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    return total;
}

FrequencySummary summarize(std::uint64_t count, std::uint64_t n, double expected) {
    return {n, count, expected, z_score(count, n, expected)};
}

FrequencySummary run_discrete(const Dyadic& probability, double expected, DyadicRule rule,
                              std::uint64_t n_trials, const RandomSource& base, const SamplerOptions& options) {
    require_trials(n_trials);
    require_lambda_max(options.lambda_max);
    const auto table = discrete_table(probability, options.lambda_max, rule);
    const std::uint64_t count = parallel_count(n_trials, options.threads, [&](std::uint64_t i) {
        RandomSource rng = base.for_trial(i);
        return table[static_cast<std::size_t>(draw_lambda(rng, options.lambda_max).lambda())] == Outcome::Alpha;
    });
    return summarize(count, n_trials, expected);
}

}  // namespace

std::string_view to_string(DichotomicModel m) {
    switch (m) {
        case DichotomicModel::Continuous:
            return "continuous";
        case DichotomicModel::Greedy:
            return "greedy";
        case DichotomicModel::Geometric:
            return "geometric";
    }
    return "?";
}

DichotomicModel parse_dichotomic_model(std::string_view name) {
    if (name == "continuous") return DichotomicModel::Continuous;
    if (name == "greedy") return DichotomicModel::Greedy;
    if (name == "geometric") return DichotomicModel::Geometric;
    throw DomainError("unknown model '" + std::string(name) + "'");
}

double z_score(std::uint64_t count_alpha, std::uint64_t n_trials, double expected_p) {
    const double n = static_cast<double>(n_trials);
    const double freq = static_cast<double>(count_alpha) / n;
    const double var = expected_p * (1.0 - expected_p);
    if (var <= 0.0) {
        const double diff = freq - expected_p;
        if (diff == 0.0) {
            return 0.0;
        }
        return diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    return (freq - expected_p) * std::sqrt(n) / std::sqrt(var);
}

double dichotomic_expected(DichotomicModel model, double value) {
    if (model == DichotomicModel::Greedy) {
        return Dyadic::from_double(value).to_double();
    }
    return continuous_probability(DiagonalCoordinate(value));
}

FrequencySummary run_dichotomic(DichotomicModel model, double value, std::uint64_t n_trials,
                                const RandomSource& base, const SamplerOptions& options) {
    switch (model) {
        case DichotomicModel::Greedy:
            return run_discrete(Dyadic::from_double(value), value, DyadicRule::Greedy, n_trials, base, options);
        case DichotomicModel::Geometric: {
            const DiagonalCoordinate t(value);
            return run_discrete(Dyadic::from_double(t.value()).complement(), continuous_probability(t),
                                DyadicRule::Geometric, n_trials, base, options);
        }
        case DichotomicModel::Continuous: {
            require_trials(n_trials);
            const DiagonalCoordinate t(value);
            const std::uint64_t count = parallel_count(n_trials, options.threads, [&](std::uint64_t i) {
                RandomSource rng = base.for_trial(i);
                return continuous_outcome(t, draw_uniform(rng)) == Outcome::Alpha;
            });
            return summarize(count, n_trials, continuous_probability(t));
        }
    }
    throw DomainError("unknown model");
}

std::vector<TrialRecord> dichotomic_trials(DichotomicModel model, double value, std::uint64_t first,
                                           std::uint64_t count, const RandomSource& base,
                                           const SamplerOptions& options) {
    require_lambda_max(options.lambda_max);
    std::vector<TrialRecord> out;
    out.reserve(count);
    if (model == DichotomicModel::Continuous) {
        const DiagonalCoordinate t(value);
        for (std::uint64_t i = first; i < first + count; ++i) {
            RandomSource rng = base.for_trial(i);
            const double u = draw_uniform(rng);
            out.push_back({i, u, continuous_outcome(t, u)});
        }
        return out;
    }
    const bool greedy = model == DichotomicModel::Greedy;
    const Dyadic probability =
        greedy ? Dyadic::from_double(value) : Dyadic::from_double(DiagonalCoordinate(value).value()).complement();
    const auto table =
        discrete_table(probability, options.lambda_max, greedy ? DyadicRule::Greedy : DyadicRule::Geometric);
    for (std::uint64_t i = first; i < first + count; ++i) {
        RandomSource rng = base.for_trial(i);
        const DiscreteContext ctx = draw_lambda(rng, options.lambda_max);
        out.push_back({i, ctx, table[static_cast<std::size_t>(ctx.lambda())]});
    }
    return out;
}

FrequencySummary run_history(const StateVector& p, const HomogeneousHistory& history, Convention convention,
                             std::uint64_t n_trials, const RandomSource& base, const SamplerOptions& options) {
    const Dyadic probability = history_probability_as_dyadic(history_probability(p, history, convention));
    return run_discrete(probability, probability.to_double(), DyadicRule::Greedy, n_trials, base, options);
}

FrequencySummary run_inhomogeneous(const StateVector& p, const InhomogeneousHistory& history,
                                   Convention convention, std::uint64_t n_trials, const RandomSource& base,
                                   const SamplerOptions& options) {
    const Dyadic probability = history_probability_as_dyadic(inhomogeneous_probability(p, history, convention));
    return run_discrete(probability, probability.to_double(), DyadicRule::Greedy, n_trials, base, options);
}

// ---------------------------------------------------------------------------

std::vector<int> lambda_preimage(double probability, Outcome outcome, int max_lambda, DyadicRule rule) {
    require_lambda_max(max_lambda);
    const auto table = discrete_table(Dyadic::from_double(probability), max_lambda, rule);
    std::vector<int> out;
    for (int lambda = 1; lambda <= max_lambda; ++lambda) {
        if (table[static_cast<std::size_t>(lambda)] == outcome) {
            out.push_back(lambda);
        }
    }
    return out;
}

Dyadic lambda_measure(const std::vector<int>& lambdas) {
    Dyadic sum;
    for (int lambda : lambdas) {
        sum += Dyadic::pow2(lambda);
    }
    return sum;
}

ExactCheckReport exact_check(double probability, int max_lambda, DyadicRule rule) {
    const Dyadic p = Dyadic::from_double(probability);
    const Dyadic sum = dyadic_partial_sum_exact(p, max_lambda, rule);
    ExactCheckReport report;
    report.partial_sum = sum.to_double();
    report.tail_mass = tail_mass(max_lambda);
    if (sum > p) {
        report.abs_error = -(sum - p).to_double();
        report.bound_satisfied = false;
        return report;
    }
    const Dyadic error = p - sum;
    report.abs_error = error.to_double();
    report.bound_satisfied = error <= Dyadic::pow2(max_lambda);
    return report;
}

double tail_mass(int max_lambda) {
    require_lambda_max(max_lambda);
    return Dyadic::pow2(max_lambda).to_double();
}

}  // namespace hms
