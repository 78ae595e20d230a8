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

#include "hms/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "hms/dichotomic.hpp"
#include "hms/errors.hpp"
#include "hms/random.hpp"
#include "hms/sampler.hpp"

namespace hms::cli {

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct CsvCell {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
};

struct JsonCell {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(const std::string& s) const { return s; }
    nlohmann::json operator()(double v) const {
        if (!std::isfinite(v)) return format_double(v);
        return v;
    }
    nlohmann::json operator()(std::int64_t v) const { return v; }
    nlohmann::json operator()(std::uint64_t v) const { return v; }
    nlohmann::json operator()(bool v) const { return v; }
};

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Usage-level failures detected after option parsing.
class UsageError : public Error {
   public:
    using Error::Error;
};

struct CommandResult {
    Report report;
    bool check_failed = false;
};

class Runner {
   public:
    Runner(const RunConfig& config, std::istream& in, std::ostream& err) : cfg_(config), in_(in), err_(err) {}

    CommandResult run() {
        if (cfg_.subcommand == "verify") return verify();
        if (cfg_.subcommand == "sample") return sample();
        if (cfg_.subcommand == "sphere") return sphere();
        if (cfg_.subcommand == "history") return history();
        return parse_check();
    }

   private:
    std::string source_name() const {
        return *cfg_.input_path == "-" ? std::string("<stdin>") : *cfg_.input_path;
    }

    edl::Experiment load() {
        if (!cfg_.input_path) throw UsageError("--input is required");
        std::string text;
        if (*cfg_.input_path == "-") {
            std::ostringstream buf;
            buf << in_.rdbuf();
            text = buf.str();
        } else {
            std::ifstream file(*cfg_.input_path, std::ios::binary);
            if (!file) throw UsageError("cannot open '" + *cfg_.input_path + "'");
            std::ostringstream buf;
            buf << file.rdbuf();
            text = buf.str();
        }
        edl::Experiment exp = edl::load_experiment(text);
        for (const auto& w : exp.warnings) {
            err_ << source_name() << ":" << w.pos.line << ":" << w.pos.column << ": warning: " << w.message << "\n";
        }
        return exp;
    }

    RandomSource source(std::uint64_t stream) const { return RandomSource(cfg_.seed, stream); }

    SamplerOptions options() const { return {cfg_.lambda_max, cfg_.threads}; }

    void require_trials(std::uint64_t minimum) const {
        if (cfg_.trials < minimum) {
            throw UsageError("--trials must be >= " + std::to_string(minimum));
        }
    }

    bool z_fails(double z) const { return !(std::abs(z) < kZThreshold); }

    // verify ---------------------------------------------------------------

    CommandResult verify() {
        struct Target {
            std::string name;
            double p;
        };
        std::vector<Target> targets;
        if (cfg_.p && cfg_.input_path) throw UsageError("verify takes either --p or --input, not both");
        if (cfg_.p) {
            targets.push_back({"p", *cfg_.p});
        } else if (cfg_.input_path) {
            const edl::Experiment exp = load();
            for (const auto& [sname, s] : exp.states) {
                for (const auto& [pname, pr] : exp.projectors) {
                    if (pr.space == s.space) {
                        targets.push_back(
                            {"born:" + sname + ":" + pname, clamp_probability(born_probability(s.state, pr.projector))});
                    }
                }
                for (const auto& [hname, h] : exp.histories) {
                    if (slots_match(s.state, h.history)) {
                        targets.push_back({"history:" + sname + ":" + hname,
                                           clamp_probability(history_probability(s.state, h.history, cfg_.convention))});
                    }
                }
                for (const auto& [oname, o] : exp.orhistories) {
                    if (slots_match(s.state, o.history.branches().front())) {
                        targets.push_back(
                            {"orhistory:" + sname + ":" + oname,
                             clamp_probability(inhomogeneous_probability(s.state, o.history, cfg_.convention))});
                    }
                }
            }
        } else {
            throw UsageError("verify needs --p or --input");
        }

        CommandResult result;
        result.report.command = "verify";
        result.report.columns = {"target", "rule", "P", "L", "partial_sum", "abs_error", "bound_satisfied",
                                 "tail_mass"};
        for (const auto& target : targets) {
            for (DyadicRule rule : {DyadicRule::Greedy, DyadicRule::Geometric}) {
                const ExactCheckReport r = exact_check(target.p, cfg_.L, rule);
                result.report.rows.push_back({target.name, std::string(to_string(rule)), target.p,
                                              std::int64_t{cfg_.L}, r.partial_sum, r.abs_error, r.bound_satisfied,
                                              r.tail_mass});
                result.check_failed = result.check_failed || !r.bound_satisfied;
            }
        }
        return result;
    }

    static bool slots_match(const StateVector& s, const HomogeneousHistory& h) {
        for (const auto& pr : h.projectors()) {
            if (pr.dim() != s.dim()) return false;
        }
        return true;
    }

    static double clamp_probability(double p) { return history_probability_as_dyadic(p).to_double(); }

    // sample ---------------------------------------------------------------

    CommandResult sample() {
        require_trials(1);
        if (cfg_.model.empty()) throw UsageError("sample needs --model");
        const DichotomicModel model = parse_dichotomic_model(cfg_.model);
        double value = 0.0;
        if (model == DichotomicModel::Greedy) {
            if (!cfg_.p || cfg_.t) throw UsageError("the greedy model takes --p");
            value = *cfg_.p;
        } else {
            if (!cfg_.t || cfg_.p) throw UsageError("the " + std::string(to_string(model)) + " model takes --t");
            value = *cfg_.t;
        }
        const FrequencySummary s = run_dichotomic(model, value, cfg_.trials, source(0), options());

        CommandResult result;
        result.report.command = "sample";
        result.report.columns = {"model",   "value",       "lambda_max", "seed",   "n_trials",
                                 "count_alpha", "frequency", "expected_p", "z_score"};
        result.report.rows.push_back({std::string(to_string(model)), value, std::int64_t{cfg_.lambda_max}, cfg_.seed,
                                      s.n_trials, s.count_alpha, s.frequency(), s.expected_p, s.z_score});
        result.check_failed = z_fails(s.z_score);
        return result;
    }

    // sphere ---------------------------------------------------------------

    CommandResult sphere() {
        if (!cfg_.theta) throw UsageError("sphere needs --theta");
        const double theta = *cfg_.theta;
        if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
            throw DomainError("theta must lie in [0, pi], got " + format_double(theta));
        }
        const StateVector p = qubit_from_angles(theta, cfg_.phi);
        const std::size_t zero_index = 0;
        const double born = born_probability(p, Projector::basis(2, std::span(&zero_index, 1)));
        const DiagonalCoordinate t = diagonal_coordinate(bloch_of_qubit(p), BlochVector{0.0, 0.0, 1.0});
        const double continuous = continuous_probability(t);
        const double greedy_sum = dyadic_partial_sum(clamp_probability(born), cfg_.L, DyadicRule::Greedy);
        const double geometric_sum =
            dyadic_partial_sum_exact(Dyadic::from_double(t.value()).complement(), cfg_.L, DyadicRule::Geometric)
                .to_double();

        CommandResult result;
        Report& r = result.report;
        r.command = "sphere";
        r.columns = {"quantity", "theta", "probability", "L", "n_trials", "count_alpha", "frequency", "z_score"};
        const std::monostate none;
        r.rows.push_back({std::string("born"), theta, born, none, none, none, none, none});
        r.rows.push_back({std::string("continuous"), theta, continuous, none, none, none, none, none});
        r.rows.push_back({std::string("greedy_partial_sum"), theta, greedy_sum, std::int64_t{cfg_.L}, none, none,
                          none, none});
        r.rows.push_back({std::string("geometric_partial_sum"), theta, geometric_sum, std::int64_t{cfg_.L}, none,
                          none, none, none});
        if (cfg_.trials > 0) {
            const struct {
                const char* label;
                DichotomicModel model;
                double value;
            } runs[] = {
                {"sampled_continuous", DichotomicModel::Continuous, t.value()},
                {"sampled_greedy", DichotomicModel::Greedy, clamp_probability(born)},
                {"sampled_geometric", DichotomicModel::Geometric, t.value()},
            };
            std::uint64_t stream = 0;
            for (const auto& run : runs) {
                const FrequencySummary s = run_dichotomic(run.model, run.value, cfg_.trials, source(stream++), options());
                r.rows.push_back({std::string(run.label), theta, s.expected_p, none, s.n_trials, s.count_alpha,
                                  s.frequency(), s.z_score});
                result.check_failed = result.check_failed || z_fails(s.z_score);
            }
        }
        return result;
    }

    // history --------------------------------------------------------------

    static std::string trajectory_json(const StateVector& p, const HomogeneousHistory& h) {
        try {
            const auto states = trajectory(p, h, HistoryOutcome::A);
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& s : *states) arr.push_back(vector_json(s));
            return arr.dump();
        } catch (const InfeasibleError&) {
            return "infeasible";
        }
    }

    void require_dims(const StateVector& s, const HomogeneousHistory& h, const std::string& name) const {
        if (!slots_match(s, h)) {
            throw DimensionError("state '" + cfg_.state + "' does not match the slot dimensions of '" + name + "'");
        }
    }

    CommandResult history() {
        require_trials(1);
        if (cfg_.name.empty() || cfg_.state.empty()) throw UsageError("history needs --name and --state");
        const edl::Experiment exp = load();
        const auto st = exp.states.find(cfg_.state);
        if (st == exp.states.end()) throw UsageError("unknown state '" + cfg_.state + "'");
        const StateVector& p = st->second.state;

        CommandResult result;
        Report& r = result.report;
        r.command = "history";
        r.columns = {"quantity", "branch",    "convention", "probability", "n_trials",
                     "count_alpha", "frequency", "z_score",    "trajectory"};
        const std::monostate none;
        const Convention conventions[] = {Convention::Lueders, Convention::Literal};
        auto probability_rows = [&](const std::string& branch, const HomogeneousHistory& h) {
            for (Convention c : conventions) {
                r.rows.push_back({std::string("probability"), branch, std::string(to_string(c)),
                                  history_probability(p, h, c), none, none, none, none, none});
            }
        };
        auto sampled_row = [&](const std::string& branch, Convention c, const FrequencySummary& s) {
            r.rows.push_back({std::string("sampled"), branch, std::string(to_string(c)), s.expected_p, s.n_trials,
                              s.count_alpha, s.frequency(), s.z_score, none});
            result.check_failed = result.check_failed || z_fails(s.z_score);
        };
        auto trajectory_row = [&](const std::string& branch, const HomogeneousHistory& h) {
            r.rows.push_back({std::string("trajectory"), branch, none, none, none, none, none, none,
                              trajectory_json(p, h)});
        };

        if (const auto h = exp.histories.find(cfg_.name); h != exp.histories.end()) {
            const HomogeneousHistory& hist = h->second.history;
            require_dims(p, hist, cfg_.name);
            probability_rows(cfg_.name, hist);
            std::uint64_t stream = 0;
            for (Convention c : conventions) {
                sampled_row(cfg_.name, c, run_history(p, hist, c, cfg_.trials, source(stream++), options()));
            }
            trajectory_row(cfg_.name, hist);
        } else if (const auto o = exp.orhistories.find(cfg_.name); o != exp.orhistories.end()) {
            const InhomogeneousHistory& family = o->second.history;
            for (std::size_t k = 0; k < family.branches().size(); ++k) {
                require_dims(p, family.branches()[k], o->second.branch_names[k]);
                probability_rows(o->second.branch_names[k], family.branches()[k]);
            }
            for (Convention c : conventions) {
                r.rows.push_back({std::string("probability"), std::string("sum"), std::string(to_string(c)),
                                  inhomogeneous_probability(p, family, c), none, none, none, none, none});
            }
            std::uint64_t stream = 0;
            for (Convention c : conventions) {
                sampled_row("sum", c, run_inhomogeneous(p, family, c, cfg_.trials, source(stream++), options()));
            }
            for (std::size_t k = 0; k < family.branches().size(); ++k) {
                trajectory_row(o->second.branch_names[k], family.branches()[k]);
            }
        } else {
            throw UsageError("unknown history '" + cfg_.name + "'");
        }
        return result;
    }

    // parse-check ----------------------------------------------------------

    CommandResult parse_check() {
        const edl::Experiment exp = load();
        CommandResult result;
        result.report.command = "parse-check";
        result.report.columns = {"spaces", "states", "projectors", "histories", "orhistories", "warnings"};
        result.report.rows.push_back({std::uint64_t{exp.spaces.size()}, std::uint64_t{exp.states.size()},
                                      std::uint64_t{exp.projectors.size()}, std::uint64_t{exp.histories.size()},
                                      std::uint64_t{exp.orhistories.size()}, std::uint64_t{exp.warnings.size()}});
        return result;
    }

    const RunConfig& cfg_;
    std::istream& in_;
    std::ostream& err_;
};

}  // namespace

std::string render_csv(const Report& report, bool timestamp) {
    std::string out;
    if (timestamp) out += "# generated_at=" + utc_now() + "\n";
    for (std::size_t k = 0; k < report.columns.size(); ++k) {
        if (k > 0) out += ',';
        out += csv_escape(report.columns[k]);
    }
    out += '\n';
    for (const auto& row : report.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0) out += ',';
            out += std::visit(CsvCell{}, row[k]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Report& report, bool timestamp) {
    nlohmann::ordered_json doc;
    doc["command"] = report.command;
    if (timestamp) doc["generated_at"] = utc_now();
    doc["columns"] = report.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < row.size(); ++k) {
            obj[report.columns[k]] = std::visit(JsonCell{}, row[k]);
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

nlohmann::json vector_json(const StateVector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) arr.push_back({v[i].real(), v[i].imag()});
    return arr;
}

nlohmann::json matrix_json(const CMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json history_json(const edl::NamedHistory& h) {
    return {{"times", h.history.support().times()}, {"projectors", h.slot_projectors}};
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string convention = "lueders";
    std::string format = "csv";
    bool no_timestamp = false;

    CLI::App app{"Hidden measurement simulator", "hmsim"};
    app.require_subcommand(1, 1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-i,--input", cfg.input_path, "EDL file, '-' for stdin");
        sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
        sub->add_option("--trials", cfg.trials, "Monte Carlo trials")->capture_default_str();
        sub->add_option("--lambda-max", cfg.lambda_max, "Largest sampled lambda")
            ->check(CLI::Range(1, 60))
            ->capture_default_str();
        sub->add_option("-L,--L", cfg.L, "Enumeration depth")->check(CLI::Range(1, 60))->capture_default_str();
        sub->add_option("--convention", convention)
            ->check(CLI::IsMember({"lueders", "literal"}))
            ->capture_default_str();
        sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        sub->add_flag("--no-timestamp", no_timestamp, "Omit the generated_at field");
        sub->add_option("--threads", cfg.threads, "Sampler threads, 0 = all cores")->capture_default_str();
    };

    CLI::App* verify = app.add_subcommand("verify", "Exact dyadic partial-sum check");
    add_common(verify);
    verify->add_option("--p", cfg.p, "Bare probability");

    CLI::App* sample = app.add_subcommand("sample", "Sample one dichotomic model");
    add_common(sample);
    sample->add_option("--model", cfg.model, "continuous | greedy | geometric")
        ->check(CLI::IsMember({"continuous", "greedy", "geometric"}));
    sample->add_option("--p", cfg.p, "Probability (greedy)");
    sample->add_option("--t", cfg.t, "Diagonal coordinate (continuous, geometric)");

    CLI::App* sphere = app.add_subcommand("sphere", "Qubit on the sphere measured along +z");
    add_common(sphere);
    sphere->add_option("--theta", cfg.theta, "Polar angle in radians");
    sphere->add_option("--phi", cfg.phi, "Azimuth in radians")->capture_default_str();

    CLI::App* history = app.add_subcommand("history", "History probabilities and trajectory");
    add_common(history);
    history->add_option("--name", cfg.name, "history or orhistory name");
    history->add_option("--state", cfg.state, "initial state name");

    CLI::App* parse_check = app.add_subcommand("parse-check", "Parse and elaborate an EDL file");
    add_common(parse_check);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.convention = parse_convention(convention);
    cfg.format = format == "json" ? Format::Json : Format::Csv;
    cfg.timestamp = !no_timestamp;

    const std::string where = cfg.input_path ? (*cfg.input_path == "-" ? "<stdin>" : *cfg.input_path) : "";
    try {
        const CommandResult result = Runner(cfg, in, err).run();
        out << (cfg.format == Format::Json ? render_json(result.report, cfg.timestamp)
                                           : render_csv(result.report, cfg.timestamp));
        return result.check_failed ? kExitCheckFailed : kExitOk;
    } catch (const edl::ParseError& e) {
        err << where << ":" << e.pos().line << ":" << e.pos().column << ": parse error: " << e.detail() << "\n";
    } catch (const edl::ElaborationError& e) {
        err << where << ":" << e.pos().line << ":" << e.pos().column << ": " << to_string(e.kind())
            << " error: " << e.detail() << "\n";
    } catch (const Error& e) {
        err << "hmsim " << cfg.subcommand << ": " << e.what() << "\n";
    }
    return kExitUsage;
}

}  // namespace hms::cli
