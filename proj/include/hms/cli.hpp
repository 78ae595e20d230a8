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

#ifndef HMS_CLI_HPP
#define HMS_CLI_HPP

// hmsim subcommands and their reports.
//
//   verify       exact partial-sum check for --p or every target of an EDL file
//   sample       Monte Carlo run of one dichotomic model
//   sphere       qubit at polar angle --theta measured along +z
//   history      history probabilities, sampling and trajectory
//   parse-check  parse and elaborate an EDL file
//
// Exit codes: 0 success, 1 a quantitative check failed, 2 usage, parse or
// domain error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hms/edl.hpp"
#include "hms/hilbert.hpp"
#include "hms/hpo.hpp"

namespace hms::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Sampled rows with |z| at or above this fail the run.
inline constexpr double kZThreshold = 4.0;

enum class Format : std::uint8_t { Csv, Json };

struct RunConfig {
    std::string subcommand;
    std::optional<std::string> input_path;
    std::uint64_t seed = 0;
    std::uint64_t trials = 100000;
    int lambda_max = 60;
    int L = 40;
    Convention convention = Convention::Lueders;
    Format format = Format::Csv;
    bool timestamp = true;
    unsigned threads = 0;

    std::optional<double> p;
    std::optional<double> t;
    std::optional<double> theta;
    double phi = 0.0;
    std::string model;
    std::string name;
    std::string state;
};

/// Empty cells are monostate: blank in CSV, null in JSON.
using Cell = std::variant<std::monostate, std::string, double, std::int64_t, std::uint64_t, bool>;

struct Report {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// CSV with a leading "# generated_at=..." line when `timestamp` is set.
/// Floats use 17 significant digits.
std::string render_csv(const Report& report, bool timestamp);
/// {"command", "generated_at"?, "columns", "rows": [{column: value}]};
/// non-finite floats become the strings "inf", "-inf", "nan".
std::string render_json(const Report& report, bool timestamp);

/// Amplitudes as [[re, im], ...].
nlohmann::json vector_json(const StateVector& v);
/// Row-major [[[re, im], ...], ...].
nlohmann::json matrix_json(const CMatrix& m);
/// {"times": [...], "projectors": [names]}.
nlohmann::json history_json(const edl::NamedHistory& h);

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`; `in` backs the input path "-".
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hms::cli

#endif  // HMS_CLI_HPP
