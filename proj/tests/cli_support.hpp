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

#ifndef HMS_TESTS_CLI_SUPPORT_HPP
#define HMS_TESTS_CLI_SUPPORT_HPP

#include <sstream>
#include <string>
#include <vector>

#include "hms/cli.hpp"

namespace hms::testing {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

inline CliRun run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = cli::run_cli(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

using CsvRow = std::vector<std::string>;

/// Splits rendered CSV into rows, skipping '#' comment lines.
inline std::vector<CsvRow> parse_csv(const std::string& text) {
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string field;
    bool quoted = false;
    bool line_start = true;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (line_start && c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        line_start = false;
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            line_start = true;
        } else {
            field += c;
        }
    }
    return rows;
}

/// Column lookup by header name; returns "" when absent.
inline std::string cell(const std::vector<CsvRow>& table, std::size_t row, const std::string& column) {
    for (std::size_t c = 0; c < table.at(0).size(); ++c) {
        if (table[0][c] == column) return table.at(row).at(c);
    }
    return {};
}

inline const char* kHistoryFile = R"(space Q dim 2;
state plus in Q = [0.7071067811865476, 0.7071067811865476];
state zero in Q = [1, 0];
proj P0 on Q = span [0];
proj P1 on Q = not P0;
proj I on Q = span [0, 1];
history H = [0: P0, 1: P0];
history II = [0: I, 1: I];
history A = [0: P0];
history B = [0: P1];
orhistory AB = or [A, B];
)";

}  // namespace hms::testing

#endif  // HMS_TESTS_CLI_SUPPORT_HPP
