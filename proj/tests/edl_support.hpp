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

// Helpers shared by the EDL unit tests and the acceptance runner.

#ifndef HMS_TESTS_EDL_SUPPORT_HPP
#define HMS_TESTS_EDL_SUPPORT_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hms/edl.hpp"

namespace hms::testing {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Outcome of parsing and elaborating one corpus file.
inline nlohmann::json corpus_result(const std::string& source) {
    nlohmann::json out;
    edl::ExperimentSpec spec;
    try {
        spec = edl::parse_source(source);
    } catch (const edl::ParseError& e) {
        out["parse"] = {{"ok", false}, {"line", e.pos().line}, {"column", e.pos().column}, {"message", e.detail()}};
        return out;
    }
    out["parse"] = {{"ok", true}, {"ast", edl::to_json(spec)}};
    try {
        const edl::Experiment exp = edl::elaborate(spec);
        nlohmann::json warnings = nlohmann::json::array();
        for (const auto& w : exp.warnings) {
            warnings.push_back({{"line", w.pos.line}, {"column", w.pos.column}, {"message", w.message}});
        }
        out["elaborate"] = {{"ok", true}, {"warnings", warnings}};
    } catch (const edl::ElaborationError& e) {
        out["elaborate"] = {{"ok", false},
                            {"kind", std::string(edl::to_string(e.kind()))},
                            {"line", e.pos().line},
                            {"column", e.pos().column},
                            {"message", e.detail()}};
    }
    return out;
}

inline std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".edl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

inline std::filesystem::path expected_path(const std::filesystem::path& edl) {
    std::filesystem::path p = edl;
    p.replace_extension(".expected.json");
    return p;
}

/// True iff pos names a character of the source or the position just past
/// the end of a line. Columns count code points (non-continuation bytes).
inline bool position_in_source(const std::string& source, edl::SourcePos pos) {
    std::vector<int> widths{0};
    for (char c : source) {
        if (c == '\n') {
            widths.push_back(0);
        } else if ((static_cast<unsigned char>(c) & 0xC0U) != 0x80U) {
            ++widths.back();
        }
    }
    if (pos.line < 1 || pos.line > static_cast<int>(widths.size())) return false;
    return pos.column >= 1 && pos.column <= widths[static_cast<std::size_t>(pos.line - 1)] + 1;
}

enum class FuzzVerdict { Parsed, ParseError, Crash };

/// Tokenize + parse + elaborate; anything but the library's own error types
/// counts as a crash.
inline FuzzVerdict fuzz_one(const std::string& source, bool* position_ok) {
    *position_ok = true;
    try {
        const auto spec = edl::parse_source(source);
        try {
            (void)edl::elaborate(spec);
        } catch (const edl::ElaborationError& e) {
            *position_ok = position_in_source(source, e.pos());
        }
        return FuzzVerdict::Parsed;
    } catch (const edl::ParseError& e) {
        *position_ok = position_in_source(source, e.pos());
        return FuzzVerdict::ParseError;
    } catch (...) {
        return FuzzVerdict::Crash;
    }
}

/// Random bytes, or a mutated corpus file, or a splice of EDL fragments.
inline std::string fuzz_input(std::mt19937_64& gen, const std::vector<std::string>& seeds) {
    static const std::vector<std::string> fragments = {
        "space", "state", "proj", "history", "orhistory", "or", "dim", "in", "on", "bloch", "span", "ketbra",
        "not", "Q", "P0", "x", "=", ";", "[", "]", ",", ":", "(", ")", "0", "1", "2", "-1", "0.5", "1e308",
        "1e999", "0.5+0.5i", "3-i", "#c\n", "\n", " ", "\t", "\xC3\xA9", "\xFF", "99999999999999999999"};
    const auto mode = gen() % 3;
    std::string out;
    if (mode == 0) {
        const std::size_t n = gen() % 64;
        for (std::size_t i = 0; i < n; ++i) out += static_cast<char>(gen() & 0xFF);
    } else if (mode == 1 && !seeds.empty()) {
        out = seeds[gen() % seeds.size()];
        const std::size_t edits = 1 + gen() % 4;
        for (std::size_t e = 0; e < edits && !out.empty(); ++e) {
            const std::size_t at = gen() % out.size();
            switch (gen() % 3) {
                case 0:
                    out[at] = static_cast<char>(gen() & 0xFF);
                    break;
                case 1:
                    out.erase(at, 1 + gen() % 8);
                    break;
                default:
                    out.insert(at, fragments[gen() % fragments.size()]);
            }
        }
    } else {
        const std::size_t n = gen() % 24;
        for (std::size_t i = 0; i < n; ++i) {
            out += fragments[gen() % fragments.size()];
            out += ' ';
        }
    }
    return out;
}

}  // namespace hms::testing

#endif  // HMS_TESTS_EDL_SUPPORT_HPP
