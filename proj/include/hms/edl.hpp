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

#ifndef HMS_EDL_HPP
#define HMS_EDL_HPP

// Experiment Description Language.
//
//   experiment := { stmt } ;
//   stmt    := space | state | proj | history | orhist ;
//   space   := "space" IDENT "dim" INT ";" ;
//   state   := "state" IDENT "in" IDENT "="
//              ( "[" complex {"," complex} "]" | "bloch" "(" FLOAT "," FLOAT ")" ) ";" ;
//   proj    := "proj" IDENT "on" IDENT "="
//              ( "span" "[" INT {"," INT} "]" | "ketbra" IDENT | "not" IDENT ) ";" ;
//   history := "history" IDENT "=" "[" FLOAT ":" IDENT {"," FLOAT ":" IDENT} "]" ";" ;
//   orhist  := "orhistory" IDENT "=" "or" "[" IDENT {"," IDENT} "]" ";" ;
//   complex := FLOAT [ ("+"|"-") FLOAT "i" ] ;
//
// A complex literal with an imaginary part is a single token without
// whitespace ("0.5-0.5i"). Integers are accepted wherever a FLOAT is. '#'
// starts a comment that runs to the end of the line. Angles are radians.
// Columns count Unicode code points, starting at 1.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hms/errors.hpp"
#include "hms/hilbert.hpp"
#include "hms/hpo.hpp"

namespace hms::edl {

struct SourcePos {
    int line = 1;
    int column = 1;
    bool operator==(const SourcePos&) const = default;
};

enum class TokenKind : std::uint8_t { Keyword, Ident, Int, Float, Complex, Punct };

std::string_view to_string(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string lexeme;
    int line = 1;
    int column = 1;

    SourcePos pos() const { return {line, column}; }
    bool operator==(const Token&) const = default;
};

class ParseError : public Error {
   public:
    ParseError(const std::string& message, SourcePos pos, std::optional<std::string> expected = std::nullopt);

    SourcePos pos() const noexcept { return pos_; }
    /// Bare message without the position prefix.
    const std::string& detail() const noexcept { return detail_; }
    const std::optional<std::string>& expected() const noexcept { return expected_; }

   private:
    SourcePos pos_;
    std::string detail_;
    std::optional<std::string> expected_;
};

// ---------------------------------------------------------------------------
// AST

struct ComplexLiteral {
    double re = 0.0;
    double im = 0.0;
    bool operator==(const ComplexLiteral&) const = default;
};

struct AmplitudeList {
    std::vector<ComplexLiteral> values;
    bool operator==(const AmplitudeList&) const = default;
};

struct BlochAngles {
    double theta = 0.0;
    double phi = 0.0;
    bool operator==(const BlochAngles&) const = default;
};

struct SpaceDecl {
    std::string name;
    std::int64_t dim = 0;
    SourcePos pos;
};

struct StateDecl {
    std::string name;
    std::string space;
    std::variant<AmplitudeList, BlochAngles> init;
    SourcePos pos;
};

struct SpanInit {
    std::vector<std::int64_t> indices;
    bool operator==(const SpanInit&) const = default;
};
struct KetbraInit {
    std::string state;
    bool operator==(const KetbraInit&) const = default;
};
struct NotInit {
    std::string projector;
    bool operator==(const NotInit&) const = default;
};

struct ProjDecl {
    std::string name;
    std::string space;
    std::variant<SpanInit, KetbraInit, NotInit> init;
    SourcePos pos;
};

struct HistoryEntry {
    double time = 0.0;
    std::string projector;
};

struct HistoryDecl {
    std::string name;
    std::vector<HistoryEntry> entries;
    SourcePos pos;
};

struct OrHistoryDecl {
    std::string name;
    std::vector<std::string> branches;
    SourcePos pos;
};

using Statement = std::variant<SpaceDecl, StateDecl, ProjDecl, HistoryDecl, OrHistoryDecl>;

struct ExperimentSpec {
    std::vector<Statement> statements;

    template <typename Decl>
    std::size_t count() const {
        std::size_t n = 0;
        for (const auto& s : statements) n += std::holds_alternative<Decl>(s) ? 1 : 0;
        return n;
    }
};

/// Throws ParseError at the first illegal character.
std::vector<Token> tokenize(std::string_view source);

/// Recursive descent over the grammar above; stops at the first error.
ExperimentSpec parse(std::span<const Token> tokens);

ExperimentSpec parse_source(std::string_view source);

/// Canonical source text; parsing it yields a structurally equal AST.
std::string pretty_print(const ExperimentSpec& spec);

/// Equality ignoring source positions.
bool structurally_equal(const ExperimentSpec& a, const ExperimentSpec& b);

/// AST dump including positions, used by the golden corpus.
nlohmann::json to_json(const ExperimentSpec& spec);

// ---------------------------------------------------------------------------
// Elaboration

enum class ElaborationErrorKind : std::uint8_t {
    UnresolvedName,
    DuplicateName,
    Dimension,
    Normalization,
    DegenerateSpan,
    NonIncreasingTimes,
    Support,
    Disjointness,
};

std::string_view to_string(ElaborationErrorKind kind);

/// Semantic error attached to the declaration that caused it.
class ElaborationError : public Error {
   public:
    ElaborationError(ElaborationErrorKind kind, const std::string& message, SourcePos pos);

    ElaborationErrorKind kind() const noexcept { return kind_; }
    SourcePos pos() const noexcept { return pos_; }
    const std::string& detail() const noexcept { return detail_; }

   private:
    ElaborationErrorKind kind_;
    SourcePos pos_;
    std::string detail_;
};

struct Diagnostic {
    SourcePos pos;
    std::string message;
};

struct NamedState {
    std::string space;
    StateVector state;
};

struct NamedProjector {
    std::string space;
    Projector projector;
};

struct NamedHistory {
    HomogeneousHistory history;
    std::vector<std::string> slot_projectors;
};

struct NamedOrHistory {
    InhomogeneousHistory history;
    std::vector<std::string> branch_names;
};

struct Experiment {
    std::map<std::string, std::size_t> spaces;
    std::map<std::string, NamedState> states;
    std::map<std::string, NamedProjector> projectors;
    std::map<std::string, NamedHistory> histories;
    std::map<std::string, NamedOrHistory> orhistories;
    std::vector<Diagnostic> warnings;
};

/// Largest space dimension accepted by the elaborator.
inline constexpr std::int64_t kMaxSpaceDim = 1024;
/// Renormalizing a state by more than this relative amount emits a warning.
inline constexpr double kRenormalizationWarning = 1e-9;

/// Resolves names and builds the linear-algebra objects. Histories and
/// orhistories share one namespace. Throws ElaborationError.
Experiment elaborate(const ExperimentSpec& spec);

/// tokenize + parse + elaborate.
Experiment load_experiment(std::string_view source);

}  // namespace hms::edl

#endif  // HMS_EDL_HPP
