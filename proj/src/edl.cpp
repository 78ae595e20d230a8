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

#include "hms/edl.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "hms/dichotomic.hpp"

namespace hms::edl {

namespace {

constexpr std::array<std::string_view, 13> kKeywords = {
    "space", "dim", "state", "in", "bloch", "proj", "on", "span", "ketbra", "not", "history", "orhistory", "or",
};

bool is_keyword(std::string_view word) {
    for (auto k : kKeywords) {
        if (k == word) return true;
    }
    return false;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }
bool is_continuation_byte(char c) { return (static_cast<unsigned char>(c) & 0xC0U) == 0x80U; }

std::string format_position(SourcePos pos) {
    return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

int codepoint_count(std::string_view s) {
    int n = 0;
    for (char c : s) {
        n += is_continuation_byte(c) ? 0 : 1;
    }
    return n;
}

// Lexer --------------------------------------------------------------------

class Lexer {
   public:
    explicit Lexer(std::string_view source) : src_(source) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (i_ < src_.size()) {
            const char c = src_[i_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance(1);
            } else if (c == '#') {
                while (i_ < src_.size() && src_[i_] != '\n') advance(1);
            } else if (is_ident_start(c)) {
                std::size_t j = i_;
                while (j < src_.size() && is_ident_char(src_[j])) ++j;
                const std::string word(src_.substr(i_, j - i_));
                emit(out, is_keyword(word) ? TokenKind::Keyword : TokenKind::Ident, j);
            } else if (std::size_t end = number_end(i_, true); end != kNone) {
                lex_number(out, end);
            } else if (c == ';' || c == '=' || c == '[' || c == ']' || c == ',' || c == ':' || c == '(' ||
                       c == ')') {
                emit(out, TokenKind::Punct, i_ + 1);
            } else {
                throw ParseError(describe_illegal(c), {line_, column_});
            }
        }
        return out;
    }

   private:
    static constexpr std::size_t kNone = std::string_view::npos;

    char at(std::size_t j) const { return j < src_.size() ? src_[j] : '\0'; }

    std::size_t digits_end(std::size_t j) const {
        while (j < src_.size() && is_digit(src_[j])) ++j;
        return j;
    }

    // End of a numeric literal starting at j, or kNone.
    std::size_t number_end(std::size_t j, bool allow_sign) const {
        if (allow_sign && (at(j) == '+' || at(j) == '-')) ++j;
        const std::size_t int_end = digits_end(j);
        bool any_digits = int_end > j;
        j = int_end;
        if (at(j) == '.' && is_digit(at(j + 1))) {
            j = digits_end(j + 1);
            any_digits = true;
        }
        if (!any_digits) return kNone;
        if (at(j) == 'e' || at(j) == 'E') {
            std::size_t k = j + 1;
            if (at(k) == '+' || at(k) == '-') ++k;
            if (is_digit(at(k))) j = digits_end(k);
        }
        return j;
    }

    void lex_number(std::vector<Token>& out, std::size_t end) {
        // a+bi / a-bi
        if (at(end) == '+' || at(end) == '-') {
            const std::size_t imag_end = number_end(end + 1, false);
            if (imag_end != kNone && at(imag_end) == 'i' && !is_ident_char(at(imag_end + 1))) {
                emit(out, TokenKind::Complex, imag_end + 1);
                return;
            }
        }
        const std::string_view text = src_.substr(i_, end - i_);
        const bool is_float = text.find_first_of(".eE") != std::string_view::npos;
        emit(out, is_float ? TokenKind::Float : TokenKind::Int, end);
    }

    void emit(std::vector<Token>& out, TokenKind kind, std::size_t end) {
        out.push_back(Token{kind, std::string(src_.substr(i_, end - i_)), line_, column_});
        advance(end - i_);
    }

    void advance(std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i_) {
            if (src_[i_] == '\n') {
                ++line_;
                column_ = 1;
            } else if (!is_continuation_byte(src_[i_])) {
                ++column_;
            }
        }
    }

    static std::string describe_illegal(char c) {
        const auto u = static_cast<unsigned char>(c);
        if (u >= 0x21 && u < 0x7F) {
            return std::string("illegal character '") + c + "'";
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "illegal byte 0x%02X", u);
        return buf;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int column_ = 1;
};

// Parser -------------------------------------------------------------------

double to_double(const Token& t) {
    std::string_view s = t.lexeme;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError("numeric literal '" + t.lexeme + "' out of range", t.pos());
    }
    return v;
}

std::int64_t to_int(const Token& t) {
    std::string_view s = t.lexeme;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("integer literal '" + t.lexeme + "' out of range", t.pos());
    }
    return v;
}

ComplexLiteral to_complex(const Token& t) {
    if (t.kind != TokenKind::Complex) {
        return {to_double(t), 0.0};
    }
    // Split at the sign that starts the imaginary part: the last '+'/'-' that
    // is neither leading nor part of an exponent.
    const std::string& s = t.lexeme;
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    Token re{TokenKind::Float, s.substr(0, split), t.line, t.column};
    Token im{TokenKind::Float, s.substr(split, s.size() - split - 1), t.line, t.column};
    return {to_double(re), to_double(im)};
}

class Parser {
   public:
    explicit Parser(std::span<const Token> tokens) : toks_(tokens) {
        if (!toks_.empty()) {
            const Token& last = toks_.back();
            end_ = {last.line, last.column + codepoint_count(last.lexeme)};
        }
    }

    ExperimentSpec run() {
        ExperimentSpec spec;
        while (!at_end()) {
            spec.statements.push_back(statement());
        }
        return spec;
    }

   private:
    bool at_end() const { return i_ >= toks_.size(); }
    SourcePos here() const { return at_end() ? end_ : toks_[i_].pos(); }

    std::string found() const {
        if (at_end()) return "end of input";
        const Token& t = toks_[i_];
        return std::string(to_string(t.kind)) + " '" + t.lexeme + "'";
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError("expected " + expected + " but found " + found(), here(), expected);
    }

    bool peek_is(TokenKind kind, std::string_view lexeme) const {
        return !at_end() && toks_[i_].kind == kind && toks_[i_].lexeme == lexeme;
    }

    const Token& take() { return toks_[i_++]; }

    void expect_punct(std::string_view p) {
        if (!peek_is(TokenKind::Punct, p)) fail("'" + std::string(p) + "'");
        ++i_;
    }

    void expect_keyword(std::string_view k) {
        if (!peek_is(TokenKind::Keyword, k)) fail("'" + std::string(k) + "'");
        ++i_;
    }

    std::string expect_ident(const char* what) {
        if (at_end() || toks_[i_].kind != TokenKind::Ident) fail(what);
        return take().lexeme;
    }

    double expect_float() {
        if (at_end() || (toks_[i_].kind != TokenKind::Float && toks_[i_].kind != TokenKind::Int)) fail("number");
        return to_double(take());
    }

    std::int64_t expect_int() {
        if (at_end() || toks_[i_].kind != TokenKind::Int) fail("integer");
        return to_int(take());
    }

    ComplexLiteral expect_complex() {
        if (at_end() || (toks_[i_].kind != TokenKind::Float && toks_[i_].kind != TokenKind::Int &&
                         toks_[i_].kind != TokenKind::Complex)) {
            fail("complex number");
        }
        return to_complex(take());
    }

    // Parses `item {"," item} "]"` after the opening bracket.
    template <typename F>
    void bracket_list(F&& item) {
        item();
        while (peek_is(TokenKind::Punct, ",")) {
            ++i_;
            item();
        }
        expect_punct("]");
    }

    Statement statement() {
        const SourcePos pos = here();
        if (!at_end() && toks_[i_].kind == TokenKind::Keyword) {
            const std::string& k = toks_[i_].lexeme;
            if (k == "space") return space(pos);
            if (k == "state") return state(pos);
            if (k == "proj") return proj(pos);
            if (k == "history") return history(pos);
            if (k == "orhistory") return orhistory(pos);
        }
        fail("statement ('space', 'state', 'proj', 'history' or 'orhistory')");
    }

    SpaceDecl space(SourcePos pos) {
        ++i_;
        SpaceDecl d;
        d.pos = pos;
        d.name = expect_ident("space name");
        expect_keyword("dim");
        d.dim = expect_int();
        expect_punct(";");
        return d;
    }

    StateDecl state(SourcePos pos) {
        ++i_;
        StateDecl d;
        d.pos = pos;
        d.name = expect_ident("state name");
        expect_keyword("in");
        d.space = expect_ident("space name");
        expect_punct("=");
        if (peek_is(TokenKind::Punct, "[")) {
            ++i_;
            AmplitudeList list;
            bracket_list([&] { list.values.push_back(expect_complex()); });
            d.init = std::move(list);
        } else if (peek_is(TokenKind::Keyword, "bloch")) {
            ++i_;
            expect_punct("(");
            BlochAngles angles;
            angles.theta = expect_float();
            expect_punct(",");
            angles.phi = expect_float();
            expect_punct(")");
            d.init = angles;
        } else {
            fail("'[' or 'bloch'");
        }
        expect_punct(";");
        return d;
    }

    ProjDecl proj(SourcePos pos) {
        ++i_;
        ProjDecl d;
        d.pos = pos;
        d.name = expect_ident("projector name");
        expect_keyword("on");
        d.space = expect_ident("space name");
        expect_punct("=");
        if (peek_is(TokenKind::Keyword, "span")) {
            ++i_;
            expect_punct("[");
            SpanInit span;
            bracket_list([&] { span.indices.push_back(expect_int()); });
            d.init = std::move(span);
        } else if (peek_is(TokenKind::Keyword, "ketbra")) {
            ++i_;
            d.init = KetbraInit{expect_ident("state name")};
        } else if (peek_is(TokenKind::Keyword, "not")) {
            ++i_;
            d.init = NotInit{expect_ident("projector name")};
        } else {
            fail("'span', 'ketbra' or 'not'");
        }
        expect_punct(";");
        return d;
    }

    HistoryDecl history(SourcePos pos) {
        ++i_;
        HistoryDecl d;
        d.pos = pos;
        d.name = expect_ident("history name");
        expect_punct("=");
        expect_punct("[");
        bracket_list([&] {
            HistoryEntry e;
            e.time = expect_float();
            expect_punct(":");
            e.projector = expect_ident("projector name");
            d.entries.push_back(std::move(e));
        });
        expect_punct(";");
        return d;
    }

    OrHistoryDecl orhistory(SourcePos pos) {
        ++i_;
        OrHistoryDecl d;
        d.pos = pos;
        d.name = expect_ident("history name");
        expect_punct("=");
        expect_keyword("or");
        expect_punct("[");
        bracket_list([&] { d.branches.push_back(expect_ident("history name")); });
        expect_punct(";");
        return d;
    }

    std::span<const Token> toks_;
    std::size_t i_ = 0;
    SourcePos end_{1, 1};
};

// Printing -----------------------------------------------------------------

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex(const ComplexLiteral& c) {
    std::string out = format_double(c.re);
    if (c.im != 0.0 || std::signbit(c.im)) {
        out += std::signbit(c.im) ? '-' : '+';
        out += format_double(std::abs(c.im));
        out += 'i';
    }
    return out;
}

template <typename T>
std::string join(const std::vector<T>& items, auto&& fmt) {
    std::string out;
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (k > 0) out += ", ";
        out += fmt(items[k]);
    }
    return out;
}

struct Printer {
    std::string operator()(const SpaceDecl& d) const {
        return "space " + d.name + " dim " + std::to_string(d.dim) + ";";
    }
    std::string operator()(const StateDecl& d) const {
        std::string rhs;
        if (const auto* list = std::get_if<AmplitudeList>(&d.init)) {
            rhs = "[" + join(list->values, format_complex) + "]";
        } else {
            const auto& b = std::get<BlochAngles>(d.init);
            rhs = "bloch(" + format_double(b.theta) + ", " + format_double(b.phi) + ")";
        }
        return "state " + d.name + " in " + d.space + " = " + rhs + ";";
    }
    std::string operator()(const ProjDecl& d) const {
        std::string rhs;
        if (const auto* span = std::get_if<SpanInit>(&d.init)) {
            rhs = "span [" + join(span->indices, [](std::int64_t i) { return std::to_string(i); }) + "]";
        } else if (const auto* k = std::get_if<KetbraInit>(&d.init)) {
            rhs = "ketbra " + k->state;
        } else {
            rhs = "not " + std::get<NotInit>(d.init).projector;
        }
        return "proj " + d.name + " on " + d.space + " = " + rhs + ";";
    }
    std::string operator()(const HistoryDecl& d) const {
        return "history " + d.name + " = [" +
               join(d.entries, [](const HistoryEntry& e) { return format_double(e.time) + ": " + e.projector; }) +
               "];";
    }
    std::string operator()(const OrHistoryDecl& d) const {
        return "orhistory " + d.name + " = or [" + join(d.branches, [](const std::string& s) { return s; }) + "];";
    }
};

// Structural equality ------------------------------------------------------

struct SameShape {
    bool operator()(const SpaceDecl& a, const SpaceDecl& b) const { return a.name == b.name && a.dim == b.dim; }
    bool operator()(const StateDecl& a, const StateDecl& b) const {
        return a.name == b.name && a.space == b.space && a.init == b.init;
    }
    bool operator()(const ProjDecl& a, const ProjDecl& b) const {
        return a.name == b.name && a.space == b.space && a.init == b.init;
    }
    bool operator()(const HistoryDecl& a, const HistoryDecl& b) const {
        if (a.name != b.name || a.entries.size() != b.entries.size()) return false;
        for (std::size_t k = 0; k < a.entries.size(); ++k) {
            if (a.entries[k].time != b.entries[k].time || a.entries[k].projector != b.entries[k].projector) {
                return false;
            }
        }
        return true;
    }
    bool operator()(const OrHistoryDecl& a, const OrHistoryDecl& b) const {
        return a.name == b.name && a.branches == b.branches;
    }
    template <typename A, typename B>
    bool operator()(const A&, const B&) const {
        return false;
    }
};

// JSON ---------------------------------------------------------------------

nlohmann::json pos_json(SourcePos p) { return {{"line", p.line}, {"column", p.column}}; }

struct ToJson {
    nlohmann::json operator()(const SpaceDecl& d) const {
        return {{"kind", "space"}, {"name", d.name}, {"dim", d.dim}, {"pos", pos_json(d.pos)}};
    }
    nlohmann::json operator()(const StateDecl& d) const {
        nlohmann::json j = {{"kind", "state"}, {"name", d.name}, {"space", d.space}, {"pos", pos_json(d.pos)}};
        if (const auto* list = std::get_if<AmplitudeList>(&d.init)) {
            nlohmann::json amps = nlohmann::json::array();
            for (const auto& c : list->values) amps.push_back({c.re, c.im});
            j["amplitudes"] = std::move(amps);
        } else {
            const auto& b = std::get<BlochAngles>(d.init);
            j["bloch"] = {{"theta", b.theta}, {"phi", b.phi}};
        }
        return j;
    }
    nlohmann::json operator()(const ProjDecl& d) const {
        nlohmann::json j = {{"kind", "proj"}, {"name", d.name}, {"space", d.space}, {"pos", pos_json(d.pos)}};
        if (const auto* span = std::get_if<SpanInit>(&d.init)) {
            j["span"] = span->indices;
        } else if (const auto* k = std::get_if<KetbraInit>(&d.init)) {
            j["ketbra"] = k->state;
        } else {
            j["not"] = std::get<NotInit>(d.init).projector;
        }
        return j;
    }
    nlohmann::json operator()(const HistoryDecl& d) const {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& e : d.entries) entries.push_back({{"time", e.time}, {"proj", e.projector}});
        return {{"kind", "history"}, {"name", d.name}, {"entries", entries}, {"pos", pos_json(d.pos)}};
    }
    nlohmann::json operator()(const OrHistoryDecl& d) const {
        return {{"kind", "orhistory"}, {"name", d.name}, {"branches", d.branches}, {"pos", pos_json(d.pos)}};
    }
};

// Elaboration --------------------------------------------------------------

class Elaborator {
   public:
    Experiment run(const ExperimentSpec& spec) {
        for (const auto& stmt : spec.statements) {
            std::visit([this](const auto& d) { declare(d); }, stmt);
        }
        return std::move(out_);
    }

   private:
    [[noreturn]] static void fail(ElaborationErrorKind kind, const std::string& message, SourcePos pos) {
        throw ElaborationError(kind, message, pos);
    }

    template <typename Map>
    static void require_fresh(const Map& map, const std::string& name, const char* what, SourcePos pos) {
        if (map.contains(name)) {
            fail(ElaborationErrorKind::DuplicateName, std::string(what) + " '" + name + "' is already declared", pos);
        }
    }

    std::size_t space_dim(const std::string& space, SourcePos pos) const {
        const auto it = out_.spaces.find(space);
        if (it == out_.spaces.end()) {
            fail(ElaborationErrorKind::UnresolvedName, "unknown space '" + space + "'", pos);
        }
        return it->second;
    }

    void declare(const SpaceDecl& d) {
        require_fresh(out_.spaces, d.name, "space", d.pos);
        if (d.dim < 1 || d.dim > kMaxSpaceDim) {
            fail(ElaborationErrorKind::Dimension,
                 "space '" + d.name + "' has dimension " + std::to_string(d.dim) + "; must lie in [1, " +
                     std::to_string(kMaxSpaceDim) + "]",
                 d.pos);
        }
        out_.spaces.emplace(d.name, static_cast<std::size_t>(d.dim));
    }

    void declare(const StateDecl& d) {
        require_fresh(out_.states, d.name, "state", d.pos);
        const std::size_t dim = space_dim(d.space, d.pos);
        if (const auto* list = std::get_if<AmplitudeList>(&d.init)) {
            if (list->values.size() != dim) {
                fail(ElaborationErrorKind::Dimension,
                     "state '" + d.name + "' has " + std::to_string(list->values.size()) +
                         " amplitudes but space '" + d.space + "' has dimension " + std::to_string(dim),
                     d.pos);
            }
            CVector amps(static_cast<Eigen::Index>(dim));
            for (std::size_t k = 0; k < dim; ++k) {
                amps(static_cast<Eigen::Index>(k)) = Complex(list->values[k].re, list->values[k].im);
            }
            const double norm = amps.norm();
            if (!(norm > 0.0) || !std::isfinite(norm)) {
                fail(ElaborationErrorKind::Normalization, "state '" + d.name + "' cannot be normalized", d.pos);
            }
            if (std::abs(norm - 1.0) > kRenormalizationWarning) {
                out_.warnings.push_back(
                    {d.pos, "state '" + d.name + "' renormalized (norm was " + format_double(norm) + ")"});
            }
            out_.states.emplace(d.name, NamedState{d.space, StateVector(CVector(amps / norm))});
        } else {
            if (dim != 2) {
                fail(ElaborationErrorKind::Dimension,
                     "state '" + d.name + "': bloch(...) needs a space of dimension 2, '" + d.space + "' has " +
                         std::to_string(dim),
                     d.pos);
            }
            const auto& b = std::get<BlochAngles>(d.init);
            out_.states.emplace(d.name, NamedState{d.space, qubit_from_angles(b.theta, b.phi)});
        }
    }

    void declare(const ProjDecl& d) {
        require_fresh(out_.projectors, d.name, "projector", d.pos);
        const std::size_t dim = space_dim(d.space, d.pos);
        if (const auto* span = std::get_if<SpanInit>(&d.init)) {
            std::vector<std::size_t> indices;
            std::set<std::int64_t> seen;
            for (auto i : span->indices) {
                if (i < 0 || static_cast<std::uint64_t>(i) >= dim) {
                    fail(ElaborationErrorKind::Dimension,
                         "projector '" + d.name + "': basis index " + std::to_string(i) + " out of range for space '" +
                             d.space + "'",
                         d.pos);
                }
                if (!seen.insert(i).second) {
                    fail(ElaborationErrorKind::DegenerateSpan,
                         "projector '" + d.name + "': basis index " + std::to_string(i) + " listed twice", d.pos);
                }
                indices.push_back(static_cast<std::size_t>(i));
            }
            out_.projectors.emplace(d.name, NamedProjector{d.space, Projector::basis(dim, indices)});
        } else if (const auto* k = std::get_if<KetbraInit>(&d.init)) {
            const auto it = out_.states.find(k->state);
            if (it == out_.states.end()) {
                fail(ElaborationErrorKind::UnresolvedName, "unknown state '" + k->state + "'", d.pos);
            }
            if (it->second.space != d.space) {
                fail(ElaborationErrorKind::Dimension,
                     "projector '" + d.name + "' is on space '" + d.space + "' but state '" + k->state +
                         "' lives in '" + it->second.space + "'",
                     d.pos);
            }
            out_.projectors.emplace(d.name, NamedProjector{d.space, ketbra(it->second.state)});
        } else {
            const auto& ref = std::get<NotInit>(d.init).projector;
            const auto it = out_.projectors.find(ref);
            if (it == out_.projectors.end()) {
                fail(ElaborationErrorKind::UnresolvedName, "unknown projector '" + ref + "'", d.pos);
            }
            if (it->second.space != d.space) {
                fail(ElaborationErrorKind::Dimension,
                     "projector '" + d.name + "' is on space '" + d.space + "' but '" + ref + "' is on '" +
                         it->second.space + "'",
                     d.pos);
            }
            out_.projectors.emplace(d.name, NamedProjector{d.space, complement_projector(it->second.projector)});
        }
    }

    void require_fresh_history(const std::string& name, SourcePos pos) const {
        if (out_.histories.contains(name) || out_.orhistories.contains(name)) {
            fail(ElaborationErrorKind::DuplicateName, "history '" + name + "' is already declared", pos);
        }
    }

    void declare(const HistoryDecl& d) {
        require_fresh_history(d.name, d.pos);
        std::vector<double> times;
        std::vector<Projector> slots;
        std::vector<std::string> names;
        for (std::size_t k = 0; k < d.entries.size(); ++k) {
            const auto& e = d.entries[k];
            if (k > 0 && !(e.time > times.back())) {
                fail(ElaborationErrorKind::NonIncreasingTimes,
                     "history '" + d.name + "': time " + format_double(e.time) + " does not exceed " +
                         format_double(times.back()),
                     d.pos);
            }
            const auto it = out_.projectors.find(e.projector);
            if (it == out_.projectors.end()) {
                fail(ElaborationErrorKind::UnresolvedName, "unknown projector '" + e.projector + "'", d.pos);
            }
            times.push_back(e.time);
            slots.push_back(it->second.projector);
            names.push_back(e.projector);
        }
        out_.histories.emplace(d.name, NamedHistory{HomogeneousHistory(TemporalSupport(std::move(times)),
                                                                       std::move(slots)),
                                                    std::move(names)});
    }

    void declare(const OrHistoryDecl& d) {
        require_fresh_history(d.name, d.pos);
        std::vector<HomogeneousHistory> branches;
        for (const auto& name : d.branches) {
            const auto it = out_.histories.find(name);
            if (it == out_.histories.end()) {
                const char* why = out_.orhistories.contains(name) ? "' is not a homogeneous history"
                                                                  : "' is not a declared history";
                fail(ElaborationErrorKind::UnresolvedName, "orhistory '" + d.name + "': '" + name + why, d.pos);
            }
            branches.push_back(it->second.history);
        }
        for (std::size_t i = 0; i < branches.size(); ++i) {
            for (std::size_t j = i + 1; j < branches.size(); ++j) {
                bool disjoint = false;
                try {
                    disjoint = are_disjoint(branches[i], branches[j]);
                } catch (const SupportError&) {
                    fail(ElaborationErrorKind::Support,
                         "orhistory '" + d.name + "': branches '" + d.branches[i] + "' and '" + d.branches[j] +
                             "' have different temporal supports",
                         d.pos);
                } catch (const DimensionError&) {
                    fail(ElaborationErrorKind::Dimension,
                         "orhistory '" + d.name + "': branches '" + d.branches[i] + "' and '" + d.branches[j] +
                             "' have different slot dimensions",
                         d.pos);
                }
                if (!disjoint) {
                    fail(ElaborationErrorKind::Disjointness,
                         "orhistory '" + d.name + "': branches '" + d.branches[i] + "' and '" + d.branches[j] +
                             "' are not disjoint",
                         d.pos);
                }
            }
        }
        out_.orhistories.emplace(d.name, NamedOrHistory{InhomogeneousHistory(std::move(branches)), d.branches});
    }

    Experiment out_;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword:
            return "KEYWORD";
        case TokenKind::Ident:
            return "IDENT";
        case TokenKind::Int:
            return "INT";
        case TokenKind::Float:
            return "FLOAT";
        case TokenKind::Complex:
            return "COMPLEX";
        case TokenKind::Punct:
            return "PUNCT";
    }
    return "?";
}

ParseError::ParseError(const std::string& message, SourcePos pos, std::optional<std::string> expected)
    : Error(format_position(pos) + ": " + message), pos_(pos), detail_(message), expected_(std::move(expected)) {}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

ExperimentSpec parse(std::span<const Token> tokens) { return Parser(tokens).run(); }

ExperimentSpec parse_source(std::string_view source) {
    const auto tokens = tokenize(source);
    return parse(tokens);
}

std::string pretty_print(const ExperimentSpec& spec) {
    std::string out;
    for (const auto& stmt : spec.statements) {
        out += std::visit(Printer{}, stmt);
        out += '\n';
    }
    return out;
}

bool structurally_equal(const ExperimentSpec& a, const ExperimentSpec& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (std::size_t k = 0; k < a.statements.size(); ++k) {
        if (!std::visit(SameShape{}, a.statements[k], b.statements[k])) return false;
    }
    return true;
}

nlohmann::json to_json(const ExperimentSpec& spec) {
    nlohmann::json stmts = nlohmann::json::array();
    for (const auto& stmt : spec.statements) {
        stmts.push_back(std::visit(ToJson{}, stmt));
    }
    return {{"statements", std::move(stmts)}};
}

std::string_view to_string(ElaborationErrorKind kind) {
    switch (kind) {
        case ElaborationErrorKind::UnresolvedName:
            return "unresolved_name";
        case ElaborationErrorKind::DuplicateName:
            return "duplicate_name";
        case ElaborationErrorKind::Dimension:
            return "dimension";
        case ElaborationErrorKind::Normalization:
            return "normalization";
        case ElaborationErrorKind::DegenerateSpan:
            return "degenerate_span";
        case ElaborationErrorKind::NonIncreasingTimes:
            return "non_increasing_times";
        case ElaborationErrorKind::Support:
            return "support";
        case ElaborationErrorKind::Disjointness:
            return "disjointness";
    }
    return "?";
}

ElaborationError::ElaborationError(ElaborationErrorKind kind, const std::string& message, SourcePos pos)
    : Error(format_position(pos) + ": " + message), kind_(kind), pos_(pos), detail_(message) {}

Experiment elaborate(const ExperimentSpec& spec) { return Elaborator().run(spec); }

Experiment load_experiment(std::string_view source) { return elaborate(parse_source(source)); }

}  // namespace hms::edl
