#pragma once

// Symbolic forcing chains over the parameters (c, q), instantiated and replayed step by step.
//
// A chain starts from a coloring of 1 alone. Each step names a solution (x, y, z) of the c-equation
// x+y+c=z (forbidden in Red) or the q-equation x+q*y=z (forbidden in Blue), whose two other elements
// already carry the forbidden color, and forces the remaining element to the opposite color. The chain
// ends with a solution that is monochromatic in its forbidden color.

#include "rado/coloring.hpp"
#include "rado/equation.hpp"
#include "rado/solver.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#ifndef RADO_DEFAULT_FIXTURE_DIR
#define RADO_DEFAULT_FIXTURE_DIR "fixtures/chains"
#endif

namespace rado {

class DivisibilityError : public std::domain_error {
public:
    explicit DivisibilityError(const std::string& expr, Int c, Int q)
        : std::domain_error(expr + " is not an integer at c=" + std::to_string(c) + ", q=" + std::to_string(q))
    {
    }
};

/// (k0 + kc*c + kq*q + kcq*c*q) / den, den in {1, 2}.
struct AffineExpr {
    std::array<Int, 4> num{};
    Int den = 1;

    static AffineExpr constant(Int v) { return AffineExpr{{v, 0, 0, 0}, 1}; }

    [[nodiscard]] Int numerator(Int c, Int q) const noexcept
    {
        return num[0] + num[1] * c + num[2] * q + num[3] * c * q;
    }

    [[nodiscard]] std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        auto term = [&](Int k, const char* sym) {
            if (k == 0)
                return;
            if (k < 0)
                os << '-';
            else if (!first)
                os << '+';
            const Int mag = k < 0 ? -k : k;
            if (*sym == '\0')
                os << mag;
            else if (mag == 1)
                os << sym;
            else
                os << mag << sym;
            first = false;
        };
        term(num[3], "cq");
        term(num[1], "c");
        term(num[2], "q");
        term(num[0], "");
        if (first)
            os << '0';
        if (den == 1)
            return os.str();
        return "(" + os.str() + ")/" + std::to_string(den);
    }

    friend bool operator==(const AffineExpr&, const AffineExpr&) = default;
};

/// Exact value at (c, q); throws DivisibilityError when the expression is not integral there.
inline Int eval_expr(const AffineExpr& e, Int c, Int q)
{
    if (e.den != 1 && e.den != 2)
        throw std::invalid_argument("expression denominator must be 1 or 2");
    const Int n = e.numerator(c, q);
    if (n % e.den != 0)
        throw DivisibilityError(e.to_string(), c, q);
    return n / e.den;
}

/// Equation tag "c" is x+y+c=z (forbidden Red); tag "q" is x+q*y=z (forbidden Blue).
inline LinearEquation chain_equation(const std::string& tag, Int c, Int q)
{
    if (tag == "c")
        return LinearEquation{1, 1, c, "c"};
    if (tag == "q")
        return LinearEquation{1, q, 0, "q"};
    throw std::invalid_argument("unknown equation tag '" + tag + "'");
}

inline Color forbidden_color(const std::string& tag)
{
    return tag == "c" ? Color::Red : Color::Blue;
}

struct ChainStep {
    std::array<AffineExpr, 3> triple;
    std::string tag;
    int forced_index = 2;
    Color forced_color = Color::Blue;
    std::string written;
};

struct NormalizedStep {
    ChainStep step;
    std::optional<ChainStep> original; // verbatim transcription when the step was normalized
    std::string normalization;
};

struct Preconditions {
    std::optional<int> c_parity; // 0 even, 1 odd
    std::optional<int> q_parity;
    std::optional<Int> q_equals;
    std::optional<Int> q_min;

    [[nodiscard]] bool hold(Int c, Int q) const noexcept
    {
        auto parity = [](Int v) { return static_cast<int>(((v % 2) + 2) % 2); };
        return (!c_parity || parity(c) == *c_parity) && (!q_parity || parity(q) == *q_parity) &&
               (!q_equals || q == *q_equals) && (!q_min || q >= *q_min) && c >= 1;
    }

    [[nodiscard]] std::string describe() const
    {
        std::vector<std::string> parts;
        if (c_parity)
            parts.push_back(*c_parity ? "c odd" : "c even");
        if (q_parity)
            parts.push_back(*q_parity ? "q odd" : "q even");
        if (q_equals)
            parts.push_back("q = " + std::to_string(*q_equals));
        if (q_min)
            parts.push_back("q >= " + std::to_string(*q_min));
        std::string s;
        for (const auto& p : parts)
            s += (s.empty() ? "" : ", ") + p;
        return s;
    }
};

struct TerminalConflict {
    std::array<AffineExpr, 3> triple;
    std::string tag;
    Color color = Color::Red;
    std::string written;
};

struct Chain {
    std::string case_id;
    Color root_color = Color::Red;
    Preconditions preconditions;
    AffineExpr domain; // default n for replay
    std::vector<NormalizedStep> steps;
    TerminalConflict terminal;
    std::string notes;
    std::string source_file;
};

enum class StepFailureReason { NotASolution, PremiseColorMissing, OutOfRange, Divisibility, ColorContradictionMidchain };

inline const char* to_string(StepFailureReason r) noexcept
{
    switch (r) {
    case StepFailureReason::NotASolution:
        return "not-a-solution";
    case StepFailureReason::PremiseColorMissing:
        return "premise-color-missing";
    case StepFailureReason::OutOfRange:
        return "out-of-range";
    case StepFailureReason::Divisibility:
        return "divisibility";
    case StepFailureReason::ColorContradictionMidchain:
        return "color-contradiction-midchain";
    }
    return "unknown";
}

struct StepLog {
    std::size_t index = 0; // 1-based
    SolutionTriple triple;
    Int forced_position = 0;
    Color forced_color = Color::Red;
    bool reassertion = false;  // forced position already had this color
    bool normalized = false;   // replayed the normalized form of a mistyped step
    bool propagation_closed = false; // propagate() already reports a conflict before this step
    bool propagation_agrees = true;  // propagate() derives this assignment from the prior coloring
};

struct ReplaySuccess {
    std::vector<StepLog> log;
    SolutionTriple terminal;
    Color terminal_color = Color::Red;
    std::vector<std::string> notes;
};

struct StepFailure {
    std::size_t step = 0; // 1-based
    StepFailureReason reason = StepFailureReason::NotASolution;
    std::string detail;
    std::vector<StepLog> log;
    // For color-contradiction-midchain: the step's solution, which is monochromatic in its forbidden color.
    std::optional<SolutionTriple> monochromatic;
};

struct TerminalMismatch {
    std::string detail;
    std::vector<StepLog> log;
};

using ReplayResult = std::variant<ReplaySuccess, StepFailure, TerminalMismatch>;

namespace detail {

inline std::string describe(const std::array<Int, 3>& v, const std::string& tag)
{
    std::ostringstream os;
    os << SolutionTriple{v[0], v[1], v[2], tag};
    return os.str();
}

inline std::string color_word(std::optional<Color> c)
{
    return c ? to_name(*c) : "unset";
}

} // namespace detail

/// Default replay domain for the chain's case, e.g. 2c+4 or (q+1)(c+2)+c+1.
inline Int chain_domain(const Chain& chain, Int c, Int q)
{
    return eval_expr(chain.domain, c, q);
}

/// Replays every step of the chain at (c, q) on [1, n], starting from 1 := root color.
inline ReplayResult replay_chain(const Chain& chain, Int c, Int q, Int n)
{
    if (n < 1)
        throw std::invalid_argument("replay domain must be >= 1");
    const auto e_red = chain_equation("c", c, q);
    const auto e_blue = chain_equation("q", c, q);

    PartialColoring pc(n);
    pc.assign(1, chain.root_color);
    std::vector<StepLog> log;
    std::vector<std::string> notes;
    if (!chain.preconditions.hold(c, q))
        notes.push_back("parameters c=" + std::to_string(c) + ", q=" + std::to_string(q) +
                        " violate preconditions (" + chain.preconditions.describe() + ")");

    auto fail = [&](std::size_t idx, StepFailureReason reason, std::string detail) {
        return StepFailure{idx, reason, std::move(detail), log, std::nullopt};
    };

    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        const auto& entry = chain.steps[i];
        const auto& step = entry.step;
        const std::size_t idx = i + 1;

        std::array<Int, 3> v{};
        try {
            for (int k = 0; k < 3; ++k)
                v[k] = eval_expr(step.triple[k], c, q);
        } catch (const DivisibilityError& e) {
            return fail(idx, StepFailureReason::Divisibility, e.what());
        }

        const auto eq = chain_equation(step.tag, c, q);
        if (!eq.solves(v[0], v[1], v[2]))
            return fail(idx, StepFailureReason::NotASolution,
                        detail::describe(v, step.tag) + " does not solve " + eq.to_string());

        for (int k = 0; k < 3; ++k)
            if (v[k] < 1 || v[k] > n)
                return fail(idx, StepFailureReason::OutOfRange,
                            detail::describe(v, step.tag) + " leaves [1, " + std::to_string(n) + "]");

        const Color threat = forbidden_color(step.tag);
        const Int forced = v[static_cast<std::size_t>(step.forced_index)];
        if (step.forced_color != complement(threat))
            return fail(idx, StepFailureReason::PremiseColorMissing,
                        "forced color must be the complement of the forbidden color");
        for (int k = 0; k < 3; ++k) {
            if (v[k] == forced)
                continue;
            if (pc.at(v[k]) != threat)
                return fail(idx, StepFailureReason::PremiseColorMissing,
                            std::to_string(v[k]) + " in " + detail::describe(v, step.tag) + " is " +
                                detail::color_word(pc.at(v[k])) + ", needs " + to_name(threat));
        }

        StepLog entry_log;
        entry_log.index = idx;
        entry_log.triple = SolutionTriple{v[0], v[1], v[2], step.tag};
        entry_log.forced_position = forced;
        entry_log.forced_color = step.forced_color;
        entry_log.normalized = entry.original.has_value();

        // Cross-check against the solver's propagation from the same partial coloring.
        const auto outcome = propagate(pc, e_red, e_blue);
        if (std::holds_alternative<Conflict>(outcome)) {
            entry_log.propagation_closed = true;
        } else {
            entry_log.propagation_agrees = std::get<Progress>(outcome).coloring.at(forced) == step.forced_color;
        }

        const auto current = pc.at(forced);
        if (current == step.forced_color) {
            entry_log.reassertion = true;
        } else if (current) {
            auto f = fail(idx, StepFailureReason::ColorContradictionMidchain,
                          std::to_string(forced) + " is already " + to_name(*current) + ", so " +
                              detail::describe(v, step.tag) + " is entirely " + to_name(threat));
            f.monochromatic = entry_log.triple;
            f.log.push_back(entry_log);
            return f;
        } else {
            pc.assign(forced, step.forced_color);
        }
        log.push_back(entry_log);
        if (entry_log.normalized)
            notes.push_back("step " + std::to_string(idx) + " normalized: " + entry.normalization);
        if (entry_log.reassertion)
            notes.push_back("step " + std::to_string(idx) + " re-asserts " + std::to_string(forced) + " " +
                            to_name(step.forced_color));
    }

    const auto& term = chain.terminal;
    std::array<Int, 3> v{};
    try {
        for (int k = 0; k < 3; ++k)
            v[k] = eval_expr(term.triple[k], c, q);
    } catch (const DivisibilityError& e) {
        return TerminalMismatch{e.what(), log};
    }
    const auto eq = chain_equation(term.tag, c, q);
    if (!eq.solves(v[0], v[1], v[2]))
        return TerminalMismatch{detail::describe(v, term.tag) + " does not solve " + eq.to_string(), log};
    for (Int m : v) {
        if (m < 1 || m > n)
            return TerminalMismatch{detail::describe(v, term.tag) + " leaves the domain", log};
        if (pc.at(m) != term.color)
            return TerminalMismatch{std::to_string(m) + " in " + detail::describe(v, term.tag) + " is " +
                                        detail::color_word(pc.at(m)) + ", not " + to_name(term.color),
                                    log};
    }
    if (term.color != forbidden_color(term.tag))
        return TerminalMismatch{"terminal color is not the forbidden color of its equation", log};
    return ReplaySuccess{std::move(log), SolutionTriple{v[0], v[1], v[2], term.tag}, term.color, std::move(notes)};
}

inline ReplayResult replay_chain(const Chain& chain, Int c, Int q)
{
    return replay_chain(chain, c, q, chain_domain(chain, c, q));
}

class FixtureError : public std::runtime_error {
public:
    FixtureError(const std::string& file, std::size_t line, const std::string& what)
        : std::runtime_error(file + (line ? ":" + std::to_string(line) : std::string{}) + ": " + what), line_(line)
    {
    }

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

using nlohmann::json;

struct FixtureReader {
    std::string file;

    [[noreturn]] void error(const std::string& where, const std::string& what) const
    {
        throw FixtureError(file, 0, where + ": " + what);
    }

    const json& field(const json& obj, const char* key, const std::string& where) const
    {
        if (!obj.is_object() || !obj.contains(key))
            error(where, std::string("missing field '") + key + "'");
        return obj.at(key);
    }

    std::string string(const json& obj, const char* key, const std::string& where) const
    {
        const auto& v = field(obj, key, where);
        if (!v.is_string())
            error(where, std::string("field '") + key + "' must be a string");
        return v.get<std::string>();
    }

    Color color(const json& obj, const char* key, const std::string& where) const
    {
        const auto s = string(obj, key, where);
        if (s == "Red")
            return Color::Red;
        if (s == "Blue")
            return Color::Blue;
        error(where, "color must be Red or Blue, got '" + s + "'");
    }

    AffineExpr expr(const json& obj, const char* key, const std::string& where) const
    {
        const auto& v = field(obj, key, where);
        const auto sub = where + "." + key;
        const auto& num = field(v, "num", sub);
        if (!num.is_array() || num.size() != 4 || !std::all_of(num.begin(), num.end(), [](const json& k) {
                return k.is_number_integer();
            }))
            error(sub, "num must be four integers [k0, kc, kq, kcq]");
        AffineExpr e;
        for (std::size_t k = 0; k < 4; ++k)
            e.num[k] = num[k].get<Int>();
        e.den = v.contains("den") ? v.at("den").get<Int>() : 1;
        if (e.den != 1 && e.den != 2)
            error(sub, "den must be 1 or 2");
        return e;
    }

    std::string tag(const json& obj, const std::string& where) const
    {
        auto t = string(obj, "tag", where);
        if (t != "c" && t != "q")
            error(where, "tag must be \"c\" or \"q\"");
        return t;
    }

    ChainStep step(const json& obj, const std::string& where) const
    {
        ChainStep s;
        s.triple = {expr(obj, "x", where), expr(obj, "y", where), expr(obj, "z", where)};
        s.tag = tag(obj, where);
        const auto& fi = field(obj, "forced_index", where);
        if (!fi.is_number_integer() || fi.get<int>() < 0 || fi.get<int>() > 2)
            error(where, "forced_index must be 0, 1, or 2");
        s.forced_index = fi.get<int>();
        s.forced_color = color(obj, "forced_color", where);
        s.written = obj.value("written", std::string{});
        return s;
    }

    static std::optional<int> parity(const json& pre, const char* key, const FixtureReader& r)
    {
        if (!pre.contains(key))
            return std::nullopt;
        const auto s = pre.at(key).get<std::string>();
        if (s == "even")
            return 0;
        if (s == "odd")
            return 1;
        r.error("preconditions", std::string(key) + " must be even or odd");
    }

    Chain chain(const json& doc) const
    {
        Chain ch;
        ch.source_file = file;
        ch.case_id = string(doc, "case_id", "chain");
        ch.root_color = color(doc, "root_color", "chain");
        ch.notes = doc.value("notes", std::string{});
        ch.domain = expr(doc, "domain", "chain");
        const auto& pre = field(doc, "preconditions", "chain");
        ch.preconditions.c_parity = parity(pre, "c_parity", *this);
        ch.preconditions.q_parity = parity(pre, "q_parity", *this);
        if (pre.contains("q_equals"))
            ch.preconditions.q_equals = pre.at("q_equals").get<Int>();
        if (pre.contains("q_min"))
            ch.preconditions.q_min = pre.at("q_min").get<Int>();
        const auto& steps = field(doc, "steps", "chain");
        if (!steps.is_array() || steps.empty())
            error("chain", "steps must be a non-empty array");
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const auto where = "steps[" + std::to_string(i) + "]";
            NormalizedStep ns{step(steps[i], where), std::nullopt, {}};
            if (steps[i].contains("original")) {
                ns.original = step(steps[i].at("original"), where + ".original");
                ns.normalization = string(steps[i], "normalization", where);
            }
            ch.steps.push_back(std::move(ns));
        }
        const auto& t = field(doc, "terminal", "chain");
        ch.terminal.triple = {expr(t, "x", "terminal"), expr(t, "y", "terminal"), expr(t, "z", "terminal")};
        ch.terminal.tag = tag(t, "terminal");
        ch.terminal.color = color(t, "color", "terminal");
        ch.terminal.written = t.value("written", std::string{});
        return ch;
    }
};

inline std::size_t line_of(const std::string& text, std::size_t byte)
{
    const auto end = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

} // namespace detail

inline Chain parse_chain_fixture(const std::string& text, const std::string& file = "<memory>")
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FixtureError(file, detail::line_of(text, e.byte), e.what());
    }
    try {
        return detail::FixtureReader{file}.chain(doc);
    } catch (const nlohmann::json::exception& e) {
        throw FixtureError(file, 0, e.what());
    }
}

inline std::filesystem::path default_fixture_dir()
{
    if (const char* env = std::getenv("RADO_FIXTURE_DIR"); env && *env)
        return env;
    return RADO_DEFAULT_FIXTURE_DIR;
}

/// Loads every *.json chain in dir, ordered by case id.
inline std::vector<Chain> load_chain_fixtures(const std::filesystem::path& dir = default_fixture_dir())
{
    if (!std::filesystem::is_directory(dir))
        throw FixtureError(dir.string(), 0, "fixture directory not found");
    std::vector<Chain> chains;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json")
            continue;
        std::ifstream in(entry.path());
        std::stringstream buf;
        buf << in.rdbuf();
        chains.push_back(parse_chain_fixture(buf.str(), entry.path().string()));
    }
    std::sort(chains.begin(), chains.end(), [](const Chain& a, const Chain& b) { return a.case_id < b.case_id; });
    return chains;
}

inline std::optional<Chain> find_chain(const std::vector<Chain>& chains, const std::string& case_id)
{
    for (const auto& ch : chains)
        if (ch.case_id == case_id)
            return ch;
    return std::nullopt;
}

} // namespace rado
