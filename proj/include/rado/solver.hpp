#pragma once

// Propagation-assisted exhaustive search for valid two-colorings of [1, n].

#include "rado/coloring.hpp"
#include "rado/equation.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rado {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000ULL;

struct SearchOptions {
    std::uint64_t node_budget = kDefaultNodeBudget;
};

class ResourceExhausted : public std::runtime_error {
public:
    explicit ResourceExhausted(std::uint64_t nodes)
        : std::runtime_error("search node budget exhausted after " + std::to_string(nodes) + " nodes"),
          nodes_(nodes)
    {
    }

    [[nodiscard]] std::uint64_t nodes() const noexcept { return nodes_; }

private:
    std::uint64_t nodes_;
};

struct ForcedAssignment {
    Int position = 0;
    Color color = Color::Red;
    SolutionTriple reason;
};

struct Progress {
    PartialColoring coloring;
    std::vector<ForcedAssignment> forced;
};

/// A solution whose elements all carry the color its equation forbids.
struct Conflict {
    SolutionTriple triple;
    Color color = Color::Red;
};

using PropagationOutcome = std::variant<Progress, Conflict>;

struct Unsat {
    std::uint64_t nodes = 0;
};

struct Witness {
    Coloring coloring;
    std::uint64_t nodes = 0;
};

using ExhaustiveOutcome = std::variant<Unsat, Witness>;

struct FiniteResult {
    Int value = 0;
    Coloring witness; // valid on [1, value - 1]
    std::uint64_t nodes = 0;
};

struct InfiniteCertified {
    PeriodicCertificate certificate;
};

struct UnknownResult {
    Int bound = 0;
    Coloring witness; // valid on [1, bound]
    std::uint64_t nodes = 0;
};

using SearchResult = std::variant<FiniteResult, InfiniteCertified, UnknownResult>;

namespace detail {

/// Solutions of both equations over [1, n] with a position -> triple incidence index,
/// plus a trail-based assignment store for propagation and backtracking.
class PropagationEngine {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    PropagationEngine(const LinearEquation& e_red, const LinearEquation& e_blue, Int n)
        : n_(n), assign_(static_cast<std::size_t>(n + 1), 0), reason_(static_cast<std::size_t>(n + 1), npos),
          incidence_(static_cast<std::size_t>(n + 1))
    {
        tags_[0] = e_red.tag;
        tags_[1] = e_blue.tag;
        add_equation(e_red, Color::Red, 0);
        add_equation(e_blue, Color::Blue, 1);
    }

    [[nodiscard]] Int size() const noexcept { return n_; }
    [[nodiscard]] std::size_t triple_count() const noexcept { return triples_.size(); }

    [[nodiscard]] std::uint8_t raw(Int pos) const noexcept { return assign_[static_cast<std::size_t>(pos)]; }
    [[nodiscard]] std::size_t trail_size() const noexcept { return trail_.size(); }
    [[nodiscard]] const std::vector<Int>& trail() const noexcept { return trail_; }
    [[nodiscard]] std::size_t reason_of(Int pos) const noexcept { return reason_[static_cast<std::size_t>(pos)]; }

    /// Sets an unset position without propagating. Marks it as pending for propagate().
    void assign(Int pos, Color c, std::size_t reason = npos)
    {
        assign_[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(c);
        reason_[static_cast<std::size_t>(pos)] = reason;
        trail_.push_back(pos);
    }

    void undo_to(std::size_t mark)
    {
        while (trail_.size() > mark) {
            const Int pos = trail_.back();
            trail_.pop_back();
            assign_[static_cast<std::size_t>(pos)] = 0;
            reason_[static_cast<std::size_t>(pos)] = npos;
        }
        if (head_ > mark)
            head_ = mark;
    }

    /// First triple (enumeration order) fully colored in its forbidden color, or npos.
    [[nodiscard]] std::size_t find_monochromatic() const
    {
        for (std::size_t t = 0; t < triples_.size(); ++t) {
            const auto& tr = triples_[t];
            bool mono = true;
            for (std::uint8_t k = 0; k < tr.count && mono; ++k)
                mono = assign_[static_cast<std::size_t>(tr.elems[k])] == static_cast<std::uint8_t>(tr.threat);
            if (mono)
                return t;
        }
        return npos;
    }

    /// Evaluates every triple once, in enumeration order. Returns a conflicting triple or npos.
    std::size_t scan_all()
    {
        for (std::size_t t = 0; t < triples_.size(); ++t)
            if (evaluate(t))
                return t;
        return npos;
    }

    /// Runs unit propagation over pending trail entries to a fixpoint.
    std::size_t propagate()
    {
        while (head_ < trail_.size()) {
            const Int pos = trail_[head_++];
            for (std::size_t t : incidence_[static_cast<std::size_t>(pos)])
                if (evaluate(t))
                    return t;
        }
        return npos;
    }

    void mark_propagated() noexcept { head_ = trail_.size(); }

    [[nodiscard]] SolutionTriple triple(std::size_t t) const
    {
        const auto& tr = triples_[t];
        return SolutionTriple{tr.x, tr.y, tr.z, tags_[tr.equation]};
    }

    [[nodiscard]] Color threat_of(std::size_t t) const noexcept { return triples_[t].threat; }

    /// Current assignment as a total coloring; only meaningful once every position is set.
    [[nodiscard]] Coloring snapshot() const
    {
        Coloring out(n_);
        for (Int i = 1; i <= n_; ++i)
            out.set(i, static_cast<Color>(assign_[static_cast<std::size_t>(i)]));
        return out;
    }

private:
    struct Triple {
        std::array<Int, 3> elems{}; // distinct elements, first `count` used
        std::uint8_t count = 0;
        Color threat = Color::Red;
        std::uint8_t equation = 0;
        Int x = 0, y = 0, z = 0;
    };

    void add_equation(const LinearEquation& eq, Color threat, std::uint8_t which)
    {
        for (const auto& s : solutions_in_range(eq, n_)) {
            Triple tr;
            tr.x = s.x;
            tr.y = s.y;
            tr.z = s.z;
            tr.threat = threat;
            tr.equation = which;
            for (Int v : {s.x, s.y, s.z}) {
                bool seen = false;
                for (std::uint8_t k = 0; k < tr.count; ++k)
                    seen = seen || tr.elems[k] == v;
                if (!seen)
                    tr.elems[tr.count++] = v;
            }
            const std::size_t id = triples_.size();
            triples_.push_back(tr);
            for (std::uint8_t k = 0; k < tr.count; ++k)
                incidence_[static_cast<std::size_t>(tr.elems[k])].push_back(id);
        }
    }

    // Returns true on conflict. Forces the last unset element when all others carry the threat color.
    bool evaluate(std::size_t t)
    {
        const auto& tr = triples_[t];
        const auto threat = static_cast<std::uint8_t>(tr.threat);
        Int unset = 0;
        int unset_count = 0;
        for (std::uint8_t k = 0; k < tr.count; ++k) {
            const auto v = assign_[static_cast<std::size_t>(tr.elems[k])];
            if (v == 0) {
                unset = tr.elems[k];
                ++unset_count;
            } else if (v != threat) {
                return false;
            }
        }
        if (unset_count == 0)
            return true;
        if (unset_count == 1)
            assign(unset, complement(tr.threat), t);
        return false;
    }

    Int n_;
    std::array<std::string, 2> tags_;
    std::vector<Triple> triples_;
    std::vector<std::uint8_t> assign_;
    std::vector<std::size_t> reason_;
    std::vector<std::vector<std::size_t>> incidence_;
    std::vector<Int> trail_;
    std::size_t head_ = 0;
};

class Searcher {
public:
    Searcher(const LinearEquation& e_red, const LinearEquation& e_blue, Int n, std::uint64_t budget)
        : engine_(e_red, e_blue, n), budget_(budget)
    {
    }

    bool run()
    {
        if (engine_.scan_all() != PropagationEngine::npos)
            return false;
        if (engine_.propagate() != PropagationEngine::npos)
            return false;
        return dfs(1);
    }

    [[nodiscard]] std::uint64_t nodes() const noexcept { return nodes_; }
    [[nodiscard]] Coloring witness() const { return engine_.snapshot(); }

private:
    bool dfs(Int from)
    {
        Int pos = from;
        while (pos <= engine_.size() && engine_.raw(pos) != 0)
            ++pos;
        if (pos > engine_.size())
            return true;
        for (Color c : {Color::Red, Color::Blue}) {
            if (++nodes_ > budget_)
                throw ResourceExhausted(nodes_);
            const std::size_t mark = engine_.trail_size();
            engine_.assign(pos, c);
            if (engine_.propagate() == PropagationEngine::npos && dfs(pos + 1))
                return true;
            engine_.undo_to(mark);
        }
        return false;
    }

    PropagationEngine engine_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
};

// Whether some solution of eq that includes m is monochromatic in `color`. m must be col.size().
inline bool violates_at_top(const Coloring& col, const LinearEquation& eq, Color color, Int m)
{
    const Int n = col.size();
    if (col[m] != color)
        return false;
    auto mono = [&](Int x, Int y, Int z) {
        return z >= 1 && z <= n && col[x] == color && col[y] == color && col[z] == color;
    };
    for (Int other = 1; other <= n; ++other) {
        if (mono(m, other, eq.eval(m, other)) || mono(other, m, eq.eval(other, m)))
            return true;
        // m in z-position: a*x + b*y + c = m
        const Int rest = m - eq.constant - eq.coeff_x * other;
        if (rest >= eq.coeff_y && rest % eq.coeff_y == 0 && rest / eq.coeff_y <= n &&
            mono(other, rest / eq.coeff_y, m))
            return true;
    }
    return false;
}

} // namespace detail

/// Extends pc to the unit-propagation fixpoint: whenever every distinct element of a solution but one
/// carries the equation's forbidden color, the remaining element takes the other color.
inline PropagationOutcome propagate(const PartialColoring& pc, const LinearEquation& e_red,
                                    const LinearEquation& e_blue)
{
    detail::PropagationEngine engine(e_red, e_blue, pc.size());
    for (Int i = 1; i <= pc.size(); ++i)
        if (auto c = pc.at(i))
            engine.assign(i, *c);
    engine.mark_propagated();
    const std::size_t given = engine.trail_size();

    if (auto t = engine.find_monochromatic(); t != detail::PropagationEngine::npos)
        return Conflict{engine.triple(t), engine.threat_of(t)};

    auto t = engine.scan_all();
    if (t == detail::PropagationEngine::npos)
        t = engine.propagate();
    if (t != detail::PropagationEngine::npos)
        return Conflict{engine.triple(t), engine.threat_of(t)};

    Progress out{pc, {}};
    const auto& trail = engine.trail();
    for (std::size_t i = given; i < trail.size(); ++i) {
        const Int pos = trail[i];
        const auto c = static_cast<Color>(engine.raw(pos));
        out.coloring.assign(pos, c);
        out.forced.push_back({pos, c, engine.triple(engine.reason_of(pos))});
    }
    return out;
}

/// Depth-first search over positions in ascending order, Red before Blue, propagating after every decision.
inline ExhaustiveOutcome exhaustive_check(const LinearEquation& e_red, const LinearEquation& e_blue, Int n,
                                          const SearchOptions& opts = {})
{
    if (n < 1)
        throw std::invalid_argument("exhaustive_check requires n >= 1");
    detail::Searcher search(e_red, e_blue, n, opts.node_budget);
    if (search.run())
        return Witness{search.witness(), search.nodes()};
    return Unsat{search.nodes()};
}

/// Least N <= bound such that no valid coloring of [1, N] exists.
inline SearchResult compute_rado(const LinearEquation& e_red, const LinearEquation& e_blue, Int bound,
                                 const SearchOptions& opts = {})
{
    if (bound < 1)
        throw std::invalid_argument("compute_rado requires bound >= 1");
    Coloring prev; // valid on [1, n-1]
    std::uint64_t nodes = 0;
    for (Int n = 1; n <= bound; ++n) {
        // Any valid coloring of [1, n] restricts to one of [1, n-1], so trying to extend the previous
        // witness first only short-cuts Sat answers.
        bool extended = false;
        for (Color c : {Color::Red, Color::Blue}) {
            Coloring cand = Coloring::from_string(prev.to_string() + to_char(c));
            if (!detail::violates_at_top(cand, e_red, Color::Red, n) &&
                !detail::violates_at_top(cand, e_blue, Color::Blue, n)) {
                prev = std::move(cand);
                extended = true;
                break;
            }
        }
        if (extended)
            continue;
        SearchOptions remaining{opts.node_budget > nodes ? opts.node_budget - nodes : 0};
        ExhaustiveOutcome r;
        try {
            r = exhaustive_check(e_red, e_blue, n, remaining);
        } catch (const ResourceExhausted& e) {
            throw ResourceExhausted(nodes + e.nodes());
        }
        if (auto* u = std::get_if<Unsat>(&r))
            return FiniteResult{n, prev, nodes + u->nodes};
        auto& w = std::get<Witness>(r);
        nodes += w.nodes;
        prev = std::move(w.coloring);
    }
    return UnknownResult{bound, prev, nodes};
}

} // namespace rado
