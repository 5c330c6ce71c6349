#pragma once

// Closed form for R2(c, q) with red x+y+c=z and blue x+q*y=z, the matching extremal colorings,
// and residue-class certificates of infinitude.

#include "rado/coloring.hpp"
#include "rado/equation.hpp"
#include "rado/solver.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rado {

class FiniteOrInfinite {
public:
    static FiniteOrInfinite finite(Int v)
    {
        if (v < 1)
            throw std::invalid_argument("finite Rado value must be >= 1");
        FiniteOrInfinite r;
        r.value_ = v;
        return r;
    }
    static FiniteOrInfinite infinite() { return {}; }

    [[nodiscard]] bool is_infinite() const noexcept { return !value_.has_value(); }
    [[nodiscard]] bool is_finite() const noexcept { return value_.has_value(); }
    [[nodiscard]] Int value() const { return value_.value(); }

    /// Decimal value, or "INF".
    [[nodiscard]] std::string to_string() const { return value_ ? std::to_string(*value_) : "INF"; }

    friend bool operator==(const FiniteOrInfinite&, const FiniteOrInfinite&) = default;

private:
    std::optional<Int> value_;
};

/// The red c-equation x+y+c=z and the blue q-equation x+q*y=z.
inline std::pair<LinearEquation, LinearEquation> family_equations(Int c, Int q)
{
    return {LinearEquation{1, 1, c, "c"}, LinearEquation{1, q, 0, "q"}};
}

inline FiniteOrInfinite formula_R2(Int c, Int q)
{
    if (c < 1 || q < 1)
        throw std::domain_error("closed form requires c >= 1 and q >= 1");
    if (c % 2 == 1 && q % 2 == 1)
        return FiniteOrInfinite::infinite();
    if (q == 1)
        return FiniteOrInfinite::finite(2 * c + 4);
    return FiniteOrInfinite::finite((q + 1) * (c + 2) + c + 1);
}

/// How an arbitrary equation pair relates to the (c, q) family.
struct FamilyStatus {
    bool in_family = false; // red is x+y+c=z and blue is x+q*y=z for some integers c, q
    Int c = 0;
    Int q = 0;
    bool formula_applicable = false;
    std::optional<FiniteOrInfinite> formula;
    std::string note;
};

inline FamilyStatus family_status(const LinearEquation& e_red, const LinearEquation& e_blue)
{
    FamilyStatus s;
    if (e_red.coeff_x != 1 || e_red.coeff_y != 1 || e_blue.coeff_x != 1 || e_blue.constant != 0) {
        s.note = "equations are outside the x+y+c=z / x+q*y=z family";
        return s;
    }
    s.in_family = true;
    s.c = e_red.constant;
    s.q = e_blue.coeff_y;
    if (s.c >= 1) {
        s.formula_applicable = true;
        s.formula = formula_R2(s.c, s.q);
        s.note = "closed form applies (c >= 1, q >= 1)";
    } else {
        s.note = "closed form not applicable: requires c >= 1 (got c = " + std::to_string(s.c) +
                 "); value computed by search only";
    }
    return s;
}

/// 4 x formula value when the closed form predicts a finite value, else 64.
inline Int default_bound(const LinearEquation& e_red, const LinearEquation& e_blue)
{
    const auto s = family_status(e_red, e_blue);
    if (s.formula && s.formula->is_finite())
        return 4 * s.formula->value();
    return 64;
}

struct Interval {
    Int lo = 0;
    Int hi = 0;
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// A coloring of [1, domain_top] given as red and blue closed intervals.
struct ConstructionSpec {
    std::vector<Interval> red_intervals;
    std::vector<Interval> blue_intervals;
    Int domain_top = 0;

    /// Whether the intervals cover [1, domain_top] exactly once.
    [[nodiscard]] bool partitions() const
    {
        std::vector<int> hits(static_cast<std::size_t>(std::max<Int>(domain_top, 0) + 1), 0);
        for (const auto* list : {&red_intervals, &blue_intervals})
            for (const auto& iv : *list)
                for (Int m = iv.lo; m <= iv.hi; ++m) {
                    if (m < 1 || m > domain_top)
                        return false;
                    ++hits[static_cast<std::size_t>(m)];
                }
        return std::all_of(hits.begin() + 1, hits.end(), [](int h) { return h == 1; });
    }

    [[nodiscard]] Coloring to_coloring() const
    {
        if (!partitions())
            throw std::logic_error("construction intervals do not partition the domain");
        Coloring col(domain_top);
        for (const auto& iv : red_intervals)
            for (Int m = iv.lo; m <= iv.hi; ++m)
                col.set(m, Color::Red);
        for (const auto& iv : blue_intervals)
            for (Int m = iv.lo; m <= iv.hi; ++m)
                col.set(m, Color::Blue);
        return col;
    }
};

// q = 1, c even: Red [1, c+1], Blue [c+2, 2c+3].
inline ConstructionSpec construction_case2(Int c)
{
    if (c < 2 || c % 2 != 0)
        throw std::domain_error("q = 1 construction requires even c >= 2");
    return ConstructionSpec{{{1, c + 1}}, {{c + 2, 2 * c + 3}}, 2 * c + 3};
}

// q >= 2, c and q not both odd:
// Red [1, c+1] u [(q+1)(c+2), (q+1)(c+2)+c], Blue [c+2, q(c+2)+c+1].
inline ConstructionSpec construction_case3(Int c, Int q)
{
    if (c < 1 || q < 2 || (c % 2 == 1 && q % 2 == 1))
        throw std::domain_error("q >= 2 construction requires c >= 1, q >= 2, and c or q even");
    const Int top_red = (q + 1) * (c + 2);
    return ConstructionSpec{{{1, c + 1}, {top_red, top_red + c}}, {{c + 2, q * (c + 2) + c + 1}}, top_red + c};
}

inline Coloring paper_coloring_case2(Int c)
{
    return construction_case2(c).to_coloring();
}

inline Coloring paper_coloring_case3(Int c, Int q)
{
    return construction_case3(c, q).to_coloring();
}

/// Residue closure: Red residues map to Blue under e_red, Blue residues map to Red under e_blue.
inline bool check_periodic_certificate(const PeriodicCertificate& cert, const LinearEquation& e_red,
                                       const LinearEquation& e_blue)
{
    if (!cert.well_formed())
        return false;
    const Int p = cert.period;
    for (Int r1 = 0; r1 < p; ++r1)
        for (Int r2 = 0; r2 < p; ++r2) {
            const Color c1 = cert.residue_colors[static_cast<std::size_t>(r1)];
            if (c1 != cert.residue_colors[static_cast<std::size_t>(r2)])
                continue;
            const auto& eq = c1 == Color::Red ? e_red : e_blue;
            if (cert.color_of(eq.eval(r1, r2)) == c1)
                return false;
        }
    return true;
}

inline constexpr Int kMaxCertificatePeriod = 24;

/// Smallest period first; within a period, patterns in lexicographic order over residues 0..p-1
/// with Red before Blue.
inline std::optional<PeriodicCertificate> find_periodic_certificate(const LinearEquation& e_red,
                                                                    const LinearEquation& e_blue, Int max_period)
{
    if (max_period < 1 || max_period > kMaxCertificatePeriod)
        throw std::invalid_argument("max_period must lie in [1, " + std::to_string(kMaxCertificatePeriod) + "]");
    for (Int p = 1; p <= max_period; ++p) {
        PeriodicCertificate cert{p, std::vector<Color>(static_cast<std::size_t>(p), Color::Red)};
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
            for (Int r = 0; r < p; ++r)
                cert.residue_colors[static_cast<std::size_t>(r)] =
                    (mask >> (p - 1 - r)) & 1U ? Color::Blue : Color::Red;
            if (check_periodic_certificate(cert, e_red, e_blue))
                return cert;
        }
    }
    return std::nullopt;
}

struct ConstructionCheck {
    std::string name;
    Int domain_top = 0;
    Coloring coloring;
    Verdict verdict;
};

enum class Agreement { Exact, ViaCertificate, Mismatch };

inline const char* to_string(Agreement a) noexcept
{
    switch (a) {
    case Agreement::Exact:
        return "exact";
    case Agreement::ViaCertificate:
        return "via-certificate";
    case Agreement::Mismatch:
        return "mismatch";
    }
    return "mismatch";
}

struct Report {
    Int c = 0;
    Int q = 0;
    Int bound = 0;
    FiniteOrInfinite formula;
    SearchResult solver;
    std::optional<ConstructionCheck> construction;
    std::optional<PeriodicCertificate> certificate;
    Agreement agreement = Agreement::Mismatch;
    std::vector<std::string> notes;

    [[nodiscard]] bool agree() const noexcept { return agreement != Agreement::Mismatch; }
};

inline std::uint64_t nodes_of(const SearchResult& r)
{
    if (const auto* f = std::get_if<FiniteResult>(&r))
        return f->nodes;
    if (const auto* u = std::get_if<UnknownResult>(&r))
        return u->nodes;
    return 0;
}

/// Cross-checks the closed form against exhaustive search and the matching construction.
/// Finite case: decides [1, F-1] (expects a witness) and [1, F] (expects Unsat).
/// Infinite case: searches up to `bound` and looks for a periodic certificate.
inline Report certify(Int c, Int q, Int bound, const SearchOptions& opts = {})
{
    Report rep;
    rep.c = c;
    rep.q = q;
    rep.formula = formula_R2(c, q);
    rep.bound = bound;
    const auto [red, blue] = family_equations(c, q);

    if (rep.formula.is_infinite()) {
        if (bound < 1)
            throw std::invalid_argument("bound must be >= 1");
        rep.solver = compute_rado(red, blue, bound, opts);
        rep.certificate = find_periodic_certificate(red, blue, 8);
        ConstructionCheck check;
        check.name = "periodic";
        check.domain_top = bound;
        if (rep.certificate) {
            check.coloring = restrict_periodic(*rep.certificate, bound);
            check.verdict = is_valid_coloring(check.coloring, red, blue);
            check.name = "periodic p=" + std::to_string(rep.certificate->period) + " " + rep.certificate->pattern();
        } else {
            rep.notes.push_back("no periodic certificate with period <= 8");
        }
        const bool unknown = std::holds_alternative<UnknownResult>(rep.solver);
        if (!unknown)
            rep.notes.push_back("search found a finite value where the closed form predicts infinity");
        rep.construction = std::move(check);
        rep.agreement = unknown && rep.certificate && rep.construction->verdict.valid() ? Agreement::ViaCertificate
                                                                                         : Agreement::Mismatch;
        return rep;
    }

    const Int value = rep.formula.value();
    if (q == 1) {
        const auto spec = construction_case2(c);
        rep.construction = ConstructionCheck{"q=1 intervals", spec.domain_top, spec.to_coloring(), {}};
    } else {
        const auto spec = construction_case3(c, q);
        rep.construction = ConstructionCheck{"q>=2 intervals", spec.domain_top, spec.to_coloring(), {}};
    }
    rep.construction->verdict = is_valid_coloring(rep.construction->coloring, red, blue);
    if (rep.construction->domain_top != value - 1)
        rep.notes.push_back("construction domain differs from formula value - 1");

    std::uint64_t nodes = 0;
    std::optional<Coloring> below;
    if (value - 1 >= 1) {
        auto r = exhaustive_check(red, blue, value - 1, opts);
        std::visit([&](auto& o) { nodes += o.nodes; }, r);
        if (auto* w = std::get_if<Witness>(&r))
            below = std::move(w->coloring);
    } else {
        below = Coloring{};
    }
    bool unsat_at_value = false;
    if (below) {
        SearchOptions remaining{opts.node_budget > nodes ? opts.node_budget - nodes : 0};
        auto r = exhaustive_check(red, blue, value, remaining);
        std::visit([&](auto& o) { nodes += o.nodes; }, r);
        unsat_at_value = std::holds_alternative<Unsat>(r);
    }

    if (below && unsat_at_value) {
        rep.solver = FiniteResult{value, std::move(*below), nodes};
    } else {
        rep.notes.push_back(below ? "a valid coloring exists at the formula value"
                                  : "no valid coloring exists at formula value - 1");
        rep.solver = compute_rado(red, blue, std::max(bound, value), opts);
    }
    const auto* fin = std::get_if<FiniteResult>(&rep.solver);
    const bool solver_agrees = fin && fin->value == value;
    rep.agreement = solver_agrees && rep.construction->verdict.valid() && rep.construction->domain_top == value - 1
                        ? Agreement::Exact
                        : Agreement::Mismatch;
    return rep;
}

} // namespace rado
