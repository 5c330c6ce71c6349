#pragma once

#include "rado/equation.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rado {

enum class Color : std::uint8_t { Red = 1, Blue = 2 };

constexpr Color complement(Color c) noexcept
{
    return c == Color::Red ? Color::Blue : Color::Red;
}

constexpr char to_char(Color c) noexcept
{
    return c == Color::Red ? 'R' : 'B';
}

inline const char* to_name(Color c) noexcept
{
    return c == Color::Red ? "Red" : "Blue";
}

inline Color color_from_char(char ch)
{
    switch (ch) {
    case 'R':
    case 'r':
        return Color::Red;
    case 'B':
    case 'b':
        return Color::Blue;
    default:
        throw std::invalid_argument(std::string("not a color: '") + ch + "'");
    }
}

/// Total coloring of [1, n]. Position i is stored at index i-1.
class Coloring {
public:
    Coloring() = default;
    explicit Coloring(Int n, Color fill = Color::Red) : cells_(static_cast<std::size_t>(n), fill)
    {
        if (n < 0)
            throw std::invalid_argument("coloring size must be non-negative");
    }

    /// Parses the {R, B} string form used in reports and witness files.
    static Coloring from_string(std::string_view s)
    {
        Coloring col;
        col.cells_.reserve(s.size());
        for (char ch : s)
            col.cells_.push_back(color_from_char(ch));
        return col;
    }

    [[nodiscard]] Int size() const noexcept { return static_cast<Int>(cells_.size()); }

    [[nodiscard]] Color at(Int pos) const
    {
        check(pos);
        return cells_[static_cast<std::size_t>(pos - 1)];
    }

    // Unchecked; pos must lie in [1, size()].
    [[nodiscard]] Color operator[](Int pos) const noexcept { return cells_[static_cast<std::size_t>(pos - 1)]; }

    void set(Int pos, Color c)
    {
        check(pos);
        cells_[static_cast<std::size_t>(pos - 1)] = c;
    }

    [[nodiscard]] std::string to_string() const
    {
        std::string s;
        s.reserve(cells_.size());
        for (Color c : cells_)
            s.push_back(to_char(c));
        return s;
    }

    [[nodiscard]] Coloring restricted(Int m) const
    {
        if (m < 0 || m > size())
            throw std::out_of_range("restriction beyond coloring domain");
        Coloring out;
        out.cells_.assign(cells_.begin(), cells_.begin() + m);
        return out;
    }

    [[nodiscard]] Coloring swapped() const
    {
        Coloring out = *this;
        for (Color& c : out.cells_)
            c = complement(c);
        return out;
    }

    [[nodiscard]] std::vector<Int> positions_of(Color c) const
    {
        std::vector<Int> out;
        for (std::size_t i = 0; i < cells_.size(); ++i)
            if (cells_[i] == c)
                out.push_back(static_cast<Int>(i + 1));
        return out;
    }

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    void check(Int pos) const
    {
        if (pos < 1 || pos > size())
            throw std::out_of_range("position " + std::to_string(pos) + " outside [1, " +
                                    std::to_string(size()) + "]");
    }

    std::vector<Color> cells_;
};

/// Coloring of [1, n] with some positions left unset.
class PartialColoring {
public:
    PartialColoring() = default;
    explicit PartialColoring(Int n) : cells_(static_cast<std::size_t>(n), 0)
    {
        if (n < 0)
            throw std::invalid_argument("coloring size must be non-negative");
    }

    explicit PartialColoring(const Coloring& total) : PartialColoring(total.size())
    {
        for (Int i = 1; i <= total.size(); ++i)
            assign(i, total[i]);
    }

    [[nodiscard]] Int size() const noexcept { return static_cast<Int>(cells_.size()); }

    [[nodiscard]] bool in_range(Int pos) const noexcept { return pos >= 1 && pos <= size(); }

    [[nodiscard]] std::optional<Color> at(Int pos) const
    {
        check(pos);
        const auto raw = cells_[static_cast<std::size_t>(pos - 1)];
        if (raw == 0)
            return std::nullopt;
        return static_cast<Color>(raw);
    }

    [[nodiscard]] bool is_set(Int pos) const { return at(pos).has_value(); }

    void assign(Int pos, Color c)
    {
        check(pos);
        cells_[static_cast<std::size_t>(pos - 1)] = static_cast<std::uint8_t>(c);
    }

    void unset(Int pos)
    {
        check(pos);
        cells_[static_cast<std::size_t>(pos - 1)] = 0;
    }

    [[nodiscard]] Int assigned_count() const noexcept
    {
        return static_cast<Int>(std::count_if(cells_.begin(), cells_.end(), [](auto v) { return v != 0; }));
    }

    [[nodiscard]] bool is_total() const noexcept { return assigned_count() == size(); }

    /// Throws if any position is unset.
    [[nodiscard]] Coloring to_total() const
    {
        Coloring out(size());
        for (Int i = 1; i <= size(); ++i) {
            auto c = at(i);
            if (!c)
                throw std::logic_error("position " + std::to_string(i) + " is unset");
            out.set(i, *c);
        }
        return out;
    }

    /// '.' marks unset positions.
    [[nodiscard]] std::string to_string() const
    {
        std::string s;
        for (auto v : cells_)
            s.push_back(v == 0 ? '.' : to_char(static_cast<Color>(v)));
        return s;
    }

    friend bool operator==(const PartialColoring&, const PartialColoring&) = default;

private:
    void check(Int pos) const
    {
        if (!in_range(pos))
            throw std::out_of_range("position " + std::to_string(pos) + " outside [1, " +
                                    std::to_string(size()) + "]");
    }

    std::vector<std::uint8_t> cells_;
};

struct Violation {
    SolutionTriple triple;
    Color color = Color::Red;
};

struct Verdict {
    std::optional<Violation> violation;

    [[nodiscard]] bool valid() const noexcept { return !violation.has_value(); }
    explicit operator bool() const noexcept { return valid(); }
};

namespace detail {

inline std::optional<SolutionTriple> first_monochromatic(const Coloring& col, const LinearEquation& eq, Color color)
{
    for (auto& t : solutions_in_range(eq, col.size()))
        if (col[t.x] == color && col[t.y] == color && col[t.z] == color)
            return std::move(t);
    return std::nullopt;
}

} // namespace detail

/// Valid iff no all-Red solution of e_red and no all-Blue solution of e_blue lies in [1, n].
/// The reported violation is the first one in enumeration order, e_red's solutions first.
inline Verdict is_valid_coloring(const Coloring& col, const LinearEquation& e_red, const LinearEquation& e_blue)
{
    if (auto t = detail::first_monochromatic(col, e_red, Color::Red))
        return Verdict{Violation{std::move(*t), Color::Red}};
    if (auto t = detail::first_monochromatic(col, e_blue, Color::Blue))
        return Verdict{Violation{std::move(*t), Color::Blue}};
    return Verdict{};
}

/// Coloring of the positive integers that depends only on the residue mod period.
struct PeriodicCertificate {
    Int period = 1;
    std::vector<Color> residue_colors; // indexed by residue 0..period-1

    [[nodiscard]] Color color_of(Int m) const
    {
        const Int r = ((m % period) + period) % period;
        return residue_colors.at(static_cast<std::size_t>(r));
    }

    [[nodiscard]] bool well_formed() const noexcept
    {
        return period >= 1 && residue_colors.size() == static_cast<std::size_t>(period);
    }

    /// Residue colors as an {R, B} string, residue 0 first.
    [[nodiscard]] std::string pattern() const
    {
        std::string s;
        for (Color c : residue_colors)
            s.push_back(to_char(c));
        return s;
    }

    friend bool operator==(const PeriodicCertificate&, const PeriodicCertificate&) = default;
};

/// Blue on odd, Red on even.
inline PeriodicCertificate parity_certificate()
{
    return PeriodicCertificate{2, {Color::Red, Color::Blue}};
}

inline Coloring restrict_periodic(const PeriodicCertificate& cert, Int n)
{
    if (!cert.well_formed())
        throw std::invalid_argument("malformed periodic certificate");
    Coloring out(n);
    for (Int m = 1; m <= n; ++m)
        out.set(m, cert.color_of(m));
    return out;
}

} // namespace rado
