#pragma once

// Linear equations of the form a*x + b*y + c = z over the positive integers.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rado {

using Int = std::int64_t;

struct LinearEquation {
    Int coeff_x = 1;
    Int coeff_y = 1;
    Int constant = 0;
    std::string tag;

    LinearEquation() = default;
    LinearEquation(Int a, Int b, Int c, std::string label = {})
        : coeff_x(a), coeff_y(b), constant(c), tag(std::move(label))
    {
        if (a < 1 || b < 1)
            throw std::invalid_argument("equation coefficients must be positive");
    }

    /// z forced by (x, y). May be non-positive when the constant is negative.
    [[nodiscard]] constexpr Int eval(Int x, Int y) const noexcept
    {
        return coeff_x * x + coeff_y * y + constant;
    }

    [[nodiscard]] constexpr bool solves(Int x, Int y, Int z) const noexcept
    {
        return eval(x, y) == z;
    }

    [[nodiscard]] constexpr bool symmetric() const noexcept { return coeff_x == coeff_y; }

    /// Canonical text form, accepted back by parse_equation.
    [[nodiscard]] std::string to_string() const
    {
        std::ostringstream os;
        if (coeff_x != 1)
            os << coeff_x << '*';
        os << "x+";
        if (coeff_y != 1)
            os << coeff_y << '*';
        os << 'y';
        if (constant > 0)
            os << '+' << constant;
        else if (constant < 0)
            os << '-' << -constant;
        os << "=z";
        return os.str();
    }

    // Tags are labels only; they do not change the solution set.
    friend bool operator==(const LinearEquation& l, const LinearEquation& r) noexcept
    {
        return l.coeff_x == r.coeff_x && l.coeff_y == r.coeff_y && l.constant == r.constant;
    }
};

inline std::ostream& operator<<(std::ostream& os, const LinearEquation& eq)
{
    return os << eq.to_string();
}

struct SolutionTriple {
    Int x = 0;
    Int y = 0;
    Int z = 0;
    std::string equation_tag;

    friend bool operator==(const SolutionTriple& l, const SolutionTriple& r) noexcept
    {
        return l.x == r.x && l.y == r.y && l.z == r.z && l.equation_tag == r.equation_tag;
    }

    [[nodiscard]] bool contains(Int m) const noexcept { return x == m || y == m || z == m; }
};

inline std::ostream& operator<<(std::ostream& os, const SolutionTriple& t)
{
    os << '(' << t.x << ',' << t.y << ',' << t.z << ')';
    if (!t.equation_tag.empty())
        os << '_' << t.equation_tag;
    return os;
}

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

// Recursive-descent reader for  [INT '*'] 'x' '+' [INT '*'] 'y' [('+'|'-') INT] '=' 'z'.
class EquationReader {
public:
    explicit EquationReader(std::string_view text) : text_(text) {}

    LinearEquation read()
    {
        const std::size_t a_at = skip_ws();
        const Int a = coefficient('x');
        expect('+');
        const std::size_t b_at = skip_ws();
        const Int b = coefficient('y');
        Int c = 0;
        skip_ws();
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            const bool negative = text_[pos_] == '-';
            ++pos_;
            skip_ws();
            c = integer();
            if (negative)
                c = -c;
        }
        expect('=');
        expect('z');
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        if (a <= 0)
            throw ParseError("coefficient of x must be positive", a_at);
        if (b <= 0)
            throw ParseError("coefficient of y must be positive", b_at);
        return LinearEquation{a, b, c};
    }

private:
    std::size_t skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return pos_;
    }

    void expect(char ch)
    {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ch)
            throw ParseError(std::string("expected '") + ch + "'", pos_);
        ++pos_;
    }

    Int integer()
    {
        const std::size_t start = pos_;
        Int value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            if (value > (INT64_MAX - 9) / 10)
                throw ParseError("integer too large", start);
            value = value * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start)
            throw ParseError("expected integer", start);
        return value;
    }

    Int coefficient(char var)
    {
        skip_ws();
        Int value = 1;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = integer();
            expect('*');
        }
        expect(var);
        return value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses "x+y+2=z", "x + 3*y = z", "2*x+y-1=z". Throws ParseError.
inline LinearEquation parse_equation(std::string_view text)
{
    return detail::EquationReader{text}.read();
}

inline Int eval_triple(const LinearEquation& eq, Int x, Int y) noexcept
{
    return eq.eval(x, y);
}

/// All (x, y, z) in [1, n]^3 solving eq, ordered by z, then x, then y.
inline std::vector<SolutionTriple> solutions_in_range(const LinearEquation& eq, Int n)
{
    std::vector<SolutionTriple> out;
    if (n < 1)
        return out;
    for (Int z = 1; z <= n; ++z) {
        // a*x = z - c - b*y; iterate x and solve for y.
        for (Int x = 1; x <= n; ++x) {
            const Int rest = z - eq.constant - eq.coeff_x * x;
            if (rest < eq.coeff_y)
                break;
            if (rest % eq.coeff_y != 0)
                continue;
            const Int y = rest / eq.coeff_y;
            if (y <= n)
                out.push_back({x, y, z, eq.tag});
        }
    }
    return out;
}

inline std::vector<SolutionTriple> triples_containing(const LinearEquation& eq, Int m, Int n)
{
    std::vector<SolutionTriple> out;
    for (auto& t : solutions_in_range(eq, n))
        if (t.contains(m))
            out.push_back(std::move(t));
    return out;
}

} // namespace rado
