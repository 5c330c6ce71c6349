#include "oracles.hpp"
#include "rado/certificates.hpp"

#include <gtest/gtest.h>

using namespace rado;

namespace {

bool finite_case(Int c, Int q)
{
    return c % 2 == 0 || q % 2 == 0;
}

// Independent residue-closure check: color every integer by its residue and test the equations
// on residues directly.
bool oracle_closed(const std::vector<char>& pattern, oracle::Eq red, oracle::Eq blue)
{
    const long p = static_cast<long>(pattern.size());
    auto color = [&](long v) { return pattern[static_cast<std::size_t>(((v % p) + p) % p)]; };
    for (long r1 = 0; r1 < p; ++r1)
        for (long r2 = 0; r2 < p; ++r2) {
            if (pattern[r1] != pattern[r2])
                continue;
            const auto& e = pattern[r1] == 'R' ? red : blue;
            if (color(e.a * r1 + e.b * r2 + e.c) == pattern[r1])
                return false;
        }
    return true;
}

} // namespace

TEST(FormulaR2, Examples)
{
    EXPECT_TRUE(formula_R2(1, 1).is_infinite());
    EXPECT_EQ(formula_R2(2, 1), FiniteOrInfinite::finite(8));
    EXPECT_EQ(formula_R2(1, 2), FiniteOrInfinite::finite(11));
    EXPECT_EQ(formula_R2(2, 2), FiniteOrInfinite::finite(15));
    EXPECT_EQ(formula_R2(3, 3).to_string(), "INF");
    EXPECT_EQ(formula_R2(4, 1).to_string(), "12");
}

TEST(FormulaR2, RejectsOutsideDomain)
{
    EXPECT_THROW(formula_R2(0, 1), std::domain_error);
    EXPECT_THROW(formula_R2(-2, 2), std::domain_error);
    EXPECT_THROW(formula_R2(2, 0), std::domain_error);
}

TEST(FamilyStatus, FlagsCZero)
{
    const auto s = family_status(LinearEquation{1, 1, 0}, LinearEquation{1, 2, 0});
    EXPECT_TRUE(s.in_family);
    EXPECT_FALSE(s.formula_applicable);
    EXPECT_NE(s.note.find("not applicable"), std::string::npos);
    EXPECT_FALSE(family_status(LinearEquation{2, 1, 1}, LinearEquation{1, 2, 0}).in_family);
    EXPECT_EQ(default_bound(LinearEquation{1, 1, 2}, LinearEquation{1, 1, 0}), 32);
    EXPECT_EQ(default_bound(LinearEquation{1, 1, 1}, LinearEquation{1, 1, 0}), 64);
}

TEST(ConstructionCase2, Examples)
{
    const auto s2 = construction_case2(2);
    EXPECT_EQ(s2.red_intervals, (std::vector<Interval>{{1, 3}}));
    EXPECT_EQ(s2.blue_intervals, (std::vector<Interval>{{4, 7}}));
    EXPECT_EQ(paper_coloring_case2(2).to_string(), "RRRBBBB");
    EXPECT_EQ(paper_coloring_case2(4).to_string(), "RRRRRBBBBBB");
    EXPECT_THROW(construction_case2(3), std::domain_error);
}

TEST(ConstructionCase3, Examples)
{
    EXPECT_EQ(paper_coloring_case3(1, 2).to_string(), "RRBBBBBBRR");
    const auto s = construction_case3(2, 2);
    EXPECT_EQ(s.red_intervals, (std::vector<Interval>{{1, 3}, {12, 14}}));
    EXPECT_EQ(s.blue_intervals, (std::vector<Interval>{{4, 11}}));
    EXPECT_EQ(s.domain_top, 14);
    EXPECT_THROW(construction_case3(3, 3), std::domain_error);
    EXPECT_THROW(construction_case3(2, 1), std::domain_error);
}

TEST(Constructions, ValidOnFullDomainAcrossGrid)
{
    for (Int c = 1; c <= 8; ++c)
        for (Int q = 1; q <= 6; ++q) {
            if (!finite_case(c, q))
                continue;
            const auto [red, blue] = family_equations(c, q);
            const auto col = q == 1 ? paper_coloring_case2(c) : paper_coloring_case3(c, q);
            EXPECT_EQ(col.size(), formula_R2(c, q).value() - 1) << "c=" << c << " q=" << q;
            EXPECT_TRUE(is_valid_coloring(col, red, blue).valid()) << "c=" << c << " q=" << q;
            EXPECT_TRUE(oracle::valid(col.to_string(), {1, 1, c}, {1, q, 0})) << "c=" << c << " q=" << q;
        }
}

TEST(CheckPeriodicCertificate, Examples)
{
    EXPECT_TRUE(check_periodic_certificate(parity_certificate(), LinearEquation{1, 1, 1}, LinearEquation{1, 1, 0}));
    EXPECT_FALSE(check_periodic_certificate(PeriodicCertificate{1, {Color::Red}}, LinearEquation{1, 1, 1},
                                            LinearEquation{1, 1, 0}));
    EXPECT_FALSE(check_periodic_certificate(parity_certificate(), LinearEquation{1, 1, 2}, LinearEquation{1, 1, 0}));
    EXPECT_FALSE(check_periodic_certificate(PeriodicCertificate{2, {Color::Red}}, LinearEquation{1, 1, 1},
                                            LinearEquation{1, 1, 0}));
}

TEST(FindPeriodicCertificate, Examples)
{
    const auto a = find_periodic_certificate(LinearEquation{1, 1, 1}, LinearEquation{1, 1, 0}, 2);
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(*a, parity_certificate());
    const auto b = find_periodic_certificate(LinearEquation{1, 1, 3}, LinearEquation{1, 3, 0}, 2);
    ASSERT_TRUE(b.has_value());
    EXPECT_EQ(*b, parity_certificate());
    EXPECT_FALSE(find_periodic_certificate(LinearEquation{1, 1, 2}, LinearEquation{1, 1, 0}, 8).has_value());
    EXPECT_THROW(find_periodic_certificate(LinearEquation{1, 1, 2}, LinearEquation{1, 1, 0}, 0),
                 std::invalid_argument);
}

TEST(FindPeriodicCertificate, AbsenceMatchesResidueOracle)
{
    // Every residue pattern up to period 8 fails for even c with q = 1.
    const oracle::Eq red{1, 1, 2}, blue{1, 1, 0};
    for (long p = 1; p <= 8; ++p)
        for (std::uint32_t mask = 0; mask < (1U << p); ++mask) {
            std::vector<char> pattern(static_cast<std::size_t>(p));
            for (long r = 0; r < p; ++r)
                pattern[static_cast<std::size_t>(r)] = mask >> r & 1U ? 'B' : 'R';
            ASSERT_FALSE(oracle_closed(pattern, red, blue));
        }
}

TEST(FindPeriodicCertificate, AgreesWithResidueOracleOnSmallFamilies)
{
    for (Int c = 1; c <= 5; ++c)
        for (Int q = 1; q <= 5; ++q) {
            const auto [red, blue] = family_equations(c, q);
            for (Int p = 1; p <= 6; ++p)
                for (std::uint32_t mask = 0; mask < (1U << p); ++mask) {
                    PeriodicCertificate cert{p, {}};
                    std::vector<char> pattern;
                    for (Int r = 0; r < p; ++r) {
                        const bool b = mask >> r & 1U;
                        cert.residue_colors.push_back(b ? Color::Blue : Color::Red);
                        pattern.push_back(b ? 'B' : 'R');
                    }
                    ASSERT_EQ(check_periodic_certificate(cert, red, blue),
                              oracle_closed(pattern, {1, 1, c}, {1, q, 0}))
                        << "c=" << c << " q=" << q << " " << cert.pattern();
                }
        }
}

TEST(PeriodicCertificate, SoundOnPrefixesUpTo300)
{
    for (Int c = 1; c <= 5; ++c)
        for (Int q = 1; q <= 5; ++q) {
            const auto [red, blue] = family_equations(c, q);
            const auto cert = find_periodic_certificate(red, blue, 6);
            if (!cert)
                continue;
            ASSERT_TRUE(check_periodic_certificate(*cert, red, blue));
            for (Int n : {1, 2, 3, 7, 50, 123, 300})
                ASSERT_TRUE(is_valid_coloring(restrict_periodic(*cert, n), red, blue).valid())
                    << "c=" << c << " q=" << q << " n=" << n;
        }
}

TEST(PeriodicCertificate, FoundExactlyForOddOddUpToPeriod6)
{
    for (Int c = 1; c <= 5; ++c)
        for (Int q = 1; q <= 5; ++q) {
            const auto [red, blue] = family_equations(c, q);
            EXPECT_EQ(find_periodic_certificate(red, blue, 6).has_value(), !finite_case(c, q))
                << "c=" << c << " q=" << q;
        }
}

TEST(Certify, Examples)
{
    const auto a = certify(2, 1, 20);
    EXPECT_TRUE(a.agree());
    EXPECT_EQ(a.agreement, Agreement::Exact);
    ASSERT_TRUE(std::holds_alternative<FiniteResult>(a.solver));
    EXPECT_EQ(std::get<FiniteResult>(a.solver).value, 8);

    const auto b = certify(1, 2, 30);
    EXPECT_EQ(b.agreement, Agreement::Exact);
    EXPECT_EQ(std::get<FiniteResult>(b.solver).value, 11);
    ASSERT_TRUE(b.construction.has_value());
    EXPECT_TRUE(b.construction->verdict.valid());
    EXPECT_EQ(b.construction->domain_top, 10);

    const auto inf = certify(1, 1, 40);
    EXPECT_EQ(inf.agreement, Agreement::ViaCertificate);
    ASSERT_TRUE(inf.certificate.has_value());
    EXPECT_EQ(*inf.certificate, parity_certificate());
    ASSERT_TRUE(std::holds_alternative<UnknownResult>(inf.solver));
    EXPECT_EQ(std::get<UnknownResult>(inf.solver).bound, 40);

    EXPECT_THROW(certify(0, 1, 20), std::domain_error);
}
