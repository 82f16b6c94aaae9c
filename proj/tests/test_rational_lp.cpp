#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lp_oracle.hpp"

#include <vcsp/errors.hpp>
#include <vcsp/linear_system.hpp>
#include <vcsp/rational.hpp>

#include <random>

using namespace vcsp;

namespace
{
    auto row(std::vector<long> a, long b, RowKind kind) -> LinearRow
    {
        LinearRow r;
        for (auto v : a)
            r.coefficients.emplace_back(v);
        r.rhs = b;
        r.kind = kind;
        return r;
    }

    auto random_system(std::mt19937 & rng, std::size_t max_vars, std::size_t max_rows, bool constant) -> LinearSystem
    {
        std::uniform_int_distribution<std::size_t> nv(0, max_vars), nr(0, max_rows);
        std::uniform_int_distribution<int> coef(-3, 3), kind(0, 2);
        LinearSystem s;
        s.num_vars = nv(rng);
        s.has_free_constant = constant;
        auto rows = nr(rng);
        for (std::size_t j = 0; j < rows; ++j) {
            LinearRow r;
            for (std::size_t i = 0; i < s.num_vars; ++i)
                r.coefficients.emplace_back(coef(rng));
            r.rhs = coef(rng);
            r.kind = kind(rng) == 0 ? RowKind::Eq : RowKind::Geq;
            s.rows.push_back(r);
        }
        return s;
    }
}

TEST_CASE("rational text round trip")
{
    CHECK(format_rational(parse_rational("2/4")) == "1/2");
    CHECK(format_rational(parse_rational("-6/3")) == "-2");
    CHECK(format_rational(parse_rational("0")) == "0");
    CHECK(parse_rational("-1/3") == Rational(-1, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("+3"), ParseError);
    CHECK_THROWS_AS(parse_rational("3/-4"), ParseError);
}

TEST_CASE("extended rationals")
{
    ExtendedRational a(Rational(3, 2)), b(2);
    CHECK((a + b).to_string() == "7/2");
    CHECK((a + INF).is_infinite());
    CHECK((INF + INF).is_infinite());
    CHECK(a < INF);
    CHECK(ExtendedRational(-100000) < a);
    CHECK(INF == INF);
    CHECK_FALSE(INF < INF);
    CHECK(INF.scaled(Rational(1, 3)).is_infinite());
    CHECK(INF.scaled(0) == ExtendedRational(0));
    CHECK(INF.scaled_keeping_infinity(0).is_infinite());
    CHECK(a.scaled(2) == ExtendedRational(3));
    CHECK_THROWS_AS(a.scaled(-1), StructuralError);
    CHECK_THROWS_AS(INF.value(), StructuralError);
    CHECK(ExtendedRational::parse("inf").is_infinite());
    CHECK(ExtendedRational::parse("4/6").to_string() == "2/3");
    CHECK_THROWS_AS(ExtendedRational::parse("infinity"), ParseError);
}

TEST_CASE("farkas: empty system is solvable with C = 0")
{
    LinearSystem s;
    auto result = solve_farkas(s);
    REQUIRE(std::holds_alternative<FarkasSolution>(result));
    auto & sol = std::get<FarkasSolution>(result);
    CHECK(sol.values.empty());
    CHECK(sol.constant == 0);
}

TEST_CASE("farkas: z = 1 + C")
{
    LinearSystem s{1, {row({1}, 1, RowKind::Eq)}};
    auto result = solve_farkas(s);
    REQUIRE(std::holds_alternative<FarkasSolution>(result));
    auto & sol = std::get<FarkasSolution>(result);
    CHECK(sol.values[0] - sol.constant == 1);
    CHECK(sgn(sol.values[0]) >= 0);
}

TEST_CASE("farkas: contradictory constant rows give a certificate")
{
    LinearSystem s{0, {row({}, 0, RowKind::Eq), row({}, 1, RowKind::Geq)}};
    auto result = solve_farkas(s);
    REQUIRE(std::holds_alternative<FarkasCertificate>(result));
    auto & y = std::get<FarkasCertificate>(result).multipliers;
    REQUIRE(y.size() == 2);
    CHECK(y[0] == -y[1]);
    CHECK(sgn(y[1]) > 0);
    CHECK(certifies(s, FarkasCertificate{{Rational(-1), Rational(1)}}));
    CHECK_FALSE(certifies(s, FarkasCertificate{{Rational(1), Rational(-1)}}));
}

TEST_CASE("farkas: hand-checked certificates and solutions")
{
    // z1 + z2 = 1 + C together with z1 + z2 >= 2 + C is infeasible.
    LinearSystem s{2, {row({1, 1}, 1, RowKind::Eq), row({1, 1}, 2, RowKind::Geq)}};
    auto result = solve_farkas(s);
    REQUIRE(std::holds_alternative<FarkasCertificate>(result));

    // Without the constant, -z >= 1 has no non-negative solution.
    LinearSystem t{1, {row({-1}, 1, RowKind::Geq)}, false};
    REQUIRE(std::holds_alternative<FarkasCertificate>(solve_farkas(t)));

    // With the constant it does: C = -1 - z.
    t.has_free_constant = true;
    REQUIRE(std::holds_alternative<FarkasSolution>(solve_farkas(t)));
}

TEST_CASE("farkas: malformed rows are rejected")
{
    LinearSystem s{2, {row({1}, 0, RowKind::Eq)}};
    CHECK_THROWS_AS(solve_farkas(s), StructuralError);
}

TEST_CASE("farkas agrees with vertex enumeration on random systems")
{
    std::mt19937 rng(12345);
    for (int k = 0; k < 400; ++k) {
        auto s = random_system(rng, 5, 8, k % 4 != 0);
        auto result = solve_farkas(s);
        bool feasible = std::holds_alternative<FarkasSolution>(result);
        if (feasible)
            CHECK(satisfies(s, std::get<FarkasSolution>(result)));
        else
            CHECK(certifies(s, std::get<FarkasCertificate>(result)));
        CHECK(feasible == oracle::feasible(s));
    }
}

TEST_CASE("farkas is deterministic")
{
    std::mt19937 rng(7);
    for (int k = 0; k < 50; ++k) {
        auto s = random_system(rng, 5, 8, true);
        auto a = solve_farkas(s), b = solve_farkas(s);
        REQUIRE(a.index() == b.index());
        if (a.index() == 0)
            CHECK(std::get<0>(a).values == std::get<0>(b).values);
        else
            CHECK(std::get<1>(a).multipliers == std::get<1>(b).multipliers);
    }
}

TEST_CASE("gordan examples")
{
    {
        LinearSystem s{1, {row({0}, 0, RowKind::Eq)}};
        auto r = solve_gordan(s);
        REQUIRE(std::holds_alternative<GordanSolution>(r));
        CHECK(std::get<GordanSolution>(r).values[0] == 1);
    }
    {
        LinearSystem s{1, {row({1}, 0, RowKind::Eq)}};
        auto r = solve_gordan(s);
        REQUIRE(std::holds_alternative<GordanSeparator>(r));
        CHECK(std::get<GordanSeparator>(r).multipliers[0] > 0);
    }
    {
        LinearSystem s{2, {row({1, -1}, 0, RowKind::Eq)}};
        auto r = solve_gordan(s);
        REQUIRE(std::holds_alternative<GordanSolution>(r));
        auto & z = std::get<GordanSolution>(r).values;
        CHECK(z[0] == z[1]);
        CHECK(sgn(z[0]) > 0);
    }
    {
        LinearSystem s{1, {row({1}, 1, RowKind::Eq)}};
        CHECK_THROWS_AS(solve_gordan(s), StructuralError);
    }
}

TEST_CASE("gordan on random homogeneous systems")
{
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int k = 0; k < 200; ++k) {
        LinearSystem s;
        s.num_vars = 1 + k % 4;
        for (int j = 0; j < k % 5; ++j) {
            LinearRow r;
            for (std::size_t i = 0; i < s.num_vars; ++i)
                r.coefficients.emplace_back(coef(rng));
            r.kind = RowKind::Eq;
            s.rows.push_back(r);
        }
        auto result = solve_gordan(s);
        if (auto * z = std::get_if<GordanSolution>(&result))
            CHECK(satisfies(s, *z));
        else
            CHECK(certifies(s, std::get<GordanSeparator>(result)));

        LinearSystem scaled = s;
        scaled.has_free_constant = false;
        scaled.rows.push_back(row(std::vector<long>(s.num_vars, 1), 1, RowKind::Geq));
        CHECK(std::holds_alternative<GordanSolution>(result) == oracle::feasible(scaled));
    }
}
