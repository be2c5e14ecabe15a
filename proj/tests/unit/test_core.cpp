#include <doctest.h>

#include "../support.hpp"
#include "qmap/errors.hpp"
#include "qmap/linalg.hpp"

using namespace qmap;
using namespace qmap::testing;

TEST_CASE("rational parsing and fractional parts") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK(parse_rational(" 7 / 3 ") == Rational(7, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK(frac(q("-1/3")) == q("2/3"));
    CHECK(frac(q("5/2")) == q("1/2"));
    CHECK(floor(q("-1/3")) == -1);
    CHECK(is_integer(q("4/2")));
    CHECK(lcm_denominators(qvec({"1/2", "1/3", "2"})) == 6);
    CHECK(lcm_denominators({}) == 1);
}

TEST_CASE("dense linear algebra over Q") {
    QMat m = to_qmat({{2, 1}, {1, 1}});
    CHECK(determinant(m) == 1);
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK(mat_mul(m, *inv) == identity(2));
    CHECK(rank(to_qmat({{1, 2}, {2, 4}})) == 1);
    CHECK_FALSE(inverse(to_qmat({{1, 2}, {2, 4}})));
    auto ns = nullspace(to_qmat({{1, 1, 1}}));
    CHECK(ns.size() == 2);
    for (const auto& v : ns) CHECK(v[0] + v[1] + v[2] == 0);
    auto c = solve_independent({to_qvec({1, 0}), to_qvec({1, 1})}, to_qvec({3, 2}));
    REQUIRE(c);
    CHECK(*c == qvec({"1", "2"}));
    CHECK_FALSE(solve_independent({to_qvec({1, 0})}, to_qvec({0, 1})));
}

TEST_CASE("polynomial arithmetic and exact linear division") {
    QPoly x = QPoly::variable(0), y = QPoly::variable(1);
    QPoly p = (x + y) * (x - y);
    CHECK(p == x * x - y * y);
    CHECK(p.degree() == 2);
    auto quotient = divide_by_linear(p, x - y);
    REQUIRE(quotient);
    CHECK(*quotient == x + y);
    CHECK_FALSE(divide_by_linear(p + QPoly(Rational(1)), x - y));
    CHECK(make_monomial({1, 0, 0}) == Monomial{1});
    CHECK(grevlex_greater(make_monomial({1, 1}), make_monomial({0, 2}), 2));
}

TEST_CASE("coefficient functions are canonical") {
    auto z = CoeffFunction::z();
    auto s = CoeffFunction::s(1);
    CoeffFunction a = ((z + s) / z) / (z + s);
    CHECK(a == CoeffFunction(1) / z);
    CHECK((CoeffFunction(2) * z) / (CoeffFunction(4) * z) == CoeffFunction(Rational(1, 2)));
    CHECK(a.is_z_laurent());
    CHECK(a.z_power() == 1);
    CoeffFunction b = CoeffFunction(1) / (z + s);
    CHECK_FALSE(b.is_z_laurent());
    CHECK(b.at_s_zero() == CoeffFunction(1) / z);
    CHECK_THROWS_AS((CoeffFunction(1) / s).at_s_zero(), DivisionByZero);
    CHECK_THROWS_AS(CoeffFunction(0).inverse(), DivisionByZero);
    CHECK((z - z).is_zero());
    CHECK(b.num_parameters() == 1);
}

TEST_CASE("coefficient text") {
    auto z = CoeffFunction::z();
    CHECK((CoeffFunction(1) / (z * z * Rational(2))).str() == "1/(2*z^2)");
    CHECK((CoeffFunction(Rational(-3, 4)) / (z * z * z)).str() == "-3/(4*z^3)");
    CHECK(CoeffFunction(5).str() == "5");
}
