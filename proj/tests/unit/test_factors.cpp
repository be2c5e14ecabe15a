#include <doctest.h>

#include <random>

#include "../support.hpp"
#include "qmap/errors.hpp"
#include "qmap/factors.hpp"

using namespace qmap;
using namespace qmap::testing;

namespace {

RingPtr untwisted_ring(const GitPresentation& p) {
    return SectorRing::build(p, sector_of(CurveClass(QVec(p.torus_rank, 0)), p));
}

// (xi(t) + k z) as a ring element.
RingElement linear(const RingPtr& ring, const IntVec& xi, const Rational& k) {
    return chern(ring, xi, ring->num_vars()) + RingElement::constant(ring, CoeffFunction::z() * k);
}

// Straight-line product over the k-range, by scanning a window of shifted
// integers. For b > 0 the returned product is the inverse of the factor.
RingElement straight_product(const RingPtr& ring, const IntVec& xi, const Rational& b) {
    RingElement out = RingElement::one(ring);
    Rational start = b - 20;
    for (int j = 0; j <= 40; ++j) {
        Rational k = start + j;
        bool in = sgn(b) > 0 ? (sgn(k) > 0 && k <= b) : (k > b && sgn(k) < 0);
        if (in) out *= linear(ring, xi, k);
    }
    return out;
}

}  // namespace

TEST_CASE("k ranges") {
    CHECK(k_range(q("0")).empty());
    CHECK(k_range(q("-3/2")) == qvec({"-1/2"}));
    CHECK(k_range(q("-2")) == qvec({"-1"}));
    CHECK(k_range(q("2")) == qvec({"1", "2"}));
    CHECK(k_range(q("5/3")) == qvec({"2/3", "5/3"}));
    CHECK(k_range(q("1/2")) == qvec({"1/2"}));
    CHECK(k_range(q("-1/2")).empty());
}

TEST_CASE("c factor examples") {
    auto p2 = untwisted_ring(projective_space(2));
    CHECK(c_factor(cls({"0"}), {1}, FactorVariant::Full, false, p2, 1) == RingElement::one(p2));
    CHECK(c_factor(cls({"-3/2"}), {1}, FactorVariant::Circle, false, p2, 1) == linear(p2, {1}, q("-1/2")));
    CHECK(c_factor(cls({"-2"}), {1}, FactorVariant::Full, false, p2, 1) ==
          chern(p2, {1}, 1) * linear(p2, {1}, q("-1")));

    // C-circle at pairing 2 is the inverse of (t + z)(t + 2z).
    TPoly expected = term({}, q("1/2"), 2) + term({1}, q("-3/4"), 3) + term({2}, q("7/8"), 4);
    CHECK(c_factor(cls({"2"}), {1}, FactorVariant::Circle, false, p2, 1).poly() == expected);
    CHECK(c_factor(cls({"2"}), {1}, FactorVariant::Circle, true, p2, 1) == RingElement(p2, tz("H^2 + 3*H*z + 2*z^2", 1)));

    CHECK_THROWS_AS(c_factor(cls({"-1"}), {1}, FactorVariant::Full, true, p2, 1), NonUnitInverse);
    CHECK_NOTHROW(c_factor(cls({"-1"}), {1}, FactorVariant::Circle, true, p2, 1));
}

TEST_CASE("c factors agree with the straight-line product") {
    std::mt19937 rng(101);
    auto ring = SectorRing::free(2, 4);
    int checked = 0;
    while (checked < 100) {
        QVec v{make_rational(static_cast<long>(rng() % 25) - 12, 1 + static_cast<long>(rng() % 4)),
               make_rational(static_cast<long>(rng() % 25) - 12, 1 + static_cast<long>(rng() % 4))};
        IntVec xi{static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2};
        CurveClass beta(v);
        Rational b = beta.pairing(xi);
        if (abs(b) > 6) continue;
        ++checked;
        auto prod = straight_product(ring, xi, b);
        auto circle = c_factor(beta, xi, FactorVariant::Circle, false, ring, 2);
        if (sgn(b) > 0)
            CHECK(circle * prod == RingElement::one(ring));
        else
            CHECK(circle == prod);
        auto inverted = c_factor(beta, xi, FactorVariant::Circle, true, ring, 2);
        CHECK(circle * inverted == RingElement::one(ring));
        auto full = c_factor(beta, xi, FactorVariant::Full, false, ring, 2);
        if (is_integer(b) && sgn(b) < 0)
            CHECK(full == circle * chern(ring, xi, 2));
        else
            CHECK(full == circle);
    }
}

TEST_CASE("the full and circle variants differ exactly at negative integers") {
    auto ring = SectorRing::free(1, 3);
    for (int num = -24; num <= 24; ++num)
        for (int den = 1; den <= 4; ++den) {
            Rational b(num, den);
            CurveClass beta({b});
            auto full = c_factor(beta, {1}, FactorVariant::Full, false, ring, 1);
            auto circle = c_factor(beta, {1}, FactorVariant::Circle, false, ring, 1);
            CHECK((full == circle) == !(is_integer(b) && sgn(b) < 0));
        }
}

TEST_CASE("root pair identity") {
    auto g = grassmannian(2, 4);
    auto ring = SectorRing::free(2, 8);
    for (int d = -6; d <= 6; ++d) {
        CurveClass beta({Rational(d), Rational(0)});
        auto w = weyl_numerator_factor(beta, g, ring);
        QPoly rho = QPoly::variable(0) - QPoly::variable(1);
        if (d == 0) {
            CHECK(w.delta_factors == std::vector<QPoly>{rho});
            CHECK(w.factor == RingElement(ring, tz("t1 - t2", 2)));
            continue;
        }
        // Factorwise: Delta * C(beta, rho)^{-1} * C(beta, -rho)^{-1}, with the
        // c_1 of the negative side cancelled against Delta.
        const IntVec pos{1, -1}, neg{-1, 1};
        const IntVec& up = d > 0 ? pos : neg;
        const IntVec& down = d > 0 ? neg : pos;
        auto up_inv = c_factor(beta, up, FactorVariant::Full, true, ring, 2);
        auto down_circle_inv = c_factor(beta, down, FactorVariant::Circle, true, ring, 2);
        // Delta / c_1(L_down) is rho / -rho or rho / rho.
        auto brute = up_inv * down_circle_inv.scaled(CoeffFunction(d > 0 ? -1 : 1));
        int sign = d % 2 == 0 ? 1 : -1;
        auto closed = RingElement(ring, tz("t1 - t2", 2) + tz(std::to_string(d) + "*z", 2)).scaled(CoeffFunction(sign));
        CHECK(brute == closed);
        CHECK(w.factor == closed);
    }
}

TEST_CASE("Weyl numerator examples") {
    auto g = grassmannian(2, 4);
    auto ring = SectorRing::free(2, 8);
    auto w = weyl_numerator_factor(cls({"1", "0"}), g, ring);
    CHECK(w.factor == RingElement(ring, tz("-t1 + t2 - z", 2)));
    CHECK(w.delta() == QPoly::variable(0) - QPoly::variable(1));

    auto half = weyl_numerator_factor(cls({"1/2", "0"}), g, ring);
    CHECK(half.delta_factors.empty());
    CHECK(half.factor == c_factor(cls({"1/2", "0"}), {1, -1}, FactorVariant::Full, true, ring, 2) *
                             c_factor(cls({"1/2", "0"}), {-1, 1}, FactorVariant::Full, true, ring, 2));

    // W-covariance: the swap sends the factor of beta to the factor of
    // w.beta, up to the sign of the Delta orientation.
    WeylGroup weyl(g);
    for (int d1 = 0; d1 <= 3; ++d1)
        for (int d2 = 0; d2 <= 3; ++d2) {
            CurveClass beta({Rational(d1), Rational(d2)});
            auto a = weyl_numerator_factor(beta, g, ring);
            auto b = weyl_numerator_factor(weyl.act(1, beta), g, ring);
            CHECK(weyl_act(weyl.elements()[1], a.factor) == b.factor.scaled(CoeffFunction(weyl.sign(1))));
        }
}

TEST_CASE("I-nonnegativity and Euler classes") {
    auto quintic = projective_space(4);
    quintic.e_weights = {{5}};
    for (int d = 0; d <= 5; ++d) CHECK(is_i_nonnegative(CurveClass({Rational(d)}), quintic));
    CHECK(is_i_nonnegative(cls({"1"}), projective_space(2)));
    GitPresentation p = projective_space(2);
    p.e_weights = {{-1}};
    CHECK_FALSE(is_i_nonnegative(cls({"1"}), p));
    CHECK(is_i_nonnegative(cls({"1/2"}), p));
    CHECK(negative_integral_e_weights(cls({"1"}), p) == std::vector<int>{0});

    auto ring = untwisted_ring(quintic);
    CHECK(euler_class(ring, {}, 1) == RingElement::one(ring));
    CHECK(euler_class(ring, {{5}}, 1) == RingElement(ring, tz("5*H", 1)));
    auto w = weighted_projective({1, 1, 2});
    auto point = SectorRing::build(w, sector_of(cls({"1/2"}), w));
    CHECK(euler_class(point, {{1}}, 1).is_zero());
}
