#include <doctest.h>

#include <algorithm>
#include <random>

#include "../support.hpp"
#include "qmap/errors.hpp"
#include "qmap/gitdata.hpp"

using namespace qmap;
using namespace qmap::testing;

namespace {

// Caratheodory in rank <= 2 with Cramer's rule: theta is a nonnegative
// combination of at most two of the vectors.
bool cone_oracle(const std::vector<IntVec>& vs, const IntVec& theta) {
    long t0 = theta[0], t1 = theta.size() > 1 ? theta[1] : 0;
    if (t0 == 0 && t1 == 0) return true;
    for (const auto& v : vs) {
        long v0 = v[0], v1 = v.size() > 1 ? v[1] : 0;
        if (v0 * t1 - v1 * t0 == 0 && v0 * t0 + v1 * t1 > 0) return true;
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            if (theta.size() < 2) continue;
            long a0 = vs[i][0], a1 = vs[i][1], b0 = vs[j][0], b1 = vs[j][1];
            long det = a0 * b1 - a1 * b0;
            if (det == 0) continue;
            long x = t0 * b1 - t1 * b0, y = a0 * t1 - a1 * t0;
            if (det < 0) x = -x, y = -y;
            if (x >= 0 && y >= 0) return true;
        }
    return false;
}

std::vector<std::vector<int>> brute_unstable(const GitPresentation& p, const std::vector<int>& subset) {
    std::size_t n = subset.size();
    std::vector<std::uint32_t> unstable;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        std::vector<IntVec> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (!(s >> i & 1)) rest.push_back(p.weights[subset[i]]);
        if (!cone_oracle(rest, p.theta)) unstable.push_back(s);
    }
    std::vector<std::vector<int>> out;
    for (auto s : unstable) {
        bool minimal = std::none_of(unstable.begin(), unstable.end(),
                                    [&](std::uint32_t t) { return t != s && (t & s) == t; });
        if (!minimal) continue;
        std::vector<int> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (s >> i & 1) idx.push_back(subset[i]);
        out.push_back(idx);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> all_indices(const GitPresentation& p) {
    std::vector<int> v(p.weights.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
    return v;
}

std::size_t inverse_index(const WeylGroup& w, std::size_t i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
        bool ok = true;
        for (std::size_t a = 0; a < w.elements()[i].size() && ok; ++a) {
            IntVec e(w.elements()[i].size(), 0);
            e[a] = 1;
            ok = w.act_on_character(j, w.act_on_character(i, e)) == e;
        }
        if (ok) return j;
    }
    FAIL("no inverse");
    return 0;
}

}  // namespace

TEST_CASE("validate") {
    auto p2 = validate(projective_space(2));
    CHECK(p2.ok());
    CHECK(p2.warnings.empty());

    GitPresentation bad{1, {{1}, {-1}}, {1}};
    CHECK_FALSE(validate(bad).ok());

    auto g = grassmannian(2, 4);
    CHECK(validate(g).ok());
    g.e_weights = {{1, 0}};
    auto r = validate(g);
    CHECK_FALSE(r.ok());
    bool mentions = std::any_of(r.errors.begin(), r.errors.end(),
                                [](const std::string& e) { return e.find("e_weights") != std::string::npos; });
    CHECK(mentions);

    GitPresentation broken{2, {{1}, {1, 0}}, {1, 1}};
    CHECK_FALSE(structural_errors(broken).empty());
}

TEST_CASE("unstable supports") {
    auto p2 = projective_space(2);
    CHECK(unstable_supports(p2, all_indices(p2)) == std::vector<std::vector<int>>{{0, 1, 2}});
    auto g = grassmannian(2, 4);
    CHECK(unstable_supports(g, all_indices(g)) == std::vector<std::vector<int>>{{0, 1, 2, 3}, {4, 5, 6, 7}});
    CHECK(unstable_supports(g, {}) == std::vector<std::vector<int>>{{}});
}

TEST_CASE("unstable supports agree with subset brute force") {
    std::mt19937 rng(20261016);
    std::uniform_int_distribution<int> entry(-2, 3), count(1, 10), rank(1, 2);
    for (int trial = 0; trial < 150; ++trial) {
        GitPresentation p;
        p.torus_rank = rank(rng);
        int n = count(rng);
        for (int i = 0; i < n; ++i) {
            IntVec w;
            for (int a = 0; a < p.torus_rank; ++a) w.push_back(entry(rng));
            p.weights.push_back(w);
        }
        do {
            p.theta.clear();
            for (int a = 0; a < p.torus_rank; ++a) p.theta.push_back(entry(rng));
        } while (std::all_of(p.theta.begin(), p.theta.end(), [](long x) { return x == 0; }));
        std::vector<int> subset;
        for (int i = 0; i < n; ++i)
            if (rng() % 4 != 0) subset.push_back(i);
        auto got = unstable_supports(p, subset);
        std::sort(got.begin(), got.end());
        CHECK(got == brute_unstable(p, subset));
    }
}

TEST_CASE("sectors and the involution") {
    auto p = weighted_projective({1, 1, 2});
    auto s = sector_of(cls({"1/2"}), p);
    CHECK(s.fracs == qvec({"1/2", "1/2", "0"}));
    CHECK(s.fixed_support == std::vector<int>{2});
    CHECK(s.order == 2);
    CHECK(sector_of(cls({"-1/2"}), p).fracs == qvec({"1/2", "1/2", "0"}));
    auto u = sector_of(cls({"3"}), p);
    CHECK(u.is_untwisted());
    CHECK(u.fixed_support == std::vector<int>{0, 1, 2});

    Sector t;
    t.element = qvec({"1/3"});
    t.fracs = qvec({"1/3", "2/3", "0"});
    t.fixed_support = {2};
    t.order = 3;
    auto ti = involute(t);
    CHECK(ti.fracs == qvec({"2/3", "1/3", "0"}));
    CHECK(ti.fixed_support == std::vector<int>{2});
    CHECK(involute(ti) == t);
    CHECK(involute(u) == u);

    std::mt19937 rng(7);
    auto g = grassmannian(2, 4);
    for (int i = 0; i < 50; ++i) {
        auto beta = CurveClass({make_rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 5)),
                                make_rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 5))});
        auto sec = sector_of(beta, g);
        CHECK(involute(involute(sec)) == sec);
    }
}

TEST_CASE("sector orders") {
    CHECK(sector_orders(projective_space(2)) == std::set<long>{1});
    CHECK(sector_orders(weighted_projective({1, 1, 2})) == std::set<long>{1, 2});
    CHECK(sector_orders(grassmannian(2, 4)) == std::set<long>{1});
    CHECK(sector_orders(weighted_projective({1, 2, 3})) == std::set<long>{1, 2, 3});
    CHECK(default_denominator_bound(weighted_projective({1, 2, 3})) == 6);
}

TEST_CASE("fiber enumeration") {
    auto g = grassmannian(2, 4);
    auto fiber = enumerate_fiber(g, qvec({"1"}), q("1"), 1);
    std::sort(fiber.begin(), fiber.end());
    CHECK(fiber == std::vector<CurveClass>{cls({"0", "1"}), cls({"1", "0"})});
    CHECK(enumerate_fiber(projective_space(2), qvec({"2"}), q("5"), 1) == std::vector<CurveClass>{cls({"2"})});
    CHECK(enumerate_fiber(weighted_projective({1, 1, 2}), qvec({"1/2"}), q("3"), 2) ==
          std::vector<CurveClass>{cls({"1/2"})});

    auto classes = enumerate_classes(weighted_projective({1, 1, 2}), q("3"), 2);
    CHECK(classes.size() == 7);
    for (const auto& c : classes) CHECK(2 % sector_of(c, weighted_projective({1, 1, 2})).order == 0);

    // Every fiber is W-closed.
    WeylGroup w(g);
    for (int d = 0; d <= 3; ++d) {
        auto f = enumerate_fiber(g, {Rational(d)}, Rational(d), 1);
        CHECK(f.size() == static_cast<std::size_t>(d + 1));
        for (std::size_t i = 0; i < w.size(); ++i)
            for (const auto& b : f) CHECK(std::find(f.begin(), f.end(), w.act(i, b)) != f.end());
    }
}

TEST_CASE("theta on a wall makes enumeration unbounded") {
    GitPresentation p{2, {{1, 0}, {1, 0}, {0, 1}, {0, 1}}, {1, 0}};
    CHECK(validate(p).theta_on_wall);
    CHECK_THROWS_AS(enumerate_classes(p, q("1"), 1), UnboundedEnumeration);
}

TEST_CASE("Weyl orbits") {
    auto g = grassmannian(2, 4);
    WeylGroup w(g);
    CHECK(w.size() == 2);
    auto orbits = weyl_orbits(w, {cls({"1", "0"}), cls({"0", "1"})});
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0].representative == cls({"1", "0"}));
    CHECK(orbits[0].stabilizer == std::vector<std::size_t>{w.identity_index()});
    auto diag = weyl_orbits(w, {cls({"1", "1"})});
    REQUIRE(diag.size() == 1);
    CHECK(diag[0].stabilizer.size() == 2);
    CHECK_THROWS_AS(weyl_orbits(w, {cls({"1", "0"})}), std::invalid_argument);

    WeylGroup trivial(projective_space(2));
    CHECK(weyl_orbits(trivial, {cls({"1"}), cls({"2"})}).size() == 2);
}

TEST_CASE("fractional pairings are Weyl covariant") {
    auto g = grassmannian(3, 5);
    WeylGroup w(g);
    CHECK(w.size() == 6);
    std::mt19937 rng(11);
    std::vector<IntVec> chars = g.weights;
    chars.insert(chars.end(), g.roots.begin(), g.roots.end());
    for (int trial = 0; trial < 30; ++trial) {
        QVec v;
        for (int a = 0; a < 3; ++a) v.push_back(make_rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4)));
        CurveClass beta(v);
        for (std::size_t i = 0; i < w.size(); ++i) {
            auto inv = inverse_index(w, i);
            auto moved = w.act(i, beta);
            for (const auto& xi : chars)
                CHECK(frac(moved.pairing(xi)) == frac(beta.pairing(w.act_on_character(inv, xi))));
        }
    }
}
