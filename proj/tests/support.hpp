#pragma once

// Helpers shared by the unit and acceptance tests.

#include <regex>
#include <string>
#include <vector>

#include "qmap/chowring.hpp"
#include "qmap/config.hpp"

namespace qmap::testing {

inline Rational q(const std::string& s) { return parse_rational(s); }

inline CurveClass cls(std::initializer_list<const char*> values) {
    QVec v;
    for (const char* s : values) v.push_back(parse_rational(s));
    return CurveClass(v);
}

inline QVec qvec(std::initializer_list<const char*> values) {
    QVec v;
    for (const char* s : values) v.push_back(parse_rational(s));
    return v;
}

/// A polynomial in t1..tr (H when r = 1) and nonnegative powers of z,
/// e.g. tz("3*H*z^2 + 1", 1).
inline TPoly tz(const std::string& text, int r) {
    std::string s = std::regex_replace(text, std::regex("\\bH\\b"), "x1");
    s = std::regex_replace(s, std::regex("\\bt([0-9]+)\\b"), "x$1");
    s = std::regex_replace(s, std::regex("\\bz\\b"), "x" + std::to_string(r + 1));
    QPoly p = parse_polynomial(s);
    TPoly out;
    for (const auto& [m, c] : p.terms()) {
        Monomial tm;
        int zexp = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (static_cast<int>(i) < r)
                tm.push_back(m[i]);
            else
                zexp = m[i];
        }
        strip(tm);
        CoeffFunction coef(c);
        for (int k = 0; k < zexp; ++k) coef *= CoeffFunction::z();
        out.add_term(tm, coef);
    }
    return out;
}

/// z^{-k}.
inline CoeffFunction z_inverse_power(int k) {
    CoeffFunction out(1);
    for (int i = 0; i < k; ++i) out = out / CoeffFunction::z();
    return out;
}

/// The t-monomial x with coefficient c * z^{-zpow}.
inline TPoly term(const Monomial& m, const Rational& c, int zpow) {
    TPoly out;
    out.add_term(make_monomial(m), z_inverse_power(zpow) * c);
    return out;
}

}  // namespace qmap::testing
