#pragma once

// Exact rational functions in z and the equivariant parameters s_1..s_q.
//
// Variable 0 is z, variable p (p >= 1) is s_p. Every denominator that the
// factor calculus can produce is a product of homogeneous linear forms
// (k z + sigma(s)), so the denominator is stored factored. Each factor is
// normalized so its first nonzero coefficient is 1; scalars live in the
// numerator. No factor divides the numerator. This makes the representation
// canonical, and equality is structural.

#include <map>
#include <string>
#include <vector>

#include "qmap/polynomial.hpp"
#include "qmap/rational.hpp"

namespace qmap {

/// Coefficient vector of a normalized homogeneous linear form in (z, s).
using LinearKey = QVec;

class CoeffFunction {
public:
    using Factors = std::map<LinearKey, int>;

    CoeffFunction() = default;
    CoeffFunction(const Rational& c);  // NOLINT(google-explicit-constructor)
    CoeffFunction(long c) : CoeffFunction(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    explicit CoeffFunction(QPoly numerator);

    static CoeffFunction z();
    static CoeffFunction s(std::size_t p);  // p >= 1
    /// sum_i coeffs[i] * x_i with x_0 = z, x_p = s_p.
    static CoeffFunction linear(const QVec& coeffs);
    /// Rebuilds a value from serialized parts, normalizing it.
    static CoeffFunction from_parts(QPoly numerator, const Factors& denominator);

    const QPoly& numerator() const { return num_; }
    const Factors& denominator_factors() const { return den_; }
    /// Expanded denominator polynomial (monic in lex order z > s_1 > ...).
    QPoly denominator() const;

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const;
    /// Valid when is_constant().
    Rational constant_value() const;

    /// Multiplicative inverse. The numerator must be a nonzero constant times
    /// a product of linear forms that can be recognized: a monomial or a
    /// single linear form. Throws DivisionByZero or std::domain_error.
    CoeffFunction inverse() const;

    CoeffFunction operator-() const;
    CoeffFunction& operator+=(const CoeffFunction& o);
    CoeffFunction& operator-=(const CoeffFunction& o);
    CoeffFunction& operator*=(const CoeffFunction& o);
    CoeffFunction& operator*=(const Rational& q);

    friend CoeffFunction operator+(CoeffFunction a, const CoeffFunction& b) { return a += b; }
    friend CoeffFunction operator-(CoeffFunction a, const CoeffFunction& b) { return a -= b; }
    friend CoeffFunction operator*(CoeffFunction a, const CoeffFunction& b) { return a *= b; }
    friend CoeffFunction operator*(CoeffFunction a, const Rational& q) { return a *= q; }
    friend CoeffFunction operator/(const CoeffFunction& a, const CoeffFunction& b) { return a * b.inverse(); }

    friend bool operator==(const CoeffFunction& a, const CoeffFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const CoeffFunction& a, const CoeffFunction& b) { return !(a == b); }

    /// True when the denominator is a pure power of z.
    bool is_z_laurent() const;
    /// Exponent k of a z-Laurent denominator z^k.
    int z_power() const;

    /// Sets every s_p to 0. Throws DivisionByZero if a denominator factor
    /// vanishes there.
    CoeffFunction at_s_zero() const;

    /// Number of equivariant parameters mentioned.
    std::size_t num_parameters() const;

    /// Human-readable form "num/den" with variable names z, s1, s2, ...
    std::string str() const;

private:
    void normalize();

    QPoly num_;
    Factors den_;
};

inline bool is_zero(const CoeffFunction& c) { return c.is_zero(); }

enum class TextStyle { Plain, Latex };

std::string poly_str(const QPoly& p, const std::vector<std::string>& names, TextStyle style = TextStyle::Plain);

/// A coefficient written as a signed fraction with integral content pulled
/// out, e.g. -3*H/(4*z^3).
struct FractionText {
    bool negative = false;
    std::string numerator;  // "1" when empty
    bool compound = false;  // numerator is a bare multi-term sum
    std::string denominator;  // empty for a polynomial
    bool compound_denominator = false;

    std::string str(TextStyle style) const;
};

/// `extra` is appended to the numerator as a further factor.
FractionText fraction_text(const CoeffFunction& c, const std::vector<std::string>& names, TextStyle style,
                           const std::string& extra = "");
/// Variable names for the (z, s) ring: z, s1, s2, ...
std::vector<std::string> coeff_variable_names(std::size_t q);

}  // namespace qmap
