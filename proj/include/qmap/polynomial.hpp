#pragma once

// Sparse multivariate polynomials over an exact coefficient field.
//
// Monomials are exponent vectors with trailing zeros stripped, so a constant
// is the empty vector and polynomials in different numbers of variables mix
// freely. The coefficient type C needs +, -, *, scaling by Rational, a
// default-constructed zero and a free function is_zero(const C&).

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmap/rational.hpp"

namespace qmap {

using Monomial = std::vector<int>;

inline void strip(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

inline Monomial make_monomial(std::vector<int> exps) {
    strip(exps);
    return exps;
}

inline Monomial variable_monomial(std::size_t i, int power = 1) {
    Monomial m(i + 1, 0);
    m[i] = power;
    strip(m);
    return m;
}

inline int exponent(const Monomial& m, std::size_t i) { return i < m.size() ? m[i] : 0; }

inline int total_degree(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
    Monomial out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    strip(out);
    return out;
}

/// True if a divides b.
inline bool monomial_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > exponent(b, i)) return false;
    return true;
}

/// Graded reverse lexicographic order on exponent vectors padded to `nvars`.
/// Returns true if a is strictly larger than b.
inline bool grevlex_greater(const Monomial& a, const Monomial& b, std::size_t nvars) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = nvars; i-- > 0;) {
        int ea = exponent(a, i), eb = exponent(b, i);
        if (ea != eb) return ea < eb;
    }
    return false;
}

namespace detail {
template <class C>
bool coeff_is_zero(const C& c) {
    return is_zero(c);
}
}  // namespace detail

template <class C>
class Polynomial {
public:
    using Terms = std::map<Monomial, C>;

    Polynomial() = default;
    explicit Polynomial(const C& constant) {
        if (!detail::coeff_is_zero(constant)) terms_.emplace(Monomial{}, constant);
    }

    static Polynomial variable(std::size_t i) {
        Polynomial p;
        p.terms_.emplace(variable_monomial(i), C(Rational(1)));
        return p;
    }

    static Polynomial monomial(const Monomial& m, const C& c) {
        Polynomial p;
        p.add_term(m, c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Monomial& m, const C& c) {
        if (detail::coeff_is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second = it->second + c;
        if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }

    C coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C{} : it->second;
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
        return d;
    }

    /// Highest exponent of variable i.
    int degree_in(std::size_t i) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, exponent(m, i));
        return d;
    }

    /// Number of variables actually used.
    std::size_t num_vars() const {
        std::size_t n = 0;
        for (const auto& [m, c] : terms_) n = std::max(n, m.size());
        return n;
    }

    Polynomial truncated(int max_degree) const {
        Polynomial out;
        for (const auto& [m, c] : terms_)
            if (total_degree(m) <= max_degree) out.terms_.emplace(m, c);
        return out;
    }

    Polynomial operator-() const {
        Polynomial out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * Rational(-1));
        return out;
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c * Rational(-1));
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
        return out;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const Rational& q) const {
        Polynomial out;
        if (qmap::is_zero(q)) return out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * q);
        return out;
    }

    Polynomial times_coefficient(const C& k) const {
        Polynomial out;
        for (const auto& [m, c] : terms_) out.add_term(m, c * k);
        return out;
    }

    Polynomial times_monomial(const Monomial& mono) const {
        Polynomial out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(monomial_product(m, mono), c);
        return out;
    }

    Polynomial pow(int e) const {
        Polynomial out(C(Rational(1)));
        for (int i = 0; i < e; ++i) out *= *this;
        return out;
    }

    /// Replaces variable i by images[i] (variables beyond images.size() are
    /// kept). The images have rational coefficients.
    Polynomial substitute(const std::vector<Polynomial<Rational>>& images) const {
        std::map<std::pair<std::size_t, int>, Polynomial<Rational>> powers;
        auto power_of = [&](std::size_t i, int e) -> const Polynomial<Rational>& {
            auto key = std::make_pair(i, e);
            auto it = powers.find(key);
            if (it != powers.end()) return it->second;
            Polynomial<Rational> p = i < images.size() ? images[i] : Polynomial<Rational>::variable(i);
            return powers.emplace(key, p.pow(e)).first->second;
        };
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            Polynomial<Rational> img(Rational(1));
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] > 0) img *= power_of(i, m[i]);
            for (const auto& [mi, q] : img.terms()) out.add_term(mi, c * q);
        }
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
    Terms terms_;
};

template <class C>
bool is_zero(const Polynomial<C>& p) {
    return p.is_zero();
}

using QPoly = Polynomial<Rational>;

/// Linear form sum_i coeffs[i] * x_i.
inline QPoly linear_form(const QVec& coeffs) {
    QPoly p;
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term(variable_monomial(i), coeffs[i]);
    return p;
}

/// rest * p for a rational polynomial `rest`.
template <class C>
Polynomial<C> rest_times(const QPoly& rest, const Polynomial<C>& p) {
    Polynomial<C> out;
    for (const auto& [mr, qr] : rest.terms())
        for (const auto& [mp, cp] : p.terms()) out.add_term(monomial_product(mr, mp), cp * qr);
    return out;
}

/// Exact division by a homogeneous linear form with rational coefficients.
/// Returns the quotient, or nullopt if the remainder is nonzero.
template <class C>
std::optional<Polynomial<C>> divide_by_linear(const Polynomial<C>& p, const QPoly& linear) {
    if (linear.is_zero() || linear.degree() != 1)
        throw std::invalid_argument("divide_by_linear: divisor is not a linear form");
    // Main variable: the first one with a nonzero coefficient.
    std::size_t v = linear.num_vars();
    Rational lead;
    for (const auto& [m, c] : linear.terms()) {
        std::size_t idx = 0;
        while (exponent(m, idx) == 0) ++idx;
        if (idx < v) {
            v = idx;
            lead = c;
        }
    }
    QPoly rest = linear;
    rest.add_term(variable_monomial(v), -lead);
    Rational inv_lead = 1 / lead;

    // Split p by powers of the main variable.
    int top = p.degree_in(v);
    if (top < 0) return Polynomial<C>{};
    std::vector<Polynomial<C>> slices(static_cast<std::size_t>(top) + 1);
    for (const auto& [m, c] : p.terms()) {
        Monomial reduced = m;
        int e = exponent(m, v);
        if (e > 0) {
            reduced[v] = 0;
            strip(reduced);
        }
        slices[static_cast<std::size_t>(e)].add_term(reduced, c);
    }
    // p = (lead x_v + rest) q; solve from the top slice down.
    Polynomial<C> quotient;
    Polynomial<C> carry;  // q_k for the slice just computed
    for (int k = top; k >= 1; --k) {
        Polynomial<C> qk = (slices[static_cast<std::size_t>(k)] - rest_times(rest, carry)).scaled(inv_lead);
        for (const auto& [m, c] : qk.terms()) quotient.add_term(monomial_product(m, variable_monomial(v, k - 1)), c);
        carry = std::move(qk);
    }
    Polynomial<C> remainder = slices[0] - rest_times(rest, carry);
    if (!remainder.is_zero()) return std::nullopt;
    return quotient;
}

}  // namespace qmap
