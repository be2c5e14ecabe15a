#include "qmap/coeff.hpp"

#include <sstream>

#include "qmap/errors.hpp"

namespace qmap {

namespace {

/// Splits raw linear coefficients into (leading scalar, normalized key).
std::pair<Rational, LinearKey> normalize_linear(QVec coeffs) {
    while (!coeffs.empty() && is_zero(coeffs.back())) coeffs.pop_back();
    if (coeffs.empty()) throw DivisionByZero("linear form is identically zero");
    std::size_t i = 0;
    while (is_zero(coeffs[i])) ++i;
    Rational lead = coeffs[i];
    for (auto& c : coeffs) c /= lead;
    return {lead, coeffs};
}

std::optional<std::size_t> single_variable(const LinearKey& key) {
    std::optional<std::size_t> var;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (is_zero(key[i])) continue;
        if (var || key[i] != 1) return std::nullopt;
        var = i;
    }
    return var;
}

QPoly multiply_by_power(const QPoly& p, const LinearKey& key, int power) {
    if (power <= 0) return p;
    if (auto v = single_variable(key)) return p.times_monomial(variable_monomial(*v, power));
    return p * linear_form(key).pow(power);
}

/// Divides by the linear form if it is an exact factor.
std::optional<QPoly> try_divide(const QPoly& p, const LinearKey& key) {
    if (auto v = single_variable(key)) {
        for (const auto& [m, c] : p.terms())
            if (exponent(m, *v) == 0) return std::nullopt;
        QPoly out;
        for (const auto& [m, c] : p.terms()) {
            Monomial reduced = m;
            reduced[*v] -= 1;
            strip(reduced);
            out.add_term(reduced, c);
        }
        return out;
    }
    return divide_by_linear(p, linear_form(key));
}

Rational canonical(Rational c) {
    c.canonicalize();
    return c;
}

}  // namespace

CoeffFunction::CoeffFunction(const Rational& c) : num_(canonical(c)) {}

CoeffFunction::CoeffFunction(QPoly numerator) : num_(std::move(numerator)) {}

CoeffFunction CoeffFunction::z() { return CoeffFunction(QPoly::variable(0)); }

CoeffFunction CoeffFunction::s(std::size_t p) { return CoeffFunction(QPoly::variable(p)); }

CoeffFunction CoeffFunction::linear(const QVec& coeffs) { return CoeffFunction(linear_form(coeffs)); }

CoeffFunction CoeffFunction::from_parts(QPoly numerator, const Factors& denominator) {
    CoeffFunction out(std::move(numerator));
    for (const auto& [key, mult] : denominator) {
        if (mult <= 0) continue;
        auto [lead, normalized] = normalize_linear(key);
        for (int i = 0; i < mult; ++i) out.num_ = out.num_.scaled(Rational(1 / lead));
        out.den_[normalized] += mult;
    }
    out.normalize();
    return out;
}

QPoly CoeffFunction::denominator() const {
    QPoly out(Rational(1));
    for (const auto& [key, mult] : den_) out = multiply_by_power(out, key, mult);
    return out;
}

bool CoeffFunction::is_constant() const {
    if (!den_.empty()) return false;
    return num_.is_zero() || (num_.size() == 1 && num_.terms().begin()->first.empty());
}

Rational CoeffFunction::constant_value() const { return num_.coefficient(Monomial{}); }

CoeffFunction CoeffFunction::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of a zero coefficient");
    CoeffFunction out(denominator());
    if (num_.size() == 1) {
        const auto& [m, c] = *num_.terms().begin();
        out.num_ = out.num_.scaled(Rational(1 / c));
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            QVec key(i + 1, Rational(0));
            key[i] = 1;
            out.den_[key] += m[i];
        }
        out.normalize();
        return out;
    }
    if (num_.degree() == 1) {
        bool homogeneous = true;
        QVec coeffs;
        for (const auto& [m, c] : num_.terms()) {
            if (total_degree(m) != 1) {
                homogeneous = false;
                break;
            }
            std::size_t i = m.size() - 1;
            if (coeffs.size() <= i) coeffs.resize(i + 1);
            coeffs[i] = c;
        }
        if (homogeneous) {
            auto [lead, key] = normalize_linear(coeffs);
            out.num_ = out.num_.scaled(Rational(1 / lead));
            out.den_[key] += 1;
            out.normalize();
            return out;
        }
    }
    throw std::domain_error("cannot invert coefficient " + str() +
                            ": numerator is not a recognizable product of linear forms");
}

CoeffFunction CoeffFunction::operator-() const {
    CoeffFunction out = *this;
    out.num_ = -out.num_;
    return out;
}

CoeffFunction& CoeffFunction::operator+=(const CoeffFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    Factors common = den_;
    for (const auto& [key, mult] : o.den_) {
        int& m = common[key];
        m = std::max(m, mult);
    }
    QPoly a = num_, b = o.num_;
    for (const auto& [key, mult] : common) {
        auto ia = den_.find(key);
        auto ib = o.den_.find(key);
        a = multiply_by_power(a, key, mult - (ia == den_.end() ? 0 : ia->second));
        b = multiply_by_power(b, key, mult - (ib == o.den_.end() ? 0 : ib->second));
    }
    num_ = a + b;
    den_ = std::move(common);
    normalize();
    return *this;
}

CoeffFunction& CoeffFunction::operator-=(const CoeffFunction& o) { return *this += -o; }

CoeffFunction& CoeffFunction::operator*=(const CoeffFunction& o) {
    if (is_zero() || o.is_zero()) {
        num_ = QPoly{};
        den_.clear();
        return *this;
    }
    num_ = num_ * o.num_;
    for (const auto& [key, mult] : o.den_) den_[key] += mult;
    if (!o.den_.empty() || !den_.empty()) normalize();
    return *this;
}

CoeffFunction& CoeffFunction::operator*=(const Rational& q) {
    num_ = num_.scaled(q);
    if (num_.is_zero()) den_.clear();
    return *this;
}

bool CoeffFunction::is_z_laurent() const {
    for (const auto& [key, mult] : den_)
        if (!(key.size() == 1 && key[0] == 1)) return false;
    return true;
}

int CoeffFunction::z_power() const {
    auto it = den_.find(QVec{Rational(1)});
    return it == den_.end() ? 0 : it->second;
}

CoeffFunction CoeffFunction::at_s_zero() const {
    QPoly num;
    for (const auto& [m, c] : num_.terms())
        if (m.size() <= 1) num.add_term(m, c);
    CoeffFunction out(std::move(num));
    int zpow = 0;
    for (const auto& [key, mult] : den_) {
        if (qmap::is_zero(key[0])) throw DivisionByZero("denominator factor vanishes at s = 0");
        zpow += mult;  // normalized keys have leading coefficient 1 on z
    }
    if (zpow > 0) out.den_[QVec{Rational(1)}] = zpow;
    out.normalize();
    return out;
}

std::size_t CoeffFunction::num_parameters() const {
    std::size_t n = num_.num_vars();
    for (const auto& [key, mult] : den_) n = std::max(n, key.size());
    return n == 0 ? 0 : n - 1;
}

void CoeffFunction::normalize() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        while (it->second > 0) {
            auto q = try_divide(num_, it->first);
            if (!q) break;
            num_ = std::move(*q);
            --it->second;
        }
        if (it->second == 0)
            it = den_.erase(it);
        else
            ++it;
    }
}

std::vector<std::string> coeff_variable_names(std::size_t q) {
    std::vector<std::string> names{"z"};
    for (std::size_t p = 1; p <= q; ++p) names.push_back("s" + std::to_string(p));
    return names;
}

std::string poly_str(const QPoly& p, const std::vector<std::string>& names, TextStyle style) {
    if (p.is_zero()) return "0";
    bool latex = style == TextStyle::Latex;
    std::ostringstream out;
    bool first = true;
    // Highest degree first reads more naturally for Laurent data.
    std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return total_degree(a.first) > total_degree(b.first);
    });
    for (const auto& [m, c] : terms) {
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out << "-";
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = mag == 1;
        if (!unit || m.empty()) {
            if (latex && mag.get_den() != 1)
                out << "\\frac{" << mag.get_num().get_str() << "}{" << mag.get_den().get_str() << "}";
            else
                out << mag.get_str();
        }
        bool need_sep = !unit || m.empty();
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (need_sep) out << (latex ? " " : "*");
            out << (i < names.size() ? names[i] : "x" + std::to_string(i));
            if (m[i] > 1) out << (latex ? "^{" + std::to_string(m[i]) + "}" : "^" + std::to_string(m[i]));
            need_sep = true;
        }
    }
    return out.str();
}

std::string FractionText::str(TextStyle style) const {
    std::string sign = negative ? "-" : "";
    if (style == TextStyle::Latex) {
        if (denominator.empty()) return sign + numerator;
        return sign + "\\frac{" + numerator + "}{" + denominator + "}";
    }
    if (denominator.empty()) return sign + numerator;
    std::string num = compound ? "(" + numerator + ")" : numerator;
    std::string den = compound_denominator ? "(" + denominator + ")" : denominator;
    return sign + num + "/" + den;
}

FractionText fraction_text(const CoeffFunction& c, const std::vector<std::string>& names, TextStyle style,
                           const std::string& extra) {
    FractionText out;
    bool latex = style == TextStyle::Latex;
    std::string sep = latex ? " " : "*";
    const QPoly& num = c.numerator();
    if (num.is_zero()) {
        out.numerator = "0";
        return out;
    }
    Integer g = 0, l = 1;
    int top = -1;
    Rational lead;
    for (const auto& [m, q] : num.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
        if (total_degree(m) > top) {
            top = total_degree(m);
            lead = q;
        }
    }
    Rational content(g, l);
    content.canonicalize();
    out.negative = sgn(lead) < 0;
    QPoly prim = num.scaled(1 / (out.negative ? -content : content));

    std::vector<std::string> parts;
    if (content.get_num() != 1) parts.push_back(content.get_num().get_str());
    bool prim_unit = prim == QPoly(Rational(1));
    bool multi = prim.size() > 1;
    if (!prim_unit) parts.push_back(poly_str(prim, names, style));
    if (!extra.empty()) parts.push_back(extra);
    if (multi && parts.size() > 1)
        for (auto& s : parts)
            if (s.find_first_of("+-", 1) != std::string::npos) s = "(" + s + ")";
    out.compound = multi && parts.size() == 1;
    for (std::size_t i = 0; i < parts.size(); ++i) out.numerator += (i ? sep : "") + parts[i];
    if (out.numerator.empty()) out.numerator = "1";

    std::vector<std::string> den;
    if (content.get_den() != 1) den.push_back(content.get_den().get_str());
    for (const auto& [key, mult] : c.denominator_factors()) {
        bool single = single_variable(key).has_value();
        std::string f = poly_str(linear_form(key), names, style);
        if (!single) f = "(" + f + ")";
        if (mult > 1) f += latex ? "^{" + std::to_string(mult) + "}" : "^" + std::to_string(mult);
        den.push_back(f);
    }
    out.compound_denominator = den.size() > 1;
    for (std::size_t i = 0; i < den.size(); ++i) out.denominator += (i ? sep : "") + den[i];
    return out;
}

std::string CoeffFunction::str() const {
    return fraction_text(*this, coeff_variable_names(num_parameters()), TextStyle::Plain).str(TextStyle::Plain);
}

}  // namespace qmap
