#include "qmap/rational.hpp"

#include <stdexcept>

namespace qmap {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

Integer parse_integer(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    std::string digits(s.front() == '+' ? s.substr(1) : s);
    return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = 1;
    if (slash != std::string_view::npos) den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& q) { return q.get_str(); }

Integer floor(const Rational& q) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

Rational frac(const Rational& q) {
    Rational out = q - Rational(floor(q));
    return out;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer lcm_denominators(const QVec& v) {
    Integer out = 1;
    for (const auto& q : v) {
        Integer d = q.get_den();
        mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), d.get_mpz_t());
    }
    return out;
}

Rational pairing(const QVec& v, const IntVec& xi, std::size_t len) {
    Rational out = 0;
    for (std::size_t i = 0; i < len && i < v.size() && i < xi.size(); ++i) out += v[i] * xi[i];
    return out;
}

QVec to_qvec(const IntVec& v) {
    QVec out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace qmap
