#include "qmap/chowring.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "qmap/errors.hpp"

namespace qmap {

namespace {

std::vector<Monomial> monomials_of_degree(int nvars, int d) {
    std::vector<Monomial> out;
    if (nvars == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == nvars - 1) {
            cur[i] = left;
            out.push_back(make_monomial(cur));
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
        cur[i] = 0;
    };
    rec(0, d);
    std::sort(out.begin(), out.end(),
              [nvars](const Monomial& a, const Monomial& b) { return grevlex_greater(a, b, nvars); });
    return out;
}

}  // namespace

RingPtr SectorRing::build(const GitPresentation& p, const Sector& s) {
    std::shared_ptr<SectorRing> ring(new SectorRing());
    int r = p.torus_rank;
    ring->nvars_ = r;
    ring->sector_ = s;
    int d = static_cast<int>(s.fixed_support.size()) - r;
    ring->supports_ = qmap::unstable_supports(p, s.fixed_support);
    bool empty_component = d < 0;
    for (const auto& sup : ring->supports_)
        if (sup.empty()) empty_component = true;
    if (empty_component) {
        ring->truncation_ = -1;
        return ring;
    }
    ring->truncation_ = d;
    for (const auto& sup : ring->supports_) {
        QPoly g(Rational(1));
        for (int l : sup) g *= weight_form(p.weights[l], r);
        ring->generators_.push_back(std::move(g));
    }
    ring->build_tables();
    return ring;
}

RingPtr SectorRing::free(int nvars, int truncation) {
    std::shared_ptr<SectorRing> ring(new SectorRing());
    ring->nvars_ = nvars;
    ring->truncation_ = truncation;
    ring->build_tables();
    return ring;
}

void SectorRing::build_tables() {
    // Per degree: row reduce the span of {mu * g} over the monomial basis
    // sorted by decreasing grevlex. Pivot columns are the leading monomials
    // of the ideal, the rest are standard; each pivot row rewrites its
    // leading monomial in standard ones. This is the reduced Groebner basis
    // normal form, degree by degree.
    for (int d = 0; d <= truncation_; ++d) {
        auto monos = monomials_of_degree(nvars_, d);
        std::map<Monomial, std::size_t> col;
        for (std::size_t i = 0; i < monos.size(); ++i) col[monos[i]] = i;
        QMat rows;
        for (const auto& g : generators_) {
            int e = g.degree();
            if (e > d) continue;
            for (const auto& mu : monomials_of_degree(nvars_, d - e)) {
                QVec row(monos.size());
                for (const auto& [m, c] : g.terms()) row[col.at(monomial_product(m, mu))] += c;
                rows.push_back(std::move(row));
            }
        }
        std::vector<std::size_t> pivots;
        if (!rows.empty()) pivots = rref(rows);
        std::vector<bool> is_pivot(monos.size(), false);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            std::size_t pc = pivots[i];
            is_pivot[pc] = true;
            Reduction red;
            for (std::size_t j = 0; j < monos.size(); ++j)
                if (j != pc && !is_zero(rows[i][j])) red.emplace_back(monos[j], -rows[i][j]);
            table_[monos[pc]] = std::move(red);
        }
        standard_.emplace_back();
        for (std::size_t j = 0; j < monos.size(); ++j) {
            if (is_pivot[j]) continue;
            table_[monos[j]] = {{monos[j], Rational(1)}};
            standard_.back().push_back(monos[j]);
        }
    }
}

std::vector<Monomial> SectorRing::standard_monomials(int d) const {
    if (d < 0 || d > truncation_) return {};
    return standard_[static_cast<std::size_t>(d)];
}

const SectorRing::Reduction& SectorRing::reduce_monomial(const Monomial& m) const {
    static const Reduction empty;
    if (total_degree(m) > truncation_ || static_cast<int>(m.size()) > nvars_) {
        if (static_cast<int>(m.size()) > nvars_)
            throw std::invalid_argument("monomial uses variables outside the ring");
        return empty;
    }
    return table_.at(m);
}

TPoly SectorRing::reduce(const TPoly& p) const {
    if (is_zero_ring()) return {};
    TPoly out;
    for (const auto& [m, c] : p.terms())
        for (const auto& [m2, q] : reduce_monomial(m)) out.add_term(m2, c * q);
    return out;
}

QPoly SectorRing::reduce(const QPoly& p) const {
    if (is_zero_ring()) return {};
    QPoly out;
    for (const auto& [m, c] : p.terms())
        for (const auto& [m2, q] : reduce_monomial(m)) out.add_term(m2, c * q);
    return out;
}

RingElement::RingElement(RingPtr ring, const TPoly& p) : ring_(std::move(ring)), poly_(ring_->reduce(p)) {}

void RingElement::check_same_ring(const RingElement& o) const {
    if (ring_ != o.ring_) throw std::invalid_argument("ring elements from different rings");
}

RingElement RingElement::operator-() const {
    RingElement out = *this;
    out.poly_ = -poly_;
    return out;
}

RingElement& RingElement::operator+=(const RingElement& o) {
    check_same_ring(o);
    poly_ += o.poly_;
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
    check_same_ring(o);
    poly_ -= o.poly_;
    return *this;
}

RingElement& RingElement::operator*=(const RingElement& o) {
    check_same_ring(o);
    int top = ring_->truncation();
    // Collect coefficients per product monomial before reducing, so each
    // CoeffFunction sum is formed once.
    std::map<Monomial, CoeffFunction> prod;
    for (const auto& [ma, ca] : poly_.terms())
        for (const auto& [mb, cb] : o.poly_.terms()) {
            if (total_degree(ma) + total_degree(mb) > top) continue;
            auto m = monomial_product(ma, mb);
            auto it = prod.find(m);
            if (it == prod.end())
                prod.emplace(std::move(m), ca * cb);
            else
                it->second += ca * cb;
        }
    TPoly lift;
    for (auto& [m, c] : prod) lift.add_term(m, c);
    poly_ = ring_->reduce(lift);
    return *this;
}

RingElement RingElement::scaled(const CoeffFunction& c) const {
    RingElement out = *this;
    out.poly_ = poly_.times_coefficient(c);
    return out;
}

QPoly weight_form(const IntVec& xi, int r) {
    QPoly out;
    for (int i = 0; i < r && i < static_cast<int>(xi.size()); ++i) out.add_term(variable_monomial(i), Rational(xi[i]));
    return out;
}

TPoly chern_lift(const IntVec& xi, int r) {
    TPoly out;
    for (int i = 0; i < r && i < static_cast<int>(xi.size()); ++i)
        out.add_term(variable_monomial(i), CoeffFunction(Rational(xi[i])));
    QVec spart(1);
    bool any = false;
    for (std::size_t p = static_cast<std::size_t>(r); p < xi.size(); ++p) {
        spart.emplace_back(xi[p]);
        any = any || xi[p] != 0;
    }
    if (any) out.add_term(Monomial{}, CoeffFunction::linear(spart));
    return out;
}

RingElement chern(const RingPtr& ring, const IntVec& xi, int r) { return RingElement(ring, chern_lift(xi, r)); }

RingElement invert_unit_plus_nilpotent(const CoeffFunction& u, const RingElement& alpha) {
    if (u.is_zero()) throw DivisionByZero("inverting a factor with vanishing unit part");
    if (!alpha.constant_term().is_zero())
        throw std::invalid_argument("invert_unit_plus_nilpotent: alpha has a constant term");
    const auto& ring = alpha.ring();
    CoeffFunction uinv = u.inverse();
    RingElement x = alpha.scaled(-uinv);
    RingElement sum = RingElement::one(ring);
    RingElement power = RingElement::one(ring);
    for (int i = 1; i <= ring->truncation() && !power.is_zero(); ++i) {
        power *= x;
        sum += power;
    }
    return sum.scaled(uinv);
}

std::vector<QPoly> weyl_substitution(const IntMat& w) {
    std::size_t r = w.size();
    std::vector<QPoly> images(r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (w[j][i] != 0) images[i].add_term(variable_monomial(j), Rational(w[j][i]));
    return images;
}

TPoly weyl_act(const IntMat& w, const TPoly& p) { return p.substitute(weyl_substitution(w)); }

RingElement weyl_act(const IntMat& w, const RingElement& x) { return RingElement(x.ring(), weyl_act(w, x.poly())); }

TPoly antisymmetrize(const TPoly& x, const WeylGroup& w, const std::vector<std::size_t>& subgroup) {
    TPoly out;
    for (auto i : subgroup) {
        TPoly img = weyl_act(w.elements()[i], x);
        if (w.sign(i) < 0) img = -img;
        out += img;
    }
    return out.scaled(Rational(1, static_cast<long>(subgroup.size())));
}

bool is_weyl_covariant(const TPoly& x, const WeylGroup& w, const std::vector<std::size_t>& subgroup, bool anti) {
    for (auto i : subgroup) {
        TPoly img = weyl_act(w.elements()[i], x);
        TPoly expect = (anti && w.sign(i) < 0) ? -x : x;
        if (img != expect) return false;
    }
    return true;
}

TPoly divide_by_delta(const TPoly& numerator, const std::vector<QPoly>& factors) {
    TPoly q = numerator;
    for (const auto& f : factors) {
        auto next = divide_by_linear(q, f);
        if (!next) throw IntegrityError("division by the Weyl discriminant left a nonzero remainder");
        q = std::move(*next);
    }
    return q;
}

std::string ring_element_str(const TPoly& p, const std::vector<std::string>& tnames) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    std::vector<std::pair<Monomial, CoeffFunction>> terms(p.terms().begin(), p.terms().end());
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) { return total_degree(a.first) < total_degree(b.first); });
    for (const auto& [m, c] : terms) {
        if (!first) out << " + ";
        first = false;
        std::string cs = c.str();
        bool wrap = !m.empty() && (cs.find_first_of("+-") != std::string::npos && cs.find_first_of("+-") != 0);
        out << (wrap ? "(" + cs + ")" : cs);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            out << "*" << (i < tnames.size() ? tnames[i] : "t" + std::to_string(i + 1));
            if (m[i] > 1) out << "^" << m[i];
        }
    }
    return out.str();
}

}  // namespace qmap
