#include "qmap/factors.hpp"

#include "qmap/errors.hpp"

namespace qmap {

std::vector<Rational> k_range(const Rational& b) {
    std::vector<Rational> out;
    if (sgn(b) <= 0) {
        for (Rational k = b + 1; sgn(k) < 0; k += 1) out.push_back(k);
    } else {
        for (Rational k = b - floor(b); k <= b; k += 1)
            if (sgn(k) > 0) out.push_back(k);
    }
    return out;
}

namespace {

/// c_1(L_xi) + k z split as (nilpotent t-part, unit part k z + sigma(s)).
std::pair<RingElement, CoeffFunction> factor_parts(const IntVec& xi, const Rational& k, const RingPtr& ring, int r) {
    TPoly lift = chern_lift(xi, r);
    CoeffFunction unit = lift.coefficient(Monomial{}) + CoeffFunction::z() * k;
    lift.add_term(Monomial{}, -lift.coefficient(Monomial{}));
    return {RingElement(ring, lift), unit};
}

}  // namespace

RingElement c_factor(const FactorSpec& spec) {
    const RingPtr& ring = spec.ring;
    int r = spec.torus_rank;
    Rational b = spec.beta.pairing(IntVec(spec.xi.begin(), spec.xi.begin() + r));
    bool negative_integral = is_integer(b) && sgn(b) < 0;
    bool prefactor = spec.variant == FactorVariant::Full && negative_integral;
    if (prefactor && spec.inverted)
        throw NonUnitInverse("C(" + spec.beta.str() + ", xi) at negative integral pairing " + b.get_str() +
                             " has a non-unit c_1 factor; Delta-clearing required");

    // b <= 0: product of the factors; b > 0: inverse of the product. The
    // inverted flag swaps the two.
    bool invert_each = (sgn(b) > 0) != spec.inverted;
    RingElement out = RingElement::one(ring);
    for (const auto& k : k_range(b)) {
        auto [alpha, unit] = factor_parts(spec.xi, k, ring, r);
        if (invert_each)
            out *= invert_unit_plus_nilpotent(unit, alpha);
        else
            out *= alpha + RingElement::constant(ring, unit);
    }
    if (prefactor) out *= chern(ring, spec.xi, r);
    return out;
}

RingElement c_factor(const CurveClass& beta, const IntVec& xi, FactorVariant variant, bool inverted,
                     const RingPtr& ring, int torus_rank) {
    return c_factor(FactorSpec{beta, xi, variant, inverted, ring, torus_rank});
}

std::vector<int> negative_integral_e_weights(const CurveClass& beta, const GitPresentation& p) {
    std::vector<int> out;
    for (std::size_t j = 0; j < p.e_weights.size(); ++j) {
        Rational b = beta.pairing(p.e_weights[j]);
        if (is_integer(b) && sgn(b) < 0) out.push_back(static_cast<int>(j));
    }
    return out;
}

bool is_i_nonnegative(const CurveClass& beta, const GitPresentation& p) {
    return negative_integral_e_weights(beta, p).empty();
}

QPoly WeylNumerator::delta() const {
    QPoly out(Rational(1));
    for (const auto& f : delta_factors) out *= f;
    return out;
}

WeylNumerator weyl_numerator_factor(const CurveClass& beta, const GitPresentation& p, const RingPtr& ring) {
    int r = p.torus_rank;
    WeylNumerator out{RingElement::one(ring), {}};
    for (int idx : p.positive_roots) {
        const IntVec& rho = p.roots[idx];
        Rational d = beta.pairing(rho);
        if (is_integer(d)) {
            QPoly form = weight_form(rho, r);
            out.delta_factors.push_back(form);
            TPoly pair;
            for (const auto& [m, c] : form.terms()) pair.add_term(m, CoeffFunction(c));
            pair.add_term(Monomial{}, CoeffFunction::z() * d);
            if (d.get_num() % 2 != 0) pair = -pair;
            out.factor *= RingElement(ring, pair);
            continue;
        }
        IntVec neg = rho;
        for (auto& x : neg) x = -x;
        out.factor *= c_factor(beta, rho, FactorVariant::Circle, true, ring, r);
        out.factor *= c_factor(beta, neg, FactorVariant::Circle, true, ring, r);
    }
    return out;
}

RingElement euler_class(const RingPtr& ring, const std::vector<IntVec>& weights, int torus_rank) {
    RingElement out = RingElement::one(ring);
    for (const auto& w : weights) out *= chern(ring, w, torus_rank);
    return out;
}

}  // namespace qmap
