#pragma once

// The C and C-circle factor classes: finite products of (c_1(L_xi) + k z)
// over shifted-integer k-ranges, their inverses, and the root factors of the
// abelianization formula with the Weyl discriminant cleared.

#include <vector>

#include "qmap/chowring.hpp"
#include "qmap/gitdata.hpp"

namespace qmap {

enum class FactorVariant { Circle, Full };

/// k with b < k < 0 for b <= 0, or 0 < k <= b for b > 0, all with k - b
/// integral, in increasing order.
std::vector<Rational> k_range(const Rational& b);

struct FactorSpec {
    CurveClass beta;
    IntVec xi;  // r entries, plus q equivariant entries
    FactorVariant variant = FactorVariant::Full;
    bool inverted = false;
    RingPtr ring;
    int torus_rank = 0;
};

/// C(beta, xi) or its circle variant, optionally inverted, in spec.ring.
/// Throws NonUnitInverse when asked to invert C at a negative integral
/// pairing: the c_1 prefactor is not a unit and has to be cleared against
/// the Weyl discriminant instead.
RingElement c_factor(const FactorSpec& spec);

/// Shorthand for c_factor with the fields spelled out.
RingElement c_factor(const CurveClass& beta, const IntVec& xi, FactorVariant variant, bool inverted,
                     const RingPtr& ring, int torus_rank);

/// No e-weight pairs with beta to a negative integer.
bool is_i_nonnegative(const CurveClass& beta, const GitPresentation& p);
/// Indices j of e-weights with beta(eps_j) a negative integer.
std::vector<int> negative_integral_e_weights(const CurveClass& beta, const GitPresentation& p);

struct WeylNumerator {
    /// Delta_g * prod_i C(beta, rho_i)^{-1}, reduced in the target ring.
    RingElement factor;
    /// rho(t) for the positive roots with integral pairing; Delta_g is their product.
    std::vector<QPoly> delta_factors;
    QPoly delta() const;
};

/// Each +/- pair with integral pairing d = beta(rho+) contributes
/// (-1)^d (rho+(t) + d z); the other pairs contribute their (unit) inverses.
WeylNumerator weyl_numerator_factor(const CurveClass& beta, const GitPresentation& p, const RingPtr& ring);

/// Product of c_1(L_xi) over the list.
RingElement euler_class(const RingPtr& ring, const std::vector<IntVec>& weights, int torus_rank);

}  // namespace qmap
