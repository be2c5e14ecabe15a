#pragma once

// Truncated graded quotient rings Q(z, s)[t_1..t_r] / (I + m^{D+1}) of the
// twisted sectors, where I is generated by products of weight classes over
// the T-unstable supports inside the fixed support of the sector.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qmap/coeff.hpp"
#include "qmap/gitdata.hpp"
#include "qmap/polynomial.hpp"

namespace qmap {

/// Polynomials in t with rational-function coefficients.
using TPoly = Polynomial<CoeffFunction>;

class SectorRing {
public:
    using Reduction = std::vector<std::pair<Monomial, Rational>>;

    /// Ring of the sector: fixed support F, D = |F| - r, relations from the
    /// minimal unstable supports inside F. Zero ring when D < 0 or theta is
    /// not in the cone of F.
    static std::shared_ptr<const SectorRing> build(const GitPresentation& p, const Sector& s);
    /// Q[t_1..t_n] / m^{K+1} with no further relations.
    static std::shared_ptr<const SectorRing> free(int nvars, int truncation);

    int num_vars() const { return nvars_; }
    /// D; -1 for the zero ring.
    int truncation() const { return truncation_; }
    bool is_zero_ring() const { return truncation_ < 0; }
    bool is_free() const { return generators_.empty(); }
    const Sector& sector() const { return sector_; }
    const std::vector<QPoly>& generators() const { return generators_; }
    const std::vector<std::vector<int>>& unstable_supports() const { return supports_; }

    /// Standard monomials of degree d, in decreasing grevlex order.
    std::vector<Monomial> standard_monomials(int d) const;
    /// Normal form of a monomial as a rational combination of standard ones.
    const Reduction& reduce_monomial(const Monomial& m) const;
    /// Normal form of a lift.
    TPoly reduce(const TPoly& p) const;
    QPoly reduce(const QPoly& p) const;

private:
    SectorRing() = default;
    void build_tables();

    int nvars_ = 0;
    int truncation_ = -1;
    Sector sector_;
    std::vector<QPoly> generators_;
    std::vector<std::vector<int>> supports_;
    std::map<Monomial, Reduction> table_;
    std::vector<std::vector<Monomial>> standard_;
};

using RingPtr = std::shared_ptr<const SectorRing>;

/// An element of a sector ring, always kept in normal form.
class RingElement {
public:
    RingElement() = default;
    explicit RingElement(RingPtr ring) : ring_(std::move(ring)) {}
    /// Normal form of the lift p.
    RingElement(RingPtr ring, const TPoly& p);

    static RingElement one(RingPtr ring) { return RingElement(ring, TPoly(CoeffFunction(1))); }
    static RingElement constant(RingPtr ring, const CoeffFunction& c) { return RingElement(ring, TPoly(c)); }

    const RingPtr& ring() const { return ring_; }
    const TPoly& poly() const { return poly_; }
    const TPoly::Terms& terms() const { return poly_.terms(); }
    bool is_zero() const { return poly_.is_zero(); }
    CoeffFunction coefficient(const Monomial& m) const { return poly_.coefficient(m); }
    /// Coefficient of the empty monomial.
    CoeffFunction constant_term() const { return poly_.coefficient(Monomial{}); }

    RingElement operator-() const;
    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    RingElement& operator*=(const RingElement& o);
    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(RingElement a, const RingElement& b) { return a *= b; }
    RingElement scaled(const CoeffFunction& c) const;

    /// Same lift, reduced in another ring.
    RingElement map_to(RingPtr other) const { return RingElement(std::move(other), poly_); }

    friend bool operator==(const RingElement& a, const RingElement& b) { return a.poly_ == b.poly_; }
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

private:
    void check_same_ring(const RingElement& o) const;

    RingPtr ring_;
    TPoly poly_;
};

/// Lift of c_1(L_xi) = xi(t), plus sum_p xi_{r+p} s_p in the constant term
/// when xi carries equivariant entries.
TPoly chern_lift(const IntVec& xi, int r);
RingElement chern(const RingPtr& ring, const IntVec& xi, int r);

/// Linear form xi(t) over Q, ignoring equivariant entries.
QPoly weight_form(const IntVec& xi, int r);

/// (alpha + u)^{-1} = u^{-1} sum_{i <= D} (-alpha/u)^i for nilpotent alpha.
/// Throws DivisionByZero if u = 0.
RingElement invert_unit_plus_nilpotent(const CoeffFunction& u, const RingElement& alpha);

/// Images of t_i under w: t_i -> sum_j w_{ji} t_j.
std::vector<QPoly> weyl_substitution(const IntMat& w);
TPoly weyl_act(const IntMat& w, const TPoly& p);
RingElement weyl_act(const IntMat& w, const RingElement& x);

/// (1/|S|) sum_{w in S} sgn(w) w.x over the listed group elements.
TPoly antisymmetrize(const TPoly& x, const WeylGroup& w, const std::vector<std::size_t>& subgroup);

/// Whether w.x = sgn(w) x (anti = true) or w.x = x for every listed element,
/// comparing lifts exactly.
bool is_weyl_covariant(const TPoly& x, const WeylGroup& w, const std::vector<std::size_t>& subgroup, bool anti);

/// Exact quotient N / prod(factors) for linear forms in t. Throws
/// IntegrityError on a nonzero remainder.
TPoly divide_by_delta(const TPoly& numerator, const std::vector<QPoly>& factors);

/// Human-readable rendering with the given t-variable names.
std::string ring_element_str(const TPoly& p, const std::vector<std::string>& tnames);

}  // namespace qmap
