#pragma once

// GIT input data and the lattice/sector combinatorics built on it.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qmap/linalg.hpp"
#include "qmap/rational.hpp"

namespace qmap {

/// Weight data of a linear GIT problem X // G with maximal torus T of rank r.
///
/// Characters of T are integer vectors of length r. With an auxiliary torus R
/// of rank q (equivariant_rank), weights and e_weights carry q extra columns
/// holding their R-weights; roots and chi_g_basis never do.
struct GitPresentation {
    int torus_rank = 0;
    std::vector<IntVec> weights;
    IntVec theta;
    std::vector<IntVec> roots;
    std::vector<int> positive_roots;
    std::vector<IntMat> weyl_generators;
    std::vector<IntVec> e_weights;
    std::vector<IntVec> chi_g_basis;
    int equivariant_rank = 0;

    std::size_t num_weights() const { return weights.size(); }
    bool is_abelian() const { return roots.empty(); }
    /// Drops the equivariant columns.
    GitPresentation non_equivariant() const;
};

GitPresentation projective_space(int n);
GitPresentation weighted_projective(const std::vector<long>& w);
GitPresentation grassmannian(int k, int n);

/// A class beta~ in Hom(chi(T), Q), stored by its values on the standard basis.
class CurveClass {
public:
    CurveClass() = default;
    explicit CurveClass(QVec values) : values_(std::move(values)) {}

    const QVec& values() const { return values_; }
    std::size_t rank() const { return values_.size(); }

    /// beta~(xi), using the first rank() entries of xi.
    Rational pairing(const IntVec& xi) const { return qmap::pairing(values_, xi, values_.size()); }
    /// Least positive a with a * values integral.
    Integer order() const { return lcm_denominators(values_); }
    Rational theta_degree(const IntVec& theta) const { return pairing(theta); }
    bool is_integral() const { return order() == 1; }

    friend bool operator==(const CurveClass& a, const CurveClass& b) { return a.values_ == b.values_; }
    friend bool operator!=(const CurveClass& a, const CurveClass& b) { return !(a == b); }
    friend bool operator<(const CurveClass& a, const CurveClass& b) { return a.values_ < b.values_; }

    std::string str() const;

private:
    QVec values_;
};

/// A twisted sector, i.e. a torus element g of finite order. `element` holds
/// the values beta~(e_i) mod 1 of any class whose sector element is g; `fracs`
/// the induced values frac(beta~(xi_l)) on the weights of X.
struct Sector {
    QVec element;
    QVec fracs;
    std::vector<int> fixed_support;
    Integer order = 1;

    bool is_untwisted() const { return order == 1; }

    friend bool operator==(const Sector& a, const Sector& b) { return a.element == b.element && a.fracs == b.fracs; }
    friend bool operator!=(const Sector& a, const Sector& b) { return !(a == b); }
    friend bool operator<(const Sector& a, const Sector& b) {
        return a.element != b.element ? a.element < b.element : a.fracs < b.fracs;
    }
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    /// Set when theta lies on a wall; fiber enumeration is then unbounded.
    bool theta_on_wall = false;
    bool ok() const { return errors.empty(); }
};

/// Structural checks only (dimensions, index ranges). Empty if well formed.
std::vector<std::string> structural_errors(const GitPresentation& p);
ValidationReport validate(const GitPresentation& p);

/// An independent set of at most r weights whose cone contains theta, with
/// theta = sum coefficients[i] * weights[indices[i]].
struct StableBasis {
    std::vector<int> indices;
    QVec coefficients;
    std::uint64_t mask = 0;
};

/// All stable bases drawn from `subset` (all weights if empty optional).
std::vector<StableBasis> stable_bases(const GitPresentation& p, const std::vector<int>& subset);
std::vector<StableBasis> stable_bases(const GitPresentation& p);

/// Whether theta lies in the cone spanned by the weights indexed by `subset`.
bool theta_in_cone(const GitPresentation& p, const std::vector<int>& subset);

/// Inclusion-minimal S within `weight_subset` such that theta is not in the
/// cone of the remaining weights of the subset. Sorted.
std::vector<std::vector<int>> unstable_supports(const GitPresentation& p, const std::vector<int>& weight_subset);

Sector sector_of(const CurveClass& beta, const GitPresentation& p);
Sector involute(const Sector& s);

/// Orders of torus elements with a fixed point in the stable locus.
std::set<long> sector_orders(const GitPresentation& p);
long default_denominator_bound(const GitPresentation& p);

/// Values of beta~ on chi_g_basis.
QVec restrict_to_g(const CurveClass& beta, const GitPresentation& p);

/// Every class whose coefficient can be nonzero and whose theta-degree is at
/// most degree_bound: beta~ pairs to nonnegative integers with some stable
/// basis. Sorted by (theta-degree, values). Throws UnboundedEnumeration when
/// theta lies on a wall.
std::vector<CurveClass> enumerate_classes(const GitPresentation& p, const Rational& degree_bound,
                                          long denominator_bound);

/// The classes above restricting to beta_on_g.
std::vector<CurveClass> enumerate_fiber(const GitPresentation& p, const QVec& beta_on_g, const Rational& degree_bound,
                                        long denominator_bound);

/// The finite group generated by weyl_generators, with signs det(w).
class WeylGroup {
public:
    explicit WeylGroup(const GitPresentation& p);

    std::size_t size() const { return elements_.size(); }
    const std::vector<IntMat>& elements() const { return elements_; }
    int sign(std::size_t i) const { return signs_[i]; }
    std::size_t identity_index() const { return 0; }

    /// w . beta~ with (w . beta~)(xi) = beta~(w^{-1} xi).
    CurveClass act(std::size_t i, const CurveClass& beta) const;
    /// w . xi for a character (extra equivariant entries untouched).
    IntVec act_on_character(std::size_t i, const IntVec& xi) const;
    /// Action on a sector element: frac of the class action.
    QVec act_on_element(std::size_t i, const QVec& element) const;
    /// Indices of elements fixing the sector element.
    std::vector<std::size_t> stabilizer_of_element(const QVec& element) const;

private:
    std::vector<IntMat> elements_;
    std::vector<QMat> inverse_transpose_;
    std::vector<int> signs_;
};

struct WeylOrbit {
    CurveClass representative;
    std::vector<CurveClass> members;
    std::vector<std::size_t> stabilizer;  // indices into WeylGroup::elements()
};

/// Orbit decomposition of a W-closed set of classes. Throws std::invalid_argument
/// if the set is not closed.
std::vector<WeylOrbit> weyl_orbits(const WeylGroup& w, const std::vector<CurveClass>& classes);

IntVec apply_matrix(const IntMat& w, const IntVec& xi, int rank);

}  // namespace qmap
