#pragma once

// Assembly of small I-function coefficients: the toric closed form, the
// abelianized coefficient for nonabelian G, quantum Lefschetz twists and the
// bigger I-function.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qmap/chowring.hpp"
#include "qmap/factors.hpp"
#include "qmap/gitdata.hpp"

namespace qmap {

enum class Mode { Toric, Nonabelian, Lefschetz };
enum class Convexity { ConvexOnly, AssumeTransverse };
enum class Presentation { Restricted, Pushforward };

std::string to_string(Mode m);
std::string to_string(Convexity c);
std::string to_string(Presentation p);

struct RunOptions {
    Mode mode = Mode::Toric;
    Rational degree_bound = 0;
    /// 0 selects the lcm of the sector orders.
    long denominator_bound = 0;
    Convexity convexity = Convexity::ConvexOnly;
    Presentation presentation = Presentation::Restricted;
    bool equivariant = false;
    bool allow_mixed_presentations = false;
    /// Worker threads for per-class evaluation; 0 picks the hardware count.
    unsigned threads = 1;
};

/// One coefficient of the series. For abelian G `beta` is the class itself;
/// otherwise it holds the values on chi_g_basis and `lift` is the fiber
/// class that fixed the representative sector.
struct SectorClass {
    CurveClass beta;
    CurveClass lift;
    Rational theta_degree;
    Sector sector;  // the involuted sector carrying the coefficient
    RingElement coefficient;
    Presentation presentation = Presentation::Restricted;
    /// Fiber classes summed into this coefficient.
    std::size_t fiber_size = 1;
};

/// A term of the general quantum Lefschetz formula that has no closed form:
/// carried by name only.
struct SymbolicResidue {
    CurveClass beta;
    Sector sector;
    std::vector<int> vanishing_coordinates;  // l with beta(xi_l) a negative integer
    std::vector<int> nonnegative_e_weights;  // j with beta(eps_j) a nonnegative integer
};

struct Diagnostic {
    std::string kind;  // "skipped", "hypothesis", "warning"
    std::string message;
};

struct IFunctionSeries {
    Rational degree_bound;
    int torus_rank = 0;
    int equivariant_rank = 0;
    std::vector<SectorClass> terms;
    std::vector<SymbolicResidue> residues;
    std::vector<Diagnostic> diagnostics;
};

/// Shared read-only context for a run: the presentation in effect, its Weyl
/// group, and memoized sector rings.
class Engine {
public:
    Engine(GitPresentation p, RunOptions opts);

    const GitPresentation& presentation() const { return p_; }
    const RunOptions& options() const { return opts_; }
    const WeylGroup& weyl() const { return weyl_; }
    long denominator_bound() const { return denom_; }

    /// Ring of a sector, built once.
    RingPtr ring(const Sector& s) const;
    RingPtr free_ring(int truncation) const;

private:
    GitPresentation p_;
    RunOptions opts_;
    WeylGroup weyl_;
    long denom_;
    mutable std::mutex mutex_;
    mutable std::map<Sector, RingPtr> rings_;
    mutable std::map<int, RingPtr> free_rings_;
};

/// Which formula a single fiber class contributes through.
enum class TermKind {
    Plain,               // prod_l C(beta, xi_l)
    ConvexRestricted,    // times prod_j C(beta, eps_j)^{-1}
    ConvexPushforward,   // additionally times prod_{beta(eps_j) integral} eps_j(t)
    TransversePushforward,
};

/// Formula used for an abelian class under the engine options; empty when
/// the class is skipped.
std::optional<TermKind> term_kind(const Engine& e, const CurveClass& beta);

/// The contribution of one class in `ring`, including the Delta-cleared root
/// factor when the presentation has roots and with_roots is set.
RingElement class_term(const Engine& e, const CurveClass& beta, const RingPtr& ring, TermKind kind, bool with_roots);

/// Involuted sector of beta, where its coefficient lives.
Sector landing_sector(const CurveClass& beta, const GitPresentation& p);

SectorClass toric_coefficient(const Engine& e, const CurveClass& beta);
IFunctionSeries toric_series(const GitPresentation& p, const Rational& bound);

/// Per-sector record of the abelianization steps, for inspection.
struct AbelianizationTrace {
    TPoly numerator;  // lift in Q[t]/m^{K+1}
    std::vector<QPoly> delta_factors;
    std::vector<std::size_t> stabilizer;
    bool numerator_anti_invariant = false;
    TPoly quotient;
    bool quotient_invariant = false;
};

/// Coefficients of the class beta_on_g, one per W-orbit of sectors met by the
/// fiber and per presentation tag.
std::vector<SectorClass> nonabelian_coefficient(const Engine& e, const QVec& beta_on_g, IFunctionSeries* log = nullptr,
                                                std::vector<AbelianizationTrace>* trace = nullptr);

/// Assembles the series for the options of the engine.
IFunctionSeries assemble(const Engine& e);
IFunctionSeries assemble(const GitPresentation& p, const RunOptions& opts);

/// An insertion t_i p_i(c_1(L_eta) + beta(eta) z) of the bigger I-function.
struct BigIInsertion {
    QPoly polynomial;          // variable k is x_{eta_k}
    std::vector<IntVec> etas;  // characters, r entries each
};

/// A series whose coefficients are polynomials in the insertion parameters
/// t_1..t_m (keyed by exponent monomial) with ring-element values.
struct TwistedTerm {
    SectorClass base;
    std::map<Monomial, RingElement> coefficients;
};

struct TwistedSeries {
    IFunctionSeries base;
    std::size_t num_parameters = 0;
    int t_order = 0;
    std::vector<TwistedTerm> terms;
};

/// Multiplies each term by exp(z^{-1} sum_i t_i p_i(c_1(L_eta) + beta(eta) z))
/// truncated at total t-degree t_order.
TwistedSeries big_i_twist(const IFunctionSeries& series, const GitPresentation& p,
                          const std::vector<BigIInsertion>& insertions, int t_order);

/// Sets every equivariant parameter to zero in each coefficient.
IFunctionSeries specialize_to_nonequivariant(const IFunctionSeries& s);

}  // namespace qmap
