#include "qmap/ifunction.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "qmap/errors.hpp"

namespace qmap {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::Toric: return "toric";
        case Mode::Nonabelian: return "nonabelian";
        case Mode::Lefschetz: return "lefschetz";
    }
    return "?";
}

std::string to_string(Convexity c) { return c == Convexity::ConvexOnly ? "convex-only" : "assume-transverse"; }

std::string to_string(Presentation p) { return p == Presentation::Restricted ? "restricted" : "pushforward"; }

namespace {

/// Evaluates f(0..n-1) on up to `threads` workers; results keep index order.
template <class F>
auto parallel_map(std::size_t n, unsigned threads, F f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<R> out;
    out.reserve(n);
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
        return out;
    }
    std::vector<std::future<std::vector<R>>> jobs;
    std::size_t chunks = std::min<std::size_t>(threads, n);
    for (std::size_t c = 0; c < chunks; ++c)
        jobs.push_back(std::async(std::launch::async, [&, c] {
            std::vector<R> part;
            for (std::size_t i = c; i < n; i += chunks) part.push_back(f(i));
            return part;
        }));
    std::vector<std::vector<R>> parts;
    for (auto& j : jobs) parts.push_back(j.get());
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::move(parts[i % chunks][i / chunks]));
    return out;
}

Rational theta_degree_on_g(const GitPresentation& p, const QVec& beta_on_g, const Rational& fallback) {
    if (p.chi_g_basis.empty()) {
        Rational d = 0;
        for (std::size_t i = 0; i < p.theta.size() && i < beta_on_g.size(); ++i) d += beta_on_g[i] * p.theta[i];
        return d;
    }
    std::vector<QVec> cols;
    for (const auto& chi : p.chi_g_basis) cols.push_back(to_qvec(chi));
    auto a = solve_independent(cols, to_qvec(p.theta));
    if (!a) return fallback;
    Rational d = 0;
    for (std::size_t k = 0; k < a->size(); ++k) d += (*a)[k] * beta_on_g[k];
    return d;
}

Presentation tag_of(TermKind k) {
    return (k == TermKind::Plain || k == TermKind::ConvexRestricted) ? Presentation::Restricted
                                                                     : Presentation::Pushforward;
}

bool is_zero_class(const CurveClass& b) {
    return std::all_of(b.values().begin(), b.values().end(), [](const Rational& q) { return is_zero(q); });
}

/// Decides the formula for one class, or records why it is not computed.
struct KindDecision {
    std::optional<TermKind> kind;
    std::vector<Diagnostic> diagnostics;
    std::optional<SymbolicResidue> residue;
};

KindDecision decide_kind(const Engine& e, const CurveClass& beta) {
    const auto& p = e.presentation();
    const auto& o = e.options();
    KindDecision d;
    if (o.mode != Mode::Lefschetz || p.e_weights.empty()) {
        d.kind = TermKind::Plain;
        return d;
    }
    auto bad = negative_integral_e_weights(beta, p);
    bool pushforward = o.presentation == Presentation::Pushforward;
    if (bad.empty()) {
        // Under the transversality assertion the excess-trivial formula covers
        // every class; on I-nonnegative classes it agrees with the convex one.
        if (pushforward && o.convexity == Convexity::AssumeTransverse)
            d.kind = TermKind::TransversePushforward;
        else
            d.kind = pushforward ? TermKind::ConvexPushforward : TermKind::ConvexRestricted;
        return d;
    }
    SymbolicResidue res;
    res.beta = beta;
    res.sector = landing_sector(beta, p);
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        Rational b = beta.pairing(p.weights[l]);
        if (is_integer(b) && sgn(b) < 0) res.vanishing_coordinates.push_back(static_cast<int>(l));
    }
    for (std::size_t j = 0; j < p.e_weights.size(); ++j) {
        Rational b = beta.pairing(p.e_weights[j]);
        if (is_integer(b) && sgn(b) >= 0) res.nonnegative_e_weights.push_back(static_cast<int>(j));
    }
    std::string eps;
    for (int j : bad) eps += (eps.empty() ? "" : ", ") + std::to_string(j);
    if (o.convexity == Convexity::ConvexOnly) {
        d.diagnostics.push_back({"skipped", "class " + beta.str() +
                                                " is not I-nonnegative (negative integral pairing with e_weights " +
                                                eps + "); term not computed"});
        d.residue = res;
        return d;
    }
    d.kind = TermKind::TransversePushforward;
    d.diagnostics.push_back({"hypothesis", "class " + beta.str() +
                                               " uses the excess-trivial pushforward formula; valid only under the "
                                               "user-asserted regularity hypothesis (e_weights " +
                                               eps + " pair negatively)"});
    return d;
}

void sort_terms(std::vector<SectorClass>& terms) {
    std::stable_sort(terms.begin(), terms.end(), [](const SectorClass& a, const SectorClass& b) {
        if (a.theta_degree != b.theta_degree) return a.theta_degree < b.theta_degree;
        if (a.beta != b.beta) return a.beta < b.beta;
        if (a.sector != b.sector) return a.sector < b.sector;
        return a.presentation < b.presentation;
    });
}

}  // namespace

Engine::Engine(GitPresentation p, RunOptions opts)
    : p_(opts.equivariant ? std::move(p) : p.non_equivariant()), opts_(std::move(opts)), weyl_(p_) {
    denom_ = opts_.denominator_bound > 0 ? opts_.denominator_bound : default_denominator_bound(p_);
}

RingPtr Engine::ring(const Sector& s) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = rings_.find(s);
    if (it != rings_.end()) return it->second;
    auto r = SectorRing::build(p_, s);
    rings_.emplace(s, r);
    return r;
}

RingPtr Engine::free_ring(int truncation) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = free_rings_.find(truncation);
    if (it != free_rings_.end()) return it->second;
    auto r = SectorRing::free(p_.torus_rank, truncation);
    free_rings_.emplace(truncation, r);
    return r;
}

std::optional<TermKind> term_kind(const Engine& e, const CurveClass& beta) { return decide_kind(e, beta).kind; }

Sector landing_sector(const CurveClass& beta, const GitPresentation& p) { return involute(sector_of(beta, p)); }

RingElement class_term(const Engine& e, const CurveClass& beta, const RingPtr& ring, TermKind kind, bool with_roots) {
    const auto& p = e.presentation();
    int r = p.torus_rank;
    RingElement out = RingElement::one(ring);
    for (const auto& xi : p.weights) {
        out *= c_factor(beta, xi, FactorVariant::Full, false, ring, r);
        if (out.is_zero()) return out;
    }
    if (kind != TermKind::Plain) {
        bool transverse = kind == TermKind::TransversePushforward;
        for (const auto& eps : p.e_weights) {
            out *= c_factor(beta, eps, transverse ? FactorVariant::Circle : FactorVariant::Full, true, ring, r);
            if (kind == TermKind::ConvexRestricted) continue;
            Rational b = beta.pairing(eps);
            if (is_integer(b) && (!transverse || sgn(b) >= 0)) out *= chern(ring, eps, r);
        }
    }
    if (with_roots && !p.roots.empty()) out *= weyl_numerator_factor(beta, p, ring).factor;
    return out;
}

SectorClass toric_coefficient(const Engine& e, const CurveClass& beta) {
    const auto& p = e.presentation();
    if (!p.is_abelian()) throw std::invalid_argument("toric_coefficient needs an abelian presentation");
    Sector s = landing_sector(beta, p);
    auto ring = e.ring(s);
    SectorClass out;
    out.beta = out.lift = beta;
    out.theta_degree = beta.theta_degree(p.theta);
    out.sector = s;
    out.coefficient = class_term(e, beta, ring, TermKind::Plain, false);
    return out;
}

IFunctionSeries toric_series(const GitPresentation& p, const Rational& bound) {
    RunOptions o;
    o.mode = Mode::Toric;
    o.degree_bound = bound;
    return assemble(p, o);
}

namespace {

struct FiberResult {
    std::vector<SectorClass> terms;
    std::vector<Diagnostic> diagnostics;
    std::vector<SymbolicResidue> residues;
    std::vector<AbelianizationTrace> traces;
};

FiberResult abelianize(const Engine& e, const QVec& beta_on_g, const std::vector<CurveClass>& fiber) {
    const auto& p = e.presentation();
    const auto& w = e.weyl();
    FiberResult res;
    if (fiber.empty()) return res;

    std::vector<QVec> order;
    std::map<QVec, std::vector<CurveClass>> by_element;
    for (const auto& c : fiber) {
        QVec el = sector_of(c, p).element;
        auto [it, fresh] = by_element.try_emplace(el);
        if (fresh) order.push_back(el);
        it->second.push_back(c);
    }
    std::set<QVec> seen;
    for (const auto& g : order) {
        if (seen.count(g)) continue;
        for (std::size_t i = 0; i < w.size(); ++i) seen.insert(w.act_on_element(i, g));
        const auto& classes = by_element[g];
        Sector sector = landing_sector(classes.front(), p);
        auto ring = e.ring(sector);
        if (ring->is_zero_ring()) continue;
        auto stab = w.stabilizer_of_element(g);

        std::map<Presentation, std::vector<std::pair<CurveClass, TermKind>>> groups;
        for (const auto& c : classes) {
            auto d = decide_kind(e, c);
            res.diagnostics.insert(res.diagnostics.end(), d.diagnostics.begin(), d.diagnostics.end());
            if (d.residue) res.residues.push_back(*d.residue);
            if (d.kind) groups[tag_of(*d.kind)].emplace_back(c, *d.kind);
        }
        // Delta_g depends on the sector only.
        std::vector<QPoly> delta;
        for (int idx : p.positive_roots)
            if (is_integer(classes.front().pairing(p.roots[idx]))) delta.push_back(weight_form(p.roots[idx], p.torus_rank));
        int k = ring->truncation() + static_cast<int>(delta.size());
        auto free = e.free_ring(k);

        for (const auto& [tag, members] : groups) {
            AbelianizationTrace tr;
            tr.delta_factors = delta;
            tr.stabilizer = stab;
            RingElement n(free);
            for (const auto& [c, kind] : members) n += class_term(e, c, free, kind, true);
            tr.numerator = n.poly();
            tr.numerator_anti_invariant = is_weyl_covariant(tr.numerator, w, stab, true);
            std::string where = "class " + CurveClass(beta_on_g).str() + ", sector of " + classes.front().str();
            if (!tr.numerator_anti_invariant)
                throw IntegrityError("abelianization numerator is not anti-invariant (" + where + ")");
            try {
                tr.quotient = divide_by_delta(tr.numerator, delta);
            } catch (const IntegrityError& ex) {
                throw IntegrityError(std::string(ex.what()) + " (" + where + ")");
            }
            tr.quotient_invariant = is_weyl_covariant(tr.quotient, w, stab, false);
            if (!tr.quotient_invariant)
                throw IntegrityError("quotient by the Weyl discriminant is not invariant (" + where + ")");
            SectorClass sc;
            sc.beta = CurveClass(beta_on_g);
            sc.lift = classes.front();
            sc.theta_degree = classes.front().theta_degree(p.theta);
            sc.sector = sector;
            sc.coefficient = RingElement(ring, tr.quotient);
            sc.presentation = tag;
            sc.fiber_size = members.size();
            res.traces.push_back(std::move(tr));
            if (!sc.coefficient.is_zero() || is_zero_class(sc.lift)) res.terms.push_back(std::move(sc));
        }
    }
    return res;
}

}  // namespace

std::vector<SectorClass> nonabelian_coefficient(const Engine& e, const QVec& beta_on_g, IFunctionSeries* log,
                                                std::vector<AbelianizationTrace>* trace) {
    const auto& p = e.presentation();
    Rational bound = theta_degree_on_g(p, beta_on_g, e.options().degree_bound);
    auto fiber = enumerate_fiber(p, beta_on_g, bound, e.denominator_bound());
    auto res = abelianize(e, beta_on_g, fiber);
    if (log) {
        log->diagnostics.insert(log->diagnostics.end(), res.diagnostics.begin(), res.diagnostics.end());
        log->residues.insert(log->residues.end(), res.residues.begin(), res.residues.end());
    }
    if (trace) trace->insert(trace->end(), res.traces.begin(), res.traces.end());
    return res.terms;
}

IFunctionSeries assemble(const Engine& e) {
    const auto& p = e.presentation();
    const auto& o = e.options();
    auto report = validate(p);
    if (!report.ok() && !report.theta_on_wall) {
        std::string msg = "invalid presentation:";
        for (const auto& err : report.errors) msg += "\n  " + err;
        throw ConfigError(msg);
    }
    if (o.mode == Mode::Toric && !p.is_abelian())
        throw ConfigError("toric mode needs an abelian presentation (roots must be empty)");
    if (sgn(o.degree_bound) < 0) throw ConfigError("degree bound must be nonnegative");

    IFunctionSeries s;
    s.degree_bound = o.degree_bound;
    s.torus_rank = p.torus_rank;
    s.equivariant_rank = p.equivariant_rank;
    for (const auto& wmsg : report.warnings) s.diagnostics.push_back({"warning", wmsg});
    if (o.mode == Mode::Lefschetz && p.e_weights.empty())
        s.diagnostics.push_back({"warning", "lefschetz mode without e_weights reduces to the plain coefficient"});

    auto classes = enumerate_classes(p, o.degree_bound, e.denominator_bound());

    if (p.is_abelian()) {
        auto results = parallel_map(classes.size(), o.threads, [&](std::size_t i) {
            const auto& beta = classes[i];
            auto d = decide_kind(e, beta);
            std::optional<SectorClass> sc;
            if (d.kind) {
                Sector sector = landing_sector(beta, p);
                auto ring = e.ring(sector);
                SectorClass t;
                t.beta = t.lift = beta;
                t.theta_degree = beta.theta_degree(p.theta);
                t.sector = sector;
                t.coefficient = class_term(e, beta, ring, *d.kind, false);
                t.presentation = tag_of(*d.kind);
                if (!t.coefficient.is_zero() || is_zero_class(beta)) sc = std::move(t);
            }
            return std::make_pair(std::move(d), std::move(sc));
        });
        for (auto& [d, sc] : results) {
            s.diagnostics.insert(s.diagnostics.end(), d.diagnostics.begin(), d.diagnostics.end());
            if (d.residue) s.residues.push_back(*d.residue);
            if (sc) s.terms.push_back(std::move(*sc));
        }
    } else {
        std::vector<QVec> keys;
        std::map<QVec, std::vector<CurveClass>> fibers;
        for (const auto& c : classes) {
            QVec key = restrict_to_g(c, p);
            auto [it, fresh] = fibers.try_emplace(key);
            if (fresh) keys.push_back(key);
            it->second.push_back(c);
        }
        auto results =
            parallel_map(keys.size(), o.threads, [&](std::size_t i) { return abelianize(e, keys[i], fibers.at(keys[i])); });
        for (auto& r : results) {
            s.diagnostics.insert(s.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
            s.residues.insert(s.residues.end(), r.residues.begin(), r.residues.end());
            for (auto& t : r.terms) s.terms.push_back(std::move(t));
        }
    }
    sort_terms(s.terms);

    if (!o.allow_mixed_presentations) {
        std::set<Presentation> tags;
        for (const auto& t : s.terms) tags.insert(t.presentation);
        if (tags.size() > 1)
            throw ConfigError(
                "series mixes restricted and pushforward presentations; request the pushforward presentation or "
                "allow mixed presentations explicitly");
    }
    if (p.equivariant_rank == 0) {
        for (const auto& t : s.terms)
            for (const auto& [m, c] : t.coefficient.terms())
                if (!c.is_z_laurent())
                    throw IntegrityError("coefficient of " + t.beta.str() + " has a denominator that is not a power of z: " +
                                         c.str());
    }
    return s;
}

IFunctionSeries assemble(const GitPresentation& p, const RunOptions& opts) { return assemble(Engine(p, opts)); }

namespace {

RingElement evaluate_insertion(const BigIInsertion& ins, const SectorClass& term, const GitPresentation& p) {
    const auto& ring = term.coefficient.ring();
    int r = p.torus_rank;
    std::vector<RingElement> values;
    for (const auto& eta : ins.etas) {
        RingElement v = chern(ring, eta, r);
        v += RingElement::constant(ring, CoeffFunction::z() * term.lift.pairing(eta));
        values.push_back(std::move(v));
    }
    RingElement out(ring);
    for (const auto& [m, c] : ins.polynomial.terms()) {
        RingElement mono = RingElement::constant(ring, CoeffFunction(c));
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0) continue;
            if (k >= values.size())
                throw ConfigError("big-I polynomial uses x" + std::to_string(k + 1) + " but only " +
                                  std::to_string(values.size()) + " characters are given");
            for (int e = 0; e < m[k]; ++e) mono *= values[k];
        }
        out += mono;
    }
    return out.scaled(CoeffFunction::z().inverse());
}

using ParamSeries = std::map<Monomial, RingElement>;

ParamSeries multiply(const ParamSeries& a, const ParamSeries& b, int t_order) {
    ParamSeries out;
    for (const auto& [ma, xa] : a)
        for (const auto& [mb, xb] : b) {
            if (total_degree(ma) + total_degree(mb) > t_order) continue;
            auto m = monomial_product(ma, mb);
            RingElement prod = xa * xb;
            auto it = out.find(m);
            if (it == out.end())
                out.emplace(m, std::move(prod));
            else
                it->second += prod;
        }
    return out;
}

}  // namespace

TwistedSeries big_i_twist(const IFunctionSeries& series, const GitPresentation& p,
                          const std::vector<BigIInsertion>& insertions, int t_order) {
    if (t_order < 0) throw std::invalid_argument("t_order must be nonnegative");
    TwistedSeries out;
    out.base = series;
    out.num_parameters = insertions.size();
    out.t_order = t_order;
    for (const auto& term : series.terms) {
        const auto& ring = term.coefficient.ring();
        ParamSeries x;
        for (std::size_t i = 0; i < insertions.size(); ++i) {
            RingElement v = evaluate_insertion(insertions[i], term, p);
            if (!v.is_zero()) x.emplace(variable_monomial(i), std::move(v));
        }
        ParamSeries sum{{Monomial{}, RingElement::one(ring)}};
        ParamSeries power = sum;
        for (int k = 1; k <= t_order && !x.empty(); ++k) {
            power = multiply(power, x, t_order);
            for (auto& [m, v] : power) v = v.scaled(CoeffFunction(Rational(1, k)));
            for (const auto& [m, v] : power) {
                auto it = sum.find(m);
                if (it == sum.end())
                    sum.emplace(m, v);
                else
                    it->second += v;
            }
        }
        TwistedTerm tt;
        tt.base = term;
        for (auto& [m, v] : sum) {
            RingElement c = v * term.coefficient;
            if (!c.is_zero()) tt.coefficients.emplace(m, std::move(c));
        }
        out.terms.push_back(std::move(tt));
    }
    return out;
}

IFunctionSeries specialize_to_nonequivariant(const IFunctionSeries& s) {
    IFunctionSeries out = s;
    out.equivariant_rank = 0;
    for (auto& t : out.terms) {
        TPoly lift;
        for (const auto& [m, c] : t.coefficient.terms()) lift.add_term(m, c.at_s_zero());
        t.coefficient = RingElement(t.coefficient.ring(), lift);
    }
    return out;
}

}  // namespace qmap
