#include "qmap/gitdata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qmap/errors.hpp"

namespace qmap {

namespace {

constexpr std::size_t kMaxWeights = 64;
constexpr std::size_t kMaxWeylOrder = 100000;

IntVec torus_part(const IntVec& xi, int r) { return IntVec(xi.begin(), xi.begin() + std::min<long>(r, xi.size())); }

QVec torus_qvec(const IntVec& xi, int r) { return to_qvec(torus_part(xi, r)); }

std::uint64_t mask_of(const std::vector<int>& idx) {
    std::uint64_t m = 0;
    for (int i : idx) m |= std::uint64_t{1} << i;
    return m;
}

std::vector<int> indices_of(std::uint64_t mask) {
    std::vector<int> out;
    for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1) out.push_back(i);
    return out;
}

/// Calls f on every subset of `pool` with at most k elements, in
/// lexicographic order of index lists.
void for_each_small_subset(const std::vector<int>& pool, std::size_t k,
                           const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        f(cur);
        if (cur.size() == k) return;
        for (std::size_t i = start; i < pool.size(); ++i) {
            cur.push_back(pool[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

std::string vec_str(const IntVec& v) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
    out << ")";
    return out.str();
}

std::string qvec_str(const QVec& v) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i].get_str();
    out << ")";
    return out.str();
}

std::vector<int> all_indices(std::size_t n) {
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>(i);
    return out;
}

IntMat mat_product(const IntMat& a, const IntMat& b) {
    std::size_t n = a.size();
    IntMat out(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

/// Sorted copies, for multiset comparison.
std::vector<IntVec> sorted(std::vector<IntVec> v) {
    std::sort(v.begin(), v.end());
    return v;
}

/// Whether some nonzero c >= 0 has sum c_l xi_l = 0 on the torus part. By
/// conformal decomposition it suffices to look for a sign-definite circuit,
/// and circuits have at most r + 1 elements.
std::optional<std::vector<int>> nonnegative_relation(const GitPresentation& p) {
    int r = p.torus_rank;
    std::optional<std::vector<int>> found;
    for_each_small_subset(all_indices(p.num_weights()), static_cast<std::size_t>(r) + 1,
                          [&](const std::vector<int>& s) {
                              if (found || s.empty()) return;
                              QMat m(static_cast<std::size_t>(r), QVec(s.size()));
                              for (std::size_t j = 0; j < s.size(); ++j)
                                  for (int i = 0; i < r; ++i) m[i][j] = p.weights[s[j]][i];
                              auto ker = nullspace(m);
                              if (ker.size() != 1) return;
                              int sign = 0;
                              for (const auto& c : ker[0]) {
                                  int sg = sgn(c);
                                  if (sg == 0 || (sign != 0 && sg != sign)) return;
                                  sign = sg;
                              }
                              found = s;
                          });
    return found;
}

}  // namespace

GitPresentation GitPresentation::non_equivariant() const {
    GitPresentation out = *this;
    for (auto& w : out.weights) w = torus_part(w, torus_rank);
    for (auto& e : out.e_weights) e = torus_part(e, torus_rank);
    out.equivariant_rank = 0;
    return out;
}

GitPresentation projective_space(int n) {
    if (n < 0) throw std::invalid_argument("projective_space: negative dimension");
    return weighted_projective(std::vector<long>(static_cast<std::size_t>(n) + 1, 1));
}

GitPresentation weighted_projective(const std::vector<long>& w) {
    if (w.empty()) throw std::invalid_argument("weighted_projective: no weights");
    GitPresentation p;
    p.torus_rank = 1;
    for (long x : w) {
        if (x <= 0) throw std::invalid_argument("weighted_projective: weights must be positive");
        p.weights.push_back({x});
    }
    p.theta = {1};
    p.chi_g_basis = {{1}};
    return p;
}

GitPresentation grassmannian(int k, int n) {
    if (k < 1 || n < k) throw std::invalid_argument("grassmannian: need 1 <= k <= n");
    GitPresentation p;
    p.torus_rank = k;
    auto unit = [k](int i) {
        IntVec e(static_cast<std::size_t>(k), 0);
        e[static_cast<std::size_t>(i)] = 1;
        return e;
    };
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) p.weights.push_back(unit(i));
    p.theta = IntVec(static_cast<std::size_t>(k), 1);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            IntVec root(static_cast<std::size_t>(k), 0);
            root[i] = 1;
            root[j] = -1;
            p.positive_roots.push_back(static_cast<int>(p.roots.size()));
            p.roots.push_back(root);
            for (auto& x : root) x = -x;
            p.roots.push_back(root);
        }
    for (int i = 0; i + 1 < k; ++i) {
        IntMat s(static_cast<std::size_t>(k), IntVec(static_cast<std::size_t>(k), 0));
        for (int j = 0; j < k; ++j) s[j][j] = 1;
        s[i][i] = s[i + 1][i + 1] = 0;
        s[i][i + 1] = s[i + 1][i] = 1;
        p.weyl_generators.push_back(s);
    }
    p.chi_g_basis = {IntVec(static_cast<std::size_t>(k), 1)};
    return p;
}

std::string CurveClass::str() const { return qvec_str(values_); }

IntVec apply_matrix(const IntMat& w, const IntVec& xi, int rank) {
    IntVec out = xi;
    for (int i = 0; i < rank; ++i) {
        long acc = 0;
        for (int j = 0; j < rank; ++j) acc += w[i][j] * xi[j];
        out[i] = acc;
    }
    return out;
}

std::vector<std::string> structural_errors(const GitPresentation& p) {
    std::vector<std::string> errs;
    int r = p.torus_rank;
    int q = p.equivariant_rank;
    if (r < 1) errs.push_back("torus_rank must be positive");
    if (q < 0) errs.push_back("equivariant_rank must be nonnegative");
    if (!errs.empty()) return errs;
    auto width = static_cast<std::size_t>(r + q);
    if (p.weights.empty()) errs.push_back("weights: at least one weight is required");
    if (p.weights.size() > kMaxWeights)
        errs.push_back("weights: at most " + std::to_string(kMaxWeights) + " weights are supported");
    for (std::size_t i = 0; i < p.weights.size(); ++i)
        if (p.weights[i].size() != width)
            errs.push_back("weights[" + std::to_string(i) + "]: expected " + std::to_string(width) + " entries, got " +
                           std::to_string(p.weights[i].size()));
    if (p.theta.size() != static_cast<std::size_t>(r))
        errs.push_back("theta: expected " + std::to_string(r) + " entries, got " + std::to_string(p.theta.size()));
    for (std::size_t i = 0; i < p.roots.size(); ++i)
        if (p.roots[i].size() != static_cast<std::size_t>(r))
            errs.push_back("roots[" + std::to_string(i) + "]: expected " + std::to_string(r) + " entries");
    for (std::size_t i = 0; i < p.positive_roots.size(); ++i) {
        int idx = p.positive_roots[i];
        if (idx < 0 || static_cast<std::size_t>(idx) >= p.roots.size())
            errs.push_back("positive_roots[" + std::to_string(i) + "]: index " + std::to_string(idx) + " out of range");
    }
    for (std::size_t g = 0; g < p.weyl_generators.size(); ++g) {
        const auto& m = p.weyl_generators[g];
        bool square = m.size() == static_cast<std::size_t>(r);
        for (const auto& row : m) square = square && row.size() == static_cast<std::size_t>(r);
        if (!square)
            errs.push_back("weyl_generators[" + std::to_string(g) + "]: expected a " + std::to_string(r) + "x" +
                           std::to_string(r) + " matrix");
    }
    for (std::size_t i = 0; i < p.e_weights.size(); ++i)
        if (p.e_weights[i].size() != width)
            errs.push_back("e_weights[" + std::to_string(i) + "]: expected " + std::to_string(width) + " entries");
    for (std::size_t i = 0; i < p.chi_g_basis.size(); ++i)
        if (p.chi_g_basis[i].size() != static_cast<std::size_t>(r))
            errs.push_back("chi_g_basis[" + std::to_string(i) + "]: expected " + std::to_string(r) + " entries");
    return errs;
}

std::vector<StableBasis> stable_bases(const GitPresentation& p, const std::vector<int>& subset) {
    std::vector<StableBasis> out;
    QVec theta = to_qvec(p.theta);
    for_each_small_subset(subset, static_cast<std::size_t>(p.torus_rank), [&](const std::vector<int>& b) {
        std::vector<QVec> cols;
        for (int i : b) cols.push_back(torus_qvec(p.weights[i], p.torus_rank));
        auto c = solve_independent(cols, theta);
        if (!c) return;
        for (const auto& x : *c)
            if (sgn(x) < 0) return;
        out.push_back({b, *c, mask_of(b)});
    });
    return out;
}

std::vector<StableBasis> stable_bases(const GitPresentation& p) { return stable_bases(p, all_indices(p.num_weights())); }

bool theta_in_cone(const GitPresentation& p, const std::vector<int>& subset) {
    // Caratheodory: theta is in the cone iff it is in the cone of an
    // independent subset.
    return !stable_bases(p, subset).empty();
}

std::vector<std::vector<int>> unstable_supports(const GitPresentation& p, const std::vector<int>& weight_subset) {
    // S is unstable iff it meets every stable basis inside the subset, so the
    // minimal ones are the minimal transversals of that hypergraph.
    auto bases = stable_bases(p, weight_subset);
    std::vector<std::uint64_t> edges;
    for (const auto& b : bases) edges.push_back(b.mask);
    std::vector<std::uint64_t> trans{0};
    for (auto e : edges) {
        std::vector<std::uint64_t> next;
        for (auto t : trans) {
            if (t & e) {
                next.push_back(t);
                continue;
            }
            for (auto rest = e; rest; rest &= rest - 1) next.push_back(t | (rest & -rest));
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        trans.clear();
        for (auto a : next) {
            bool minimal = true;
            for (auto b : next)
                if (b != a && (b & a) == b) {
                    minimal = false;
                    break;
                }
            if (minimal) trans.push_back(a);
        }
    }
    std::vector<std::vector<int>> out;
    for (auto t : trans) out.push_back(indices_of(t));
    std::sort(out.begin(), out.end());
    return out;
}

ValidationReport validate(const GitPresentation& p) {
    ValidationReport rep;
    rep.errors = structural_errors(p);
    if (!rep.ok()) return rep;
    int r = p.torus_rank;

    QMat wm;
    for (const auto& w : p.weights) wm.push_back(torus_qvec(w, r));
    if (rank(wm) != static_cast<std::size_t>(r))
        rep.errors.push_back("weights do not span the character space (rank " + std::to_string(rank(wm)) + " < " +
                             std::to_string(r) + ")");

    // Roots: closed under negation, one positive root per pair.
    std::set<IntVec> root_set(p.roots.begin(), p.roots.end());
    for (const auto& rt : p.roots) {
        IntVec neg = rt;
        for (auto& x : neg) x = -x;
        if (std::all_of(rt.begin(), rt.end(), [](long x) { return x == 0; }))
            rep.errors.push_back("roots: zero vector is not a root");
        else if (!root_set.count(neg))
            rep.errors.push_back("roots: negative of " + vec_str(rt) + " is missing");
    }
    if (root_set.size() != p.roots.size()) rep.errors.push_back("roots: duplicate entries");
    {
        std::set<IntVec> chosen;
        for (int idx : p.positive_roots) {
            IntVec rt = p.roots[idx];
            IntVec neg = rt;
            for (auto& x : neg) x = -x;
            if (chosen.count(rt) || chosen.count(neg))
                rep.errors.push_back("positive_roots: pair of " + vec_str(rt) + " selected twice");
            chosen.insert(rt);
        }
        if (2 * chosen.size() != p.roots.size())
            rep.errors.push_back("positive_roots must select exactly one root from each +/- pair");
    }

    // Weyl generators.
    std::vector<IntVec> sorted_weights = sorted(p.weights);
    std::vector<IntVec> sorted_e = sorted(p.e_weights);
    for (std::size_t g = 0; g < p.weyl_generators.size(); ++g) {
        const auto& w = p.weyl_generators[g];
        std::string name = "weyl_generators[" + std::to_string(g) + "]";
        Rational det = determinant(to_qmat(w));
        if (det != 1 && det != -1) {
            rep.errors.push_back(name + ": determinant " + det.get_str() + " is not +/-1");
            continue;
        }
        if (apply_matrix(w, p.theta, r) != p.theta) rep.errors.push_back(name + ": does not fix theta");
        for (std::size_t i = 0; i < p.chi_g_basis.size(); ++i)
            if (apply_matrix(w, p.chi_g_basis[i], r) != p.chi_g_basis[i])
                rep.errors.push_back(name + ": does not fix chi_g_basis[" + std::to_string(i) + "]");
        std::vector<IntVec> img;
        for (const auto& x : p.weights) img.push_back(apply_matrix(w, x, r));
        if (sorted(img) != sorted_weights) rep.errors.push_back(name + ": weights multiset is not W-stable");
        img.clear();
        for (const auto& x : p.e_weights) img.push_back(apply_matrix(w, x, r));
        if (sorted(img) != sorted_e) rep.errors.push_back(name + ": e_weights multiset is not W-stable");
        for (const auto& rt : p.roots)
            if (!root_set.count(apply_matrix(w, rt, r))) {
                rep.errors.push_back(name + ": does not permute the roots");
                break;
            }
    }
    if (rep.ok() && !p.weyl_generators.empty()) {
        try {
            WeylGroup wg(p);
        } catch (const std::exception& e) {
            rep.errors.push_back(e.what());
        }
    }
    if (!rep.ok()) return rep;

    if (auto rel = nonnegative_relation(p)) {
        std::ostringstream msg;
        msg << "weights";
        for (int i : *rel) msg << " " << i;
        msg << " admit a nonnegative linear relation: the affine quotient is not a point and the "
               "theta-degree does not bound curve classes";
        rep.errors.push_back(msg.str());
    }
    auto bases = stable_bases(p);
    if (bases.empty()) rep.errors.push_back("theta is not in the cone of the weights: the stable locus is empty");
    for (const auto& b : bases) {
        bool wall = b.indices.size() < static_cast<std::size_t>(r);
        for (const auto& c : b.coefficients) wall = wall || is_zero(c);
        if (wall) {
            rep.theta_on_wall = true;
            std::ostringstream msg;
            msg << "theta lies on a wall: it is in the cone of the weights {";
            bool first = true;
            for (std::size_t i = 0; i < b.indices.size(); ++i) {
                if (is_zero(b.coefficients[i])) continue;
                msg << (first ? "" : ", ") << b.indices[i];
                first = false;
            }
            msg << "}, fewer than " << r << ", so the stable and semistable loci differ";
            rep.errors.push_back(msg.str());
            break;
        }
    }

    if (!p.e_weights.empty())
        rep.warnings.push_back(
            "user-asserted: the zero locus of the section of E is smooth in the stable locus (not checked)");
    if (!p.roots.empty())
        rep.warnings.push_back(
            "user-asserted: centralizers of the sector elements are connected and the torus and group quotients "
            "are smooth (not decidable from weight data)");
    return rep;
}

Sector sector_of(const CurveClass& beta, const GitPresentation& p) {
    Sector s;
    for (const auto& v : beta.values()) s.element.push_back(frac(v));
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        Rational f = frac(beta.pairing(p.weights[l]));
        if (is_zero(f)) s.fixed_support.push_back(static_cast<int>(l));
        s.fracs.push_back(f);
    }
    s.order = beta.order();
    return s;
}

Sector involute(const Sector& s) {
    Sector out = s;
    for (auto& x : out.element) x = frac(-x);
    for (auto& x : out.fracs) x = frac(-x);
    return out;
}

std::set<long> sector_orders(const GitPresentation& p) {
    // The torus elements fixing the weights of a full basis B form
    // M_B^{-1} Z^r / Z^r, a finite abelian group whose element orders are
    // the divisors of its exponent.
    std::set<long> out{1};
    int r = p.torus_rank;
    for (const auto& b : stable_bases(p)) {
        if (b.indices.size() != static_cast<std::size_t>(r)) continue;
        QMat m;
        for (int i : b.indices) m.push_back(torus_qvec(p.weights[i], r));
        auto inv = inverse(m);
        QVec entries;
        for (const auto& row : *inv) entries.insert(entries.end(), row.begin(), row.end());
        long e = lcm_denominators(entries).get_si();
        for (long d = 1; d <= e; ++d)
            if (e % d == 0) out.insert(d);
    }
    return out;
}

long default_denominator_bound(const GitPresentation& p) {
    Integer l = 1;
    for (long d : sector_orders(p)) {
        Integer dd = d;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), dd.get_mpz_t());
    }
    return l.get_si();
}

QVec restrict_to_g(const CurveClass& beta, const GitPresentation& p) {
    if (p.chi_g_basis.empty()) return beta.values();
    QVec out;
    for (const auto& chi : p.chi_g_basis) out.push_back(beta.pairing(chi));
    return out;
}

std::vector<CurveClass> enumerate_classes(const GitPresentation& p, const Rational& degree_bound,
                                          long denominator_bound) {
    if (denominator_bound < 1) throw std::invalid_argument("denominator bound must be positive");
    int r = p.torus_rank;
    std::set<CurveClass> found;
    if (sgn(degree_bound) < 0) return {};
    auto bases = stable_bases(p);
    bool small_basis = false;
    for (const auto& b : bases) {
        if (b.indices.size() != static_cast<std::size_t>(r)) {
            small_basis = true;
            continue;
        }
        QMat m;
        for (int i : b.indices) m.push_back(torus_qvec(p.weights[i], r));
        QMat inv = *inverse(m);
        for (std::size_t l = 0; l < b.coefficients.size(); ++l)
            if (is_zero(b.coefficients[l])) {
                QVec dir(static_cast<std::size_t>(r));
                for (int i = 0; i < r; ++i) dir[i] = inv[i][l];
                throw UnboundedEnumeration("theta lies on a wall: the direction " + qvec_str(dir) +
                                           " has theta-degree 0, so the classes of bounded degree are not finite");
            }
    }
    if (small_basis)
        throw UnboundedEnumeration("theta lies on a wall: it is in the cone of fewer than " + std::to_string(r) +
                                   " weights");
    for (const auto& b : bases) {
        QMat m;
        for (int i : b.indices) m.push_back(torus_qvec(p.weights[i], r));
        QMat inv = *inverse(m);
        // beta = M^{-1} v with integers v >= 0 and sum c_l v_l <= bound.
        IntVec v(static_cast<std::size_t>(r), 0);
        std::function<void(std::size_t, Rational)> rec = [&](std::size_t l, Rational left) {
            if (l == v.size()) {
                QVec vals = mat_vec(inv, to_qvec(v));
                CurveClass c(std::move(vals));
                Integer a = c.order();
                if (Integer(denominator_bound) % a == 0) found.insert(std::move(c));
                return;
            }
            for (long k = 0;; ++k) {
                Rational used = b.coefficients[l] * k;
                if (used > left) break;
                v[l] = k;
                rec(l + 1, left - used);
            }
            v[l] = 0;
        };
        rec(0, degree_bound);
    }
    std::vector<CurveClass> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [&](const CurveClass& a, const CurveClass& b) {
        Rational da = a.theta_degree(p.theta), db = b.theta_degree(p.theta);
        if (da != db) return da < db;
        return a < b;
    });
    return out;
}

std::vector<CurveClass> enumerate_fiber(const GitPresentation& p, const QVec& beta_on_g, const Rational& degree_bound,
                                        long denominator_bound) {
    std::vector<CurveClass> out;
    for (auto& c : enumerate_classes(p, degree_bound, denominator_bound))
        if (restrict_to_g(c, p) == beta_on_g) out.push_back(std::move(c));
    return out;
}

WeylGroup::WeylGroup(const GitPresentation& p) {
    int r = p.torus_rank;
    IntMat id(static_cast<std::size_t>(r), IntVec(static_cast<std::size_t>(r), 0));
    for (int i = 0; i < r; ++i) id[i][i] = 1;
    elements_.push_back(id);
    std::set<IntMat> seen{id};
    for (std::size_t head = 0; head < elements_.size(); ++head) {
        for (const auto& g : p.weyl_generators) {
            IntMat next = mat_product(g, elements_[head]);
            if (seen.insert(next).second) {
                elements_.push_back(next);
                if (elements_.size() > kMaxWeylOrder)
                    throw std::invalid_argument("weyl_generators generate a group of order > " +
                                                std::to_string(kMaxWeylOrder) + " (not a finite Weyl group?)");
            }
        }
    }
    for (const auto& w : elements_) {
        QMat q = to_qmat(w);
        Rational det = determinant(q);
        if (det != 1 && det != -1) throw std::invalid_argument("Weyl group element with determinant " + det.get_str());
        signs_.push_back(sgn(det));
        inverse_transpose_.push_back(transpose(*inverse(q)));
    }
}

CurveClass WeylGroup::act(std::size_t i, const CurveClass& beta) const {
    return CurveClass(mat_vec(inverse_transpose_[i], beta.values()));
}

IntVec WeylGroup::act_on_character(std::size_t i, const IntVec& xi) const {
    return apply_matrix(elements_[i], xi, static_cast<int>(elements_[i].size()));
}

QVec WeylGroup::act_on_element(std::size_t i, const QVec& element) const {
    QVec out = mat_vec(inverse_transpose_[i], element);
    for (auto& x : out) x = frac(x);
    return out;
}

std::vector<std::size_t> WeylGroup::stabilizer_of_element(const QVec& element) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (act_on_element(i, element) == element) out.push_back(i);
    return out;
}

std::vector<WeylOrbit> weyl_orbits(const WeylGroup& w, const std::vector<CurveClass>& classes) {
    std::set<CurveClass> all(classes.begin(), classes.end());
    std::set<CurveClass> done;
    std::vector<WeylOrbit> out;
    for (const auto& c : classes) {
        if (done.count(c)) continue;
        WeylOrbit orbit;
        orbit.representative = c;
        std::set<CurveClass> members;
        for (std::size_t i = 0; i < w.size(); ++i) {
            CurveClass img = w.act(i, c);
            if (!all.count(img))
                throw std::invalid_argument("class set is not W-closed: " + img.str() + " (image of " + c.str() +
                                            ") is missing");
            if (img == c) orbit.stabilizer.push_back(i);
            members.insert(img);
        }
        orbit.members.assign(members.begin(), members.end());
        done.insert(members.begin(), members.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

}  // namespace qmap
