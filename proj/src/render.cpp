#include "qmap/render.hpp"

#include <json.hpp>

#include <regex>
#include <sstream>

#include "qmap/config.hpp"
#include "qmap/errors.hpp"

namespace qmap {

using Json = nlohmann::ordered_json;

Format parse_format(const std::string& name) {
    if (name == "plain") return Format::Plain;
    if (name == "latex") return Format::Latex;
    if (name == "json") return Format::Json;
    throw ConfigError("unknown output format '" + name + "' (expected plain, latex or json)");
}

namespace {

std::string latex_name(const std::string& name) {
    static const std::regex indexed(R"(([A-Za-z]+)_?(\d+))");
    std::smatch m;
    if (std::regex_match(name, m, indexed)) return m[1].str() + "_{" + m[2].str() + "}";
    return name;
}

std::vector<std::string> t_names(const std::vector<std::string>& given, std::size_t r, TextStyle style) {
    std::vector<std::string> names = given.size() >= r ? given : default_names(static_cast<int>(r));
    if (style == TextStyle::Latex)
        for (auto& n : names) n = latex_name(n);
    return names;
}

std::vector<std::string> c_names(std::size_t q, TextStyle style) {
    auto names = coeff_variable_names(q);
    if (style == TextStyle::Latex)
        for (auto& n : names) n = latex_name(n);
    return names;
}

std::string monomial_str(const Monomial& m, const std::vector<std::string>& names, TextStyle style) {
    bool latex = style == TextStyle::Latex;
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += latex ? " " : "*";
        out += i < names.size() ? names[i] : "t" + std::to_string(i + 1);
        if (m[i] > 1) out += latex ? "^{" + std::to_string(m[i]) + "}" : "^" + std::to_string(m[i]);
    }
    return out;
}

std::size_t parameter_count(const TPoly& p) {
    std::size_t q = 0;
    for (const auto& [m, c] : p.terms()) q = std::max(q, c.num_parameters());
    return q;
}

std::string rational_latex(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    std::string sign = sgn(q) < 0 ? "-" : "";
    return sign + "\\frac{" + Integer(abs(q.get_num())).get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string class_label(const CurveClass& beta, TextStyle style) {
    bool latex = style == TextStyle::Latex;
    const auto& v = beta.values();
    auto one = [&](const Rational& q) { return latex ? rational_latex(q) : q.get_str(); };
    if (v.size() == 1) return latex ? "q^{" + one(v[0]) + "}" : "q^(" + one(v[0]) + ")";
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + one(v[i]);
    return latex ? "q^{(" + s + ")}" : "q^(" + s + ")";
}

bool is_zero_values(const QVec& v) {
    for (const auto& q : v)
        if (!is_zero(q)) return false;
    return true;
}

std::string qvec_text(const QVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return "(" + s + ")";
}

/// Prefix for a term: Novikov variable, twisted sector, presentation tag.
std::string term_label(const SectorClass& t, TextStyle style) {
    bool latex = style == TextStyle::Latex;
    std::vector<std::string> parts;
    if (!is_zero_values(t.beta.values())) parts.push_back(class_label(t.beta, style));
    if (!t.sector.is_untwisted())
        parts.push_back(latex ? "\\mathbf{1}_{" + qvec_text(t.sector.element) + "}" : "[g=" + qvec_text(t.sector.element) + "]");
    if (t.presentation == Presentation::Pushforward) parts.push_back(latex ? "\\iota_{*}" : "[pushforward]");
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
    return out;
}

/// True if s has a top-level " + " or " - ".
bool is_sum(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i + 2 < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (depth == 0 && c == ' ' && (s[i + 1] == '+' || s[i + 1] == '-') && s[i + 2] == ' ') return true;
    }
    return false;
}

std::string attach(const std::string& label, const std::string& body, TextStyle style) {
    if (label.empty()) return body;
    if (body == "1") return label;
    if (style == TextStyle::Latex) return label + (is_sum(body) ? " \\left(" + body + "\\right)" : " " + body);
    return label + " * " + (is_sum(body) ? "(" + body + ")" : body);
}

/// (t, z, s) linear form xi(t) + sigma(s) + k z.
QPoly factor_form(const IntVec& xi, const Rational& k, int r) {
    QPoly f;
    for (int i = 0; i < r; ++i) f.add_term(variable_monomial(static_cast<std::size_t>(i)), Rational(xi[i]));
    f.add_term(variable_monomial(static_cast<std::size_t>(r)), k);
    for (std::size_t p = static_cast<std::size_t>(r); p < xi.size(); ++p)
        f.add_term(variable_monomial(p + 1), Rational(xi[p]));
    return f;
}

struct FactorList {
    std::vector<std::pair<QPoly, int>> factors;

    void add(const QPoly& f, int power) {
        for (auto& [g, e] : factors)
            if (g == f) {
                e += power;
                return;
            }
        factors.emplace_back(f, power);
    }

    /// Returns false when the factor needs an inverse that does not exist.
    bool add_c(const CurveClass& beta, const IntVec& xi, FactorVariant variant, bool inverted, int r) {
        Rational b = beta.pairing(IntVec(xi.begin(), xi.begin() + r));
        bool prefactor = variant == FactorVariant::Full && is_integer(b) && sgn(b) < 0;
        if (prefactor && inverted) return false;
        int power = ((sgn(b) > 0) != inverted) ? -1 : 1;
        for (const auto& k : k_range(b)) add(factor_form(xi, k, r), power);
        if (prefactor) add(factor_form(xi, 0, r), 1);
        return true;
    }
};

/// Linear form in variable order t, z, s, e.g. "H + 2 z".
std::string linear_latex(const QPoly& f, const std::vector<std::string>& vars) {
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        Rational c = f.coefficient(variable_monomial(i));
        if (is_zero(c)) continue;
        Rational mag = abs(c);
        if (out.empty())
            out = sgn(c) < 0 ? "-" : "";
        else
            out += sgn(c) < 0 ? " - " : " + ";
        if (mag != 1) out += rational_latex(mag) + " ";
        out += vars[i];
    }
    return out;
}

std::optional<std::string> factored_latex(const SectorClass& t, const Engine& e, const std::vector<std::string>& names) {
    const auto& p = e.presentation();
    if (!p.is_abelian()) return std::nullopt;
    auto kind = term_kind(e, t.beta);
    if (!kind) return std::nullopt;
    int r = p.torus_rank;
    FactorList list;
    for (const auto& xi : p.weights) list.add_c(t.beta, xi, FactorVariant::Full, false, r);
    if (*kind != TermKind::Plain) {
        bool transverse = *kind == TermKind::TransversePushforward;
        for (const auto& eps : p.e_weights) {
            if (!list.add_c(t.beta, eps, transverse ? FactorVariant::Circle : FactorVariant::Full, true, r))
                return std::nullopt;
            if (*kind == TermKind::ConvexRestricted) continue;
            Rational b = t.beta.pairing(eps);
            if (is_integer(b) && (!transverse || sgn(b) >= 0)) list.add(factor_form(eps, 0, r), 1);
        }
    }
    std::vector<std::string> vars = t_names(names, static_cast<std::size_t>(r), TextStyle::Latex);
    vars.resize(static_cast<std::size_t>(r));
    for (const auto& n : c_names(static_cast<std::size_t>(p.equivariant_rank), TextStyle::Latex)) vars.push_back(n);
    std::string out;
    for (const auto& [f, e] : list.factors) {
        if (e == 0) continue;
        std::string s = linear_latex(f, vars);
        if (f.size() > 1) s = "(" + s + ")";
        if (e != 1) s += "^{" + std::to_string(e) + "}";
        out += (out.empty() ? "" : " ") + s;
    }
    return out.empty() ? "1" : out;
}

std::string comment_prefix(TextStyle style) { return style == TextStyle::Latex ? "% " : "# "; }

std::string residue_text(const SymbolicResidue& res) {
    std::string s = "residue: " + class_label(res.beta, TextStyle::Plain);
    if (!res.sector.is_untwisted()) s += " [g=" + qvec_text(res.sector.element) + "]";
    s += " not computed in closed form";
    auto list = [](const std::vector<int>& v) {
        std::string o;
        for (int i : v) o += (o.empty() ? "" : ", ") + std::to_string(i);
        return "{" + o + "}";
    };
    s += "; vanishing coordinates " + list(res.vanishing_coordinates) + ", nonnegative e_weights " +
         list(res.nonnegative_e_weights);
    return s;
}

std::string preamble(const IFunctionSeries& s, TextStyle style) {
    std::string out;
    for (const auto& d : s.diagnostics) out += comment_prefix(style) + d.kind + ": " + d.message + "\n";
    for (const auto& r : s.residues) out += comment_prefix(style) + residue_text(r) + "\n";
    return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
    if (lines.empty()) return "0\n";
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (i == 0) {
            out += l;
        } else if (!l.empty() && l[0] == '-') {
            out += "\n- " + l.substr(1);
        } else {
            out += "\n+ " + l;
        }
    }
    return out + "\n";
}

std::string render_text(const IFunctionSeries& s, TextStyle style, const RenderOptions& opts) {
    auto names = t_names(opts.names, static_cast<std::size_t>(s.torus_rank), TextStyle::Plain);
    std::vector<std::string> lines;
    for (const auto& t : s.terms) {
        std::string body;
        if (style == TextStyle::Latex && opts.latex_factored && opts.engine)
            if (auto f = factored_latex(t, *opts.engine, names)) body = *f;
        if (body.empty()) body = element_str(t.coefficient, names, style);
        lines.push_back(attach(term_label(t, style), body, style));
    }
    return preamble(s, style) + join_lines(lines);
}

std::string render_text(const TwistedSeries& s, TextStyle style, const RenderOptions& opts) {
    auto names = t_names(opts.names, static_cast<std::size_t>(s.base.torus_rank), TextStyle::Plain);
    std::vector<std::string> params;
    for (std::size_t i = 1; i <= s.num_parameters; ++i)
        params.push_back(style == TextStyle::Latex ? "\\tau_{" + std::to_string(i) + "}" : "tau" + std::to_string(i));
    std::vector<std::string> lines;
    for (const auto& tt : s.terms) {
        std::string label = term_label(tt.base, style);
        for (const auto& [m, c] : tt.coefficients) {
            std::string pm = monomial_str(m, params, style);
            std::string full = label;
            if (!pm.empty()) full += (full.empty() ? "" : " ") + pm;
            lines.push_back(attach(full, element_str(c, names, style), style));
        }
    }
    std::string head = preamble(s.base, style);
    head += comment_prefix(style) + "big-I parameters: " + std::to_string(s.num_parameters) +
            ", truncated at total degree " + std::to_string(s.t_order) + "\n";
    return head + join_lines(lines);
}

// ---------------------------------------------------------------- JSON

Json rat_json(const Rational& q) { return Json::array({q.get_num().get_str(), q.get_den().get_str()}); }

Json qvec_json(const QVec& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(rat_json(q));
    return a;
}

Json sector_json(const Sector& s) {
    return Json{{"element", qvec_json(s.element)},
                {"fracs", qvec_json(s.fracs)},
                {"fixed_support", s.fixed_support},
                {"order", s.order.get_str()}};
}

Json coeff_json(const CoeffFunction& c) {
    Json num = Json::array();
    for (const auto& [m, q] : c.numerator().terms()) num.push_back(Json{{"exponents", m}, {"coefficient", rat_json(q)}});
    Json den = Json::array();
    for (const auto& [key, power] : c.denominator_factors())
        den.push_back(Json{{"form", qvec_json(key)}, {"power", power}});
    return Json{{"numerator", num}, {"denominator_factors", den}};
}

Json element_json(const RingElement& x) {
    Json a = Json::array();
    for (const auto& [m, c] : x.terms()) {
        Json e = coeff_json(c);
        Json item{{"t", m}};
        item["numerator"] = e["numerator"];
        item["denominator_factors"] = e["denominator_factors"];
        a.push_back(item);
    }
    return a;
}

Json term_json(const SectorClass& t, const std::vector<std::pair<Monomial, const RingElement*>>& coeffs) {
    Json c = Json::array();
    for (const auto& [m, x] : coeffs) c.push_back(Json{{"parameters", m}, {"value", element_json(*x)}});
    return Json{{"class", qvec_json(t.beta.values())},
                {"lift", qvec_json(t.lift.values())},
                {"theta_degree", rat_json(t.theta_degree)},
                {"sector", sector_json(t.sector)},
                {"presentation", to_string(t.presentation)},
                {"fiber_size", t.fiber_size},
                {"coefficients", c}};
}

Json header_json(const IFunctionSeries& s) {
    return Json{{"schema_version", kSchemaVersion},
                {"degree_bound", rat_json(s.degree_bound)},
                {"torus_rank", s.torus_rank},
                {"equivariant_rank", s.equivariant_rank}};
}

void append_tail(Json& doc, const IFunctionSeries& s) {
    Json res = Json::array();
    for (const auto& r : s.residues)
        res.push_back(Json{{"class", qvec_json(r.beta.values())},
                           {"sector", sector_json(r.sector)},
                           {"vanishing_coordinates", r.vanishing_coordinates},
                           {"nonnegative_e_weights", r.nonnegative_e_weights}});
    Json diag = Json::array();
    for (const auto& d : s.diagnostics) diag.push_back(Json{{"kind", d.kind}, {"message", d.message}});
    doc["residues"] = res;
    doc["diagnostics"] = diag;
}

Rational parse_rat(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ConfigError("expected a [numerator, denominator] pair");
    Rational q(Integer(j[0].get<std::string>()), Integer(j[1].get<std::string>()));
    if (q.get_den() == 0) throw ConfigError("zero denominator in rational pair");
    q.canonicalize();
    return q;
}

QVec parse_qvec(const Json& j) {
    QVec v;
    for (const auto& x : j) v.push_back(parse_rat(x));
    return v;
}

Sector parse_sector(const Json& j) {
    Sector s;
    s.element = parse_qvec(j.at("element"));
    s.fracs = parse_qvec(j.at("fracs"));
    s.fixed_support = j.at("fixed_support").get<std::vector<int>>();
    s.order = Integer(j.at("order").get<std::string>());
    return s;
}

TPoly parse_element_poly(const Json& j) {
    TPoly p;
    for (const auto& item : j) {
        QPoly num;
        for (const auto& t : item.at("numerator"))
            num.add_term(make_monomial(t.at("exponents").get<std::vector<int>>()), parse_rat(t.at("coefficient")));
        CoeffFunction::Factors den;
        for (const auto& f : item.at("denominator_factors")) den[parse_qvec(f.at("form"))] = f.at("power").get<int>();
        p.add_term(make_monomial(item.at("t").get<std::vector<int>>()), CoeffFunction::from_parts(num, den));
    }
    return p;
}

class RingCache {
public:
    explicit RingCache(int r) : r_(r) {}
    RingElement make(const TPoly& p) {
        int k = std::max(0, p.degree());
        auto it = rings_.find(k);
        if (it == rings_.end()) it = rings_.emplace(k, SectorRing::free(r_, k)).first;
        return RingElement(it->second, p);
    }

private:
    int r_;
    std::map<int, RingPtr> rings_;
};

Presentation parse_presentation_tag(const std::string& s) {
    if (s == "restricted") return Presentation::Restricted;
    if (s == "pushforward") return Presentation::Pushforward;
    throw ConfigError("unknown presentation tag '" + s + "'");
}

struct ParsedDoc {
    TwistedSeries twisted;
    bool has_big_i = false;
};

ParsedDoc parse_doc(const std::string& text) {
    ParsedDoc out;
    try {
        Json doc = Json::parse(text);
        int version = doc.at("schema_version").get<int>();
        if (version != kSchemaVersion)
            throw ConfigError("unsupported schema_version " + std::to_string(version) + " (expected " +
                              std::to_string(kSchemaVersion) + ")");
        auto& base = out.twisted.base;
        base.degree_bound = parse_rat(doc.at("degree_bound"));
        base.torus_rank = doc.at("torus_rank").get<int>();
        base.equivariant_rank = doc.at("equivariant_rank").get<int>();
        if (doc.contains("big_i") && !doc["big_i"].is_null()) {
            out.has_big_i = true;
            out.twisted.num_parameters = doc["big_i"].at("num_parameters").get<std::size_t>();
            out.twisted.t_order = doc["big_i"].at("t_order").get<int>();
        }
        RingCache rings(base.torus_rank);
        for (const auto& jt : doc.at("terms")) {
            TwistedTerm tt;
            auto& t = tt.base;
            t.beta = CurveClass(parse_qvec(jt.at("class")));
            t.lift = CurveClass(parse_qvec(jt.at("lift")));
            t.theta_degree = parse_rat(jt.at("theta_degree"));
            t.sector = parse_sector(jt.at("sector"));
            t.presentation = parse_presentation_tag(jt.at("presentation").get<std::string>());
            t.fiber_size = jt.at("fiber_size").get<std::size_t>();
            TPoly unit_part;
            for (const auto& c : jt.at("coefficients")) {
                Monomial m = make_monomial(c.at("parameters").get<std::vector<int>>());
                TPoly value = parse_element_poly(c.at("value"));
                if (m.empty()) unit_part = value;
                tt.coefficients.emplace(m, rings.make(value));
            }
            t.coefficient = rings.make(unit_part);
            base.terms.push_back(t);
            out.twisted.terms.push_back(std::move(tt));
        }
        for (const auto& jr : doc.at("residues")) {
            SymbolicResidue r;
            r.beta = CurveClass(parse_qvec(jr.at("class")));
            r.sector = parse_sector(jr.at("sector"));
            r.vanishing_coordinates = jr.at("vanishing_coordinates").get<std::vector<int>>();
            r.nonnegative_e_weights = jr.at("nonnegative_e_weights").get<std::vector<int>>();
            base.residues.push_back(std::move(r));
        }
        for (const auto& jd : doc.at("diagnostics"))
            base.diagnostics.push_back({jd.at("kind").get<std::string>(), jd.at("message").get<std::string>()});
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("malformed series document: ") + e.what());
    }
    return out;
}

bool same_sector(const Sector& a, const Sector& b) {
    return a.element == b.element && a.fracs == b.fracs && a.fixed_support == b.fixed_support && a.order == b.order;
}

bool same_term(const SectorClass& a, const SectorClass& b) {
    return a.beta == b.beta && a.lift == b.lift && a.theta_degree == b.theta_degree && same_sector(a.sector, b.sector) &&
           a.coefficient.poly() == b.coefficient.poly() && a.presentation == b.presentation &&
           a.fiber_size == b.fiber_size;
}

}  // namespace

std::string element_str(const RingElement& x, const std::vector<std::string>& names, TextStyle style) {
    if (x.is_zero()) return "0";
    const auto& poly = x.poly();
    std::size_t r = 0;
    for (const auto& [m, c] : poly.terms()) r = std::max(r, m.size());
    auto tn = t_names(names, std::max<std::size_t>(r, names.size()), style);
    auto cn = c_names(parameter_count(poly), style);
    std::vector<std::pair<Monomial, CoeffFunction>> terms(poly.terms().begin(), poly.terms().end());
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) { return total_degree(a.first) < total_degree(b.first); });
    std::string out;
    for (const auto& [m, c] : terms) {
        auto ft = fraction_text(c, cn, style, monomial_str(m, tn, style));
        bool neg = ft.negative;
        ft.negative = false;
        std::string body = ft.str(style);
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out;
}

std::string render(const IFunctionSeries& s, Format f, const RenderOptions& opts) {
    switch (f) {
        case Format::Plain: return render_text(s, TextStyle::Plain, opts);
        case Format::Latex: return render_text(s, TextStyle::Latex, opts);
        case Format::Json: return render_json(s);
    }
    return {};
}

std::string render(const TwistedSeries& s, Format f, const RenderOptions& opts) {
    switch (f) {
        case Format::Plain: return render_text(s, TextStyle::Plain, opts);
        case Format::Latex: return render_text(s, TextStyle::Latex, opts);
        case Format::Json: return render_json(s);
    }
    return {};
}

std::string render_json(const IFunctionSeries& s) {
    Json doc = header_json(s);
    doc["big_i"] = nullptr;
    Json terms = Json::array();
    for (const auto& t : s.terms) {
        std::vector<std::pair<Monomial, const RingElement*>> c;
        if (!t.coefficient.is_zero()) c.emplace_back(Monomial{}, &t.coefficient);
        terms.push_back(term_json(t, c));
    }
    doc["terms"] = terms;
    append_tail(doc, s);
    return doc.dump(2) + "\n";
}

std::string render_json(const TwistedSeries& s) {
    Json doc = header_json(s.base);
    doc["big_i"] = Json{{"num_parameters", s.num_parameters}, {"t_order", s.t_order}};
    Json terms = Json::array();
    for (const auto& tt : s.terms) {
        std::vector<std::pair<Monomial, const RingElement*>> c;
        for (const auto& [m, x] : tt.coefficients) c.emplace_back(m, &x);
        terms.push_back(term_json(tt.base, c));
    }
    doc["terms"] = terms;
    append_tail(doc, s.base);
    return doc.dump(2) + "\n";
}

IFunctionSeries parse_series_json(const std::string& text) {
    auto doc = parse_doc(text);
    if (doc.has_big_i) throw ConfigError("document holds a big-I series; use parse_twisted_json");
    return doc.twisted.base;
}

TwistedSeries parse_twisted_json(const std::string& text) {
    auto doc = parse_doc(text);
    if (!doc.has_big_i) throw ConfigError("document holds a small series; use parse_series_json");
    return doc.twisted;
}

bool same_series(const IFunctionSeries& a, const IFunctionSeries& b) {
    if (a.degree_bound != b.degree_bound || a.torus_rank != b.torus_rank || a.equivariant_rank != b.equivariant_rank)
        return false;
    if (a.terms.size() != b.terms.size() || a.residues.size() != b.residues.size() ||
        a.diagnostics.size() != b.diagnostics.size())
        return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (!same_term(a.terms[i], b.terms[i])) return false;
    for (std::size_t i = 0; i < a.residues.size(); ++i) {
        const auto &x = a.residues[i], &y = b.residues[i];
        if (x.beta != y.beta || !same_sector(x.sector, y.sector) || x.vanishing_coordinates != y.vanishing_coordinates ||
            x.nonnegative_e_weights != y.nonnegative_e_weights)
            return false;
    }
    for (std::size_t i = 0; i < a.diagnostics.size(); ++i)
        if (a.diagnostics[i].kind != b.diagnostics[i].kind || a.diagnostics[i].message != b.diagnostics[i].message)
            return false;
    return true;
}

bool same_series(const TwistedSeries& a, const TwistedSeries& b) {
    if (!same_series(a.base, b.base) || a.num_parameters != b.num_parameters || a.t_order != b.t_order ||
        a.terms.size() != b.terms.size())
        return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        const auto &x = a.terms[i], &y = b.terms[i];
        if (!same_term(x.base, y.base) || x.coefficients.size() != y.coefficients.size()) return false;
        auto it = y.coefficients.begin();
        for (const auto& [m, c] : x.coefficients) {
            if (m != it->first || c.poly() != it->second.poly()) return false;
            ++it;
        }
    }
    return true;
}

}  // namespace qmap
