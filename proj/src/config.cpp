#include "qmap/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "qmap/errors.hpp"

namespace qmap {

namespace {

class Diagnostics {
public:
    void error(const YAML::Node& at, const std::string& msg) { errors_.push_back(where(at) + msg); }
    void error(const std::string& msg) { errors_.push_back(msg); }
    void warning(const std::string& msg) { warnings_.push_back(msg); }
    const std::vector<std::string>& warnings() const { return warnings_; }

    void raise_if_any() const {
        if (errors_.empty()) return;
        std::string msg = "configuration error" + std::string(errors_.size() > 1 ? "s" : "") + ":";
        for (const auto& e : errors_) msg += "\n  " + e;
        throw ConfigError(msg);
    }

    static std::string where(const YAML::Node& n) {
        auto m = n.Mark();
        if (m.line < 0) return "";
        return "line " + std::to_string(m.line + 1) + ", column " + std::to_string(m.column + 1) + ": ";
    }

private:
    std::vector<std::string> errors_;
    std::vector<std::string> warnings_;
};

void check_keys(Diagnostics& d, const YAML::Node& node, const std::string& block, const std::set<std::string>& allowed) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        auto key = it->first.as<std::string>();
        if (!allowed.count(key)) d.error(it->first, "unknown key '" + key + "' in " + block);
    }
}

std::optional<long> read_int(Diagnostics& d, const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar()) {
        d.error(n, field + ": expected an integer");
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        auto s = n.Scalar();
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        d.error(n, field + ": '" + n.Scalar() + "' is not an integer");
        return std::nullopt;
    }
}

std::optional<Rational> read_rational(Diagnostics& d, const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar()) {
        d.error(n, field + ": expected a rational number");
        return std::nullopt;
    }
    try {
        return parse_rational(n.Scalar());
    } catch (const std::exception& e) {
        d.error(n, field + ": " + e.what());
        return std::nullopt;
    }
}

std::optional<bool> read_bool(Diagnostics& d, const YAML::Node& n, const std::string& field) {
    if (n.IsScalar()) {
        const auto& s = n.Scalar();
        if (s == "true" || s == "yes" || s == "on") return true;
        if (s == "false" || s == "no" || s == "off") return false;
    }
    d.error(n, field + ": expected true or false");
    return std::nullopt;
}

std::string read_string(Diagnostics& d, const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar()) {
        d.error(n, field + ": expected a string");
        return {};
    }
    return n.Scalar();
}

IntVec read_int_vec(Diagnostics& d, const YAML::Node& n, const std::string& field) {
    IntVec out;
    if (!n.IsSequence()) {
        d.error(n, field + ": expected a list of integers");
        return out;
    }
    for (std::size_t i = 0; i < n.size(); ++i)
        if (auto v = read_int(d, n[i], field + "[" + std::to_string(i) + "]")) out.push_back(*v);
    return out;
}

std::vector<IntVec> read_int_rows(Diagnostics& d, const YAML::Node& n, const std::string& field) {
    std::vector<IntVec> out;
    if (!n.IsSequence()) {
        d.error(n, field + ": expected a list of integer vectors");
        return out;
    }
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(read_int_vec(d, n[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

/// Checks every row has `width` entries, naming the offending row.
void check_widths(Diagnostics& d, const YAML::Node& n, const std::vector<IntVec>& rows, std::size_t width,
                  const std::string& field) {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != width)
            d.error(n[i], field + " row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                              " entries, expected " + std::to_string(width));
}

template <class E>
std::optional<E> read_enum(Diagnostics& d, const YAML::Node& n, const std::string& field,
                           const std::vector<std::pair<std::string, E>>& options) {
    auto s = read_string(d, n, field);
    for (const auto& [name, v] : options)
        if (s == name) return v;
    std::string list;
    for (const auto& [name, v] : options) list += (list.empty() ? "" : ", ") + name;
    if (n.IsScalar()) d.error(n, field + ": '" + s + "' is not one of " + list);
    return std::nullopt;
}

const std::vector<std::pair<std::string, Mode>> kModes{
    {"toric", Mode::Toric}, {"nonabelian", Mode::Nonabelian}, {"lefschetz", Mode::Lefschetz}};
const std::vector<std::pair<std::string, Convexity>> kConvexity{{"convex-only", Convexity::ConvexOnly},
                                                                {"assume-transverse", Convexity::AssumeTransverse}};
const std::vector<std::pair<std::string, Presentation>> kPresentations{{"restricted", Presentation::Restricted},
                                                                       {"pushforward", Presentation::Pushforward}};

void parse_presentation(Diagnostics& d, const YAML::Node& n, JobConfig& cfg) {
    check_keys(d, n, "presentation",
               {"preset", "torus_rank", "weights", "theta", "roots", "positive_roots", "weyl_generators",
                "chi_g_basis", "equivariant_rank", "equivariant_weights", "names"});
    auto& p = cfg.presentation;
    if (n["preset"]) {
        cfg.preset = read_string(d, n["preset"], "presentation.preset");
        for (const char* k : {"torus_rank", "weights", "theta", "roots", "positive_roots", "weyl_generators",
                              "chi_g_basis"})
            if (n[k]) d.error(n[k], std::string("presentation.") + k + " cannot be combined with a preset");
        try {
            p = preset_presentation(cfg.preset);
        } catch (const std::exception& e) {
            d.error(n["preset"], "presentation.preset: " + std::string(e.what()));
            return;
        }
    } else {
        if (!n["torus_rank"] || !n["weights"] || !n["theta"]) {
            d.error(n, "presentation: needs a preset or torus_rank, weights and theta");
            return;
        }
        if (auto r = read_int(d, n["torus_rank"], "presentation.torus_rank")) p.torus_rank = static_cast<int>(*r);
        if (p.torus_rank < 1) {
            d.error(n["torus_rank"], "presentation.torus_rank must be positive");
            return;
        }
        if (n["equivariant_rank"])
            if (auto q = read_int(d, n["equivariant_rank"], "presentation.equivariant_rank"))
                p.equivariant_rank = static_cast<int>(*q);
        auto r = static_cast<std::size_t>(p.torus_rank);
        p.weights = read_int_rows(d, n["weights"], "presentation.weights");
        check_widths(d, n["weights"], p.weights, r + static_cast<std::size_t>(p.equivariant_rank),
                     "presentation.weights");
        p.theta = read_int_vec(d, n["theta"], "presentation.theta");
        if (p.theta.size() != r)
            d.error(n["theta"], "presentation.theta has " + std::to_string(p.theta.size()) + " entries, expected " +
                                    std::to_string(r));
        if (n["roots"]) {
            p.roots = read_int_rows(d, n["roots"], "presentation.roots");
            check_widths(d, n["roots"], p.roots, r, "presentation.roots");
        }
        if (n["positive_roots"]) {
            for (long i : read_int_vec(d, n["positive_roots"], "presentation.positive_roots"))
                p.positive_roots.push_back(static_cast<int>(i));
        }
        if (n["weyl_generators"]) {
            const auto& g = n["weyl_generators"];
            if (!g.IsSequence()) {
                d.error(g, "presentation.weyl_generators: expected a list of matrices");
            } else {
                for (std::size_t i = 0; i < g.size(); ++i) {
                    std::string name = "presentation.weyl_generators[" + std::to_string(i) + "]";
                    auto m = read_int_rows(d, g[i], name);
                    if (m.size() != r) d.error(g[i], name + ": expected " + std::to_string(r) + " rows");
                    check_widths(d, g[i], m, r, name);
                    p.weyl_generators.push_back(std::move(m));
                }
            }
        }
        if (n["chi_g_basis"]) {
            p.chi_g_basis = read_int_rows(d, n["chi_g_basis"], "presentation.chi_g_basis");
            check_widths(d, n["chi_g_basis"], p.chi_g_basis, r, "presentation.chi_g_basis");
        }
    }
    if (n["equivariant_weights"]) {
        const auto& ew = n["equivariant_weights"];
        if (p.equivariant_rank != 0 && !n["preset"]) {
            d.error(ew, "presentation.equivariant_weights cannot be combined with equivariant_rank");
        } else {
            auto rows = read_int_rows(d, ew, "presentation.equivariant_weights");
            if (rows.size() != p.weights.size()) {
                d.error(ew, "presentation.equivariant_weights has " + std::to_string(rows.size()) +
                                " rows, expected one per weight (" + std::to_string(p.weights.size()) + ")");
            } else if (!rows.empty()) {
                std::size_t q = rows[0].size();
                check_widths(d, ew, rows, q, "presentation.equivariant_weights");
                p.equivariant_rank = static_cast<int>(q);
                for (std::size_t i = 0; i < rows.size(); ++i)
                    p.weights[i].insert(p.weights[i].end(), rows[i].begin(), rows[i].end());
            }
        }
    }
    if (n["names"]) {
        const auto& nm = n["names"];
        if (!nm.IsSequence()) {
            d.error(nm, "presentation.names: expected a list of strings");
        } else {
            for (std::size_t i = 0; i < nm.size(); ++i) cfg.names.push_back(read_string(d, nm[i], "presentation.names"));
            if (cfg.names.size() != static_cast<std::size_t>(p.torus_rank))
                d.error(nm, "presentation.names has " + std::to_string(cfg.names.size()) + " entries, expected " +
                                std::to_string(p.torus_rank));
        }
    }
}

void parse_complete_intersection(Diagnostics& d, const YAML::Node& n, JobConfig& cfg) {
    check_keys(d, n, "complete_intersection", {"e_weights", "equivariant_weights"});
    auto& p = cfg.presentation;
    if (!n["e_weights"]) {
        d.error(n, "complete_intersection: e_weights is required");
        return;
    }
    auto rows = read_int_rows(d, n["e_weights"], "complete_intersection.e_weights");
    auto r = static_cast<std::size_t>(p.torus_rank);
    if (n["equivariant_weights"]) {
        auto extra = read_int_rows(d, n["equivariant_weights"], "complete_intersection.equivariant_weights");
        if (extra.size() != rows.size())
            d.error(n["equivariant_weights"], "complete_intersection.equivariant_weights needs one row per e-weight");
        else
            for (std::size_t i = 0; i < rows.size(); ++i) rows[i].insert(rows[i].end(), extra[i].begin(), extra[i].end());
        check_widths(d, n["e_weights"], rows, r + static_cast<std::size_t>(p.equivariant_rank),
                     "complete_intersection.e_weights (with equivariant columns)");
    } else if (p.equivariant_rank > 0) {
        for (auto& row : rows)
            if (row.size() == r) row.resize(r + static_cast<std::size_t>(p.equivariant_rank), 0);
        check_widths(d, n["e_weights"], rows, r + static_cast<std::size_t>(p.equivariant_rank),
                     "complete_intersection.e_weights");
    } else {
        check_widths(d, n["e_weights"], rows, r, "complete_intersection.e_weights");
    }
    p.e_weights = std::move(rows);
}

void parse_big_i(Diagnostics& d, const YAML::Node& n, JobConfig& cfg) {
    check_keys(d, n, "run.big_i", {"insertions", "t_order"});
    BigIConfig b;
    if (n["t_order"]) {
        if (auto v = read_int(d, n["t_order"], "run.big_i.t_order")) {
            if (*v < 0) d.error(n["t_order"], "run.big_i.t_order must be nonnegative");
            b.t_order = static_cast<int>(*v);
        }
    }
    const auto& ins = n["insertions"];
    if (!ins || !ins.IsSequence()) {
        d.error(n, "run.big_i.insertions: expected a list");
    } else {
        auto r = static_cast<std::size_t>(cfg.presentation.torus_rank);
        for (std::size_t i = 0; i < ins.size(); ++i) {
            std::string name = "run.big_i.insertions[" + std::to_string(i) + "]";
            check_keys(d, ins[i], name, {"characters", "polynomial"});
            BigIInsertion x;
            if (!ins[i]["characters"] || !ins[i]["polynomial"]) {
                d.error(ins[i], name + ": needs characters and polynomial");
                continue;
            }
            x.etas = read_int_rows(d, ins[i]["characters"], name + ".characters");
            check_widths(d, ins[i]["characters"], x.etas, r, name + ".characters");
            std::string text = read_string(d, ins[i]["polynomial"], name + ".polynomial");
            try {
                x.polynomial = parse_polynomial(text);
                if (static_cast<std::size_t>(x.polynomial.num_vars()) > x.etas.size())
                    d.error(ins[i]["polynomial"], name + ".polynomial uses x" +
                                                      std::to_string(x.polynomial.num_vars()) + " but only " +
                                                      std::to_string(x.etas.size()) + " characters are listed");
            } catch (const std::exception& e) {
                d.error(ins[i]["polynomial"], name + ".polynomial: " + e.what());
            }
            b.polynomial_text.push_back(text);
            b.insertions.push_back(std::move(x));
        }
    }
    cfg.big_i = std::move(b);
}

void parse_run(Diagnostics& d, const YAML::Node& n, JobConfig& cfg) {
    check_keys(d, n, "run",
               {"mode", "max_degree", "denominator_bound", "convexity", "presentation", "equivariant",
                "allow_mixed_presentations", "threads", "big_i"});
    auto& o = cfg.run;
    if (n["mode"])
        if (auto m = read_enum(d, n["mode"], "run.mode", kModes)) o.mode = *m;
    if (n["max_degree"]) {
        if (auto q = read_rational(d, n["max_degree"], "run.max_degree")) {
            if (sgn(*q) < 0) d.error(n["max_degree"], "run.max_degree must be nonnegative");
            o.degree_bound = *q;
        }
    }
    if (n["denominator_bound"]) {
        if (auto v = read_int(d, n["denominator_bound"], "run.denominator_bound")) {
            if (*v < 1) d.error(n["denominator_bound"], "run.denominator_bound must be positive");
            o.denominator_bound = *v;
        }
    }
    if (n["convexity"])
        if (auto c = read_enum(d, n["convexity"], "run.convexity", kConvexity)) o.convexity = *c;
    if (n["presentation"])
        if (auto p = read_enum(d, n["presentation"], "run.presentation", kPresentations)) o.presentation = *p;
    if (n["equivariant"])
        if (auto b = read_bool(d, n["equivariant"], "run.equivariant")) o.equivariant = *b;
    if (n["allow_mixed_presentations"])
        if (auto b = read_bool(d, n["allow_mixed_presentations"], "run.allow_mixed_presentations"))
            o.allow_mixed_presentations = *b;
    if (n["threads"])
        if (auto v = read_int(d, n["threads"], "run.threads")) {
            if (*v < 0) d.error(n["threads"], "run.threads must be nonnegative");
            o.threads = static_cast<unsigned>(std::max(0L, *v));
        }
    if (n["big_i"]) parse_big_i(d, n["big_i"], cfg);
}

void parse_output(Diagnostics& d, const YAML::Node& n, JobConfig& cfg) {
    check_keys(d, n, "output", {"format", "destination", "latex_style"});
    if (n["format"]) {
        auto f = read_string(d, n["format"], "output.format");
        if (f != "plain" && f != "latex" && f != "json")
            d.error(n["format"], "output.format: '" + f + "' is not one of plain, latex, json");
        cfg.output.format = f;
    }
    if (n["destination"]) cfg.output.destination = read_string(d, n["destination"], "output.destination");
    if (n["latex_style"]) {
        auto s = read_string(d, n["latex_style"], "output.latex_style");
        if (s != "expanded" && s != "factored")
            d.error(n["latex_style"], "output.latex_style: '" + s + "' is not one of expanded, factored");
        cfg.output.latex_factored = s == "factored";
    }
}

std::vector<long> preset_args(const std::string& text, const std::string& name) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long v = std::stol(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument(name + ": bad argument '" + item + "'");
        }
    }
    return out;
}

}  // namespace

std::vector<std::string> default_names(int r) {
    if (r == 1) return {"H"};
    std::vector<std::string> out;
    for (int i = 1; i <= r; ++i) out.push_back("t" + std::to_string(i));
    return out;
}

GitPresentation preset_presentation(const std::string& name) {
    static const std::regex re(R"(\s*([a-z_]+)\s*\(([^)]*)\)\s*)");
    std::smatch m;
    if (!std::regex_match(name, m, re))
        throw std::invalid_argument("'" + name + "' is not a preset call like projective_space(2)");
    std::string fn = m[1];
    auto args = preset_args(m[2], fn);
    if (fn == "projective_space") {
        if (args.size() != 1) throw std::invalid_argument("projective_space takes one argument");
        return projective_space(static_cast<int>(args[0]));
    }
    if (fn == "weighted_projective") return weighted_projective(args);
    if (fn == "grassmannian") {
        if (args.size() != 2) throw std::invalid_argument("grassmannian takes two arguments");
        return grassmannian(static_cast<int>(args[0]), static_cast<int>(args[1]));
    }
    throw std::invalid_argument("unknown preset '" + fn + "'");
}

JobConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError("syntax error at line " + std::to_string(e.mark.line + 1) + ", column " +
                          std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    Diagnostics d;
    JobConfig cfg;
    if (!root.IsMap()) {
        d.error(root, "configuration must be a mapping");
        d.raise_if_any();
    }
    check_keys(d, root, "the top level", {"presentation", "complete_intersection", "run", "output"});
    if (!root["presentation"]) {
        d.error(root, "missing presentation block");
        d.raise_if_any();
    }
    try {
        parse_presentation(d, root["presentation"], cfg);
        d.raise_if_any();
        if (root["complete_intersection"]) parse_complete_intersection(d, root["complete_intersection"], cfg);
        if (root["run"]) parse_run(d, root["run"], cfg);
        if (root["output"]) parse_output(d, root["output"], cfg);
    } catch (const YAML::Exception& e) {
        d.error("line " + std::to_string(e.mark.line + 1) + ", column " + std::to_string(e.mark.column + 1) + ": " +
                e.msg);
    }
    d.raise_if_any();

    for (const auto& e : structural_errors(cfg.presentation)) d.error("presentation: " + e);
    d.raise_if_any();
    if (cfg.names.empty()) cfg.names = default_names(cfg.presentation.torus_rank);
    if (cfg.run.mode == Mode::Lefschetz && cfg.presentation.e_weights.empty())
        cfg.warnings.push_back("lefschetz mode without e_weights reduces to the plain coefficient");
    if (cfg.run.mode == Mode::Toric && !cfg.presentation.roots.empty())
        d.error("run.mode: toric mode needs an abelian presentation; use nonabelian");
    if (cfg.run.equivariant && cfg.presentation.equivariant_rank == 0)
        cfg.warnings.push_back("run.equivariant is set but the presentation has no equivariant columns");
    d.raise_if_any();
    return cfg;
}

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read configuration file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

void emit_rows(YAML::Emitter& out, const std::vector<IntVec>& rows) {
    out << YAML::BeginSeq;
    for (const auto& row : rows) {
        out << YAML::Flow << YAML::BeginSeq;
        for (long x : row) out << x;
        out << YAML::EndSeq;
    }
    out << YAML::EndSeq;
}

std::vector<IntVec> split_columns(const std::vector<IntVec>& rows, std::size_t from, std::size_t to) {
    std::vector<IntVec> out;
    for (const auto& row : rows) out.emplace_back(row.begin() + static_cast<long>(from), row.begin() + static_cast<long>(to));
    return out;
}

}  // namespace

std::string emit_config(const JobConfig& cfg) {
    const auto& p = cfg.presentation;
    auto r = static_cast<std::size_t>(p.torus_rank);
    auto width = r + static_cast<std::size_t>(p.equivariant_rank);
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "presentation" << YAML::Value << YAML::BeginMap;
    if (!cfg.preset.empty()) {
        out << YAML::Key << "preset" << YAML::Value << YAML::DoubleQuoted << cfg.preset;
        if (p.equivariant_rank > 0) {
            out << YAML::Key << "equivariant_weights" << YAML::Value;
            emit_rows(out, split_columns(p.weights, r, width));
        }
    } else {
        out << YAML::Key << "torus_rank" << YAML::Value << p.torus_rank;
        if (p.equivariant_rank > 0) out << YAML::Key << "equivariant_rank" << YAML::Value << p.equivariant_rank;
        out << YAML::Key << "weights" << YAML::Value;
        emit_rows(out, p.weights);
        out << YAML::Key << "theta" << YAML::Value << YAML::Flow << p.theta;
        if (!p.roots.empty()) {
            out << YAML::Key << "roots" << YAML::Value;
            emit_rows(out, p.roots);
            out << YAML::Key << "positive_roots" << YAML::Value << YAML::Flow << p.positive_roots;
        }
        if (!p.weyl_generators.empty()) {
            out << YAML::Key << "weyl_generators" << YAML::Value << YAML::BeginSeq;
            for (const auto& g : p.weyl_generators) emit_rows(out, g);
            out << YAML::EndSeq;
        }
        if (!p.chi_g_basis.empty()) {
            out << YAML::Key << "chi_g_basis" << YAML::Value;
            emit_rows(out, p.chi_g_basis);
        }
    }
    if (!cfg.names.empty()) out << YAML::Key << "names" << YAML::Value << YAML::Flow << cfg.names;
    out << YAML::EndMap;
    if (!p.e_weights.empty()) {
        out << YAML::Key << "complete_intersection" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "e_weights" << YAML::Value;
        emit_rows(out, split_columns(p.e_weights, 0, r));
        if (p.equivariant_rank > 0) {
            out << YAML::Key << "equivariant_weights" << YAML::Value;
            emit_rows(out, split_columns(p.e_weights, r, width));
        }
        out << YAML::EndMap;
    }
    const auto& o = cfg.run;
    out << YAML::Key << "run" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "mode" << YAML::Value << to_string(o.mode);
    out << YAML::Key << "max_degree" << YAML::Value << YAML::DoubleQuoted << o.degree_bound.get_str();
    if (o.denominator_bound > 0) out << YAML::Key << "denominator_bound" << YAML::Value << o.denominator_bound;
    out << YAML::Key << "convexity" << YAML::Value << to_string(o.convexity);
    out << YAML::Key << "presentation" << YAML::Value << to_string(o.presentation);
    out << YAML::Key << "equivariant" << YAML::Value << o.equivariant;
    out << YAML::Key << "allow_mixed_presentations" << YAML::Value << o.allow_mixed_presentations;
    if (cfg.big_i) {
        out << YAML::Key << "big_i" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "t_order" << YAML::Value << cfg.big_i->t_order;
        out << YAML::Key << "insertions" << YAML::Value << YAML::BeginSeq;
        for (std::size_t i = 0; i < cfg.big_i->insertions.size(); ++i) {
            out << YAML::BeginMap;
            out << YAML::Key << "characters" << YAML::Value;
            emit_rows(out, cfg.big_i->insertions[i].etas);
            out << YAML::Key << "polynomial" << YAML::Value << YAML::DoubleQuoted << cfg.big_i->polynomial_text[i];
            out << YAML::EndMap;
        }
        out << YAML::EndSeq << YAML::EndMap;
    }
    out << YAML::EndMap;
    out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "format" << YAML::Value << cfg.output.format;
    out << YAML::Key << "destination" << YAML::Value << YAML::DoubleQuoted << cfg.output.destination;
    out << YAML::Key << "latex_style" << YAML::Value << (cfg.output.latex_factored ? "factored" : "expanded");
    out << YAML::EndMap;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

namespace {

class PolyParser {
public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    QPoly parse() {
        QPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument(msg + " at position " + std::to_string(pos_ + 1));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    long integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return std::stol(s_.substr(start, pos_ - start));
    }
    QPoly expr() {
        QPoly out;
        bool neg = eat('-');
        if (!neg) eat('+');
        QPoly t = term();
        out += neg ? -t : t;
        for (;;) {
            if (eat('+'))
                out += term();
            else if (eat('-'))
                out -= term();
            else
                return out;
        }
    }
    QPoly term() {
        QPoly out = factor();
        for (;;) {
            skip();
            if (eat('*')) {
                out *= factor();
            } else if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == '(')) {
                out *= factor();
            } else {
                return out;
            }
        }
    }
    QPoly factor() {
        QPoly base = atom();
        if (eat('^')) {
            long e = integer();
            base = base.pow(static_cast<int>(e));
        }
        return base;
    }
    QPoly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            QPoly p = expr();
            if (!eat(')')) fail("missing ')'");
            return p;
        }
        if (c == 'x') {
            ++pos_;
            long k = integer();
            if (k < 1) fail("variables are numbered from x1");
            return QPoly::variable(static_cast<std::size_t>(k - 1));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational q = integer();
            if (eat('/')) q /= integer();
            q.canonicalize();
            return QPoly(q);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

QPoly parse_polynomial(const std::string& text) { return PolyParser(text).parse(); }

}  // namespace qmap
