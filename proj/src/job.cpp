#include "qmap/job.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qmap {

JobResult run_job(const JobConfig& cfg) {
    Engine engine(cfg.presentation, cfg.run);
    JobResult out;
    out.series = assemble(engine);
    std::vector<Diagnostic> extra;
    for (const auto& w : cfg.warnings) {
        bool present = std::any_of(out.series.diagnostics.begin(), out.series.diagnostics.end(),
                                   [&](const Diagnostic& d) { return d.message == w; });
        if (!present) extra.push_back({"warning", w});
    }
    out.series.diagnostics.insert(out.series.diagnostics.begin(), extra.begin(), extra.end());

    RenderOptions ro{cfg.names, cfg.output.latex_factored, &engine};
    Format f = parse_format(cfg.output.format);
    if (cfg.big_i) {
        out.twisted = big_i_twist(out.series, engine.presentation(), cfg.big_i->insertions, cfg.big_i->t_order);
        out.text = render(*out.twisted, f, ro);
    } else {
        out.text = render(out.series, f, ro);
    }
    return out;
}

void write_output(const std::string& text, const std::string& destination) {
    if (destination.empty() || destination == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(destination);
    if (!out) throw ConfigError("cannot write to '" + destination + "'");
    out << text;
}

ExitCode exit_code_of(const std::exception& e) {
    if (auto q = dynamic_cast<const Error*>(&e)) return q->exit_code();
    return ExitCode::Failure;
}

bool CorpusReport::all_passed() const { return failures() == 0; }

std::size_t CorpusReport::failures() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CorpusCase& c) { return !c.passed; }));
}

std::string CorpusReport::str() const {
    std::ostringstream out;
    for (const auto& c : cases) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.message.empty()) out << ": " << c.message;
        out << "\n";
        if (!c.passed && !c.repro.empty()) {
            out << "  reproduce with:\n";
            std::istringstream lines(c.repro);
            for (std::string l; std::getline(lines, l);) out << "    " << l << "\n";
        }
    }
    out << cases.size() - failures() << "/" << cases.size() << " corpus cases passed\n";
    return out.str();
}

namespace {

struct Mismatch {
    Rational theta_degree;
    std::string message;
};

bool same_key(const SectorClass& a, const SectorClass& b) {
    return a.beta == b.beta && a.sector.element == b.sector.element && a.presentation == b.presentation;
}

std::string describe(const SectorClass& t) {
    std::string s = "class " + t.beta.str();
    bool twisted = std::any_of(t.sector.element.begin(), t.sector.element.end(), [](const Rational& q) { return !is_zero(q); });
    if (twisted) {
        std::string e;
        for (const auto& q : t.sector.element) e += (e.empty() ? "" : ", ") + q.get_str();
        s += " in sector (" + e + ")";
    }
    return s;
}

std::optional<Mismatch> first_mismatch(const IFunctionSeries& expected, const IFunctionSeries& actual,
                                       const std::vector<std::string>& names) {
    std::vector<Mismatch> found;
    for (const auto& e : expected.terms) {
        auto it = std::find_if(actual.terms.begin(), actual.terms.end(), [&](const SectorClass& a) { return same_key(a, e); });
        if (it == actual.terms.end()) {
            found.push_back({e.theta_degree, describe(e) + ": expected a term, none computed"});
            continue;
        }
        if (it->theta_degree != e.theta_degree)
            found.push_back({e.theta_degree, describe(e) + ": theta-degree " + it->theta_degree.get_str() +
                                                 ", expected " + e.theta_degree.get_str()});
        else if (it->coefficient.poly() != e.coefficient.poly())
            found.push_back({e.theta_degree, describe(e) + ": coefficient " + element_str(it->coefficient, names) +
                                                 ", expected " + element_str(e.coefficient, names)});
    }
    for (const auto& a : actual.terms) {
        bool known = std::any_of(expected.terms.begin(), expected.terms.end(),
                                 [&](const SectorClass& e) { return same_key(a, e); });
        if (!known) found.push_back({a.theta_degree, describe(a) + ": unexpected term " + element_str(a.coefficient, names)});
    }
    if (found.empty()) return std::nullopt;
    return *std::min_element(found.begin(), found.end(),
                             [](const Mismatch& x, const Mismatch& y) { return x.theta_degree < y.theta_degree; });
}

std::optional<std::string> laurent_violation(const IFunctionSeries& s) {
    if (s.equivariant_rank != 0) return std::nullopt;
    for (const auto& t : s.terms)
        for (const auto& [m, c] : t.coefficient.terms())
            if (!c.is_z_laurent()) return describe(t) + ": denominator " + c.str() + " is not a power of z";
    return std::nullopt;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot read '" + p.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CorpusCase run_case(const std::filesystem::path& yaml, const std::filesystem::path& expected_path) {
    CorpusCase c;
    c.name = yaml.stem().string();
    JobConfig cfg;
    try {
        cfg = load_config(yaml.string());
        if (!std::filesystem::exists(expected_path)) {
            c.message = "missing " + expected_path.filename().string();
            return c;
        }
        IFunctionSeries expected = parse_series_json(read_file(expected_path));
        auto result = run_job(cfg);
        const auto& actual = result.series;
        if (auto m = first_mismatch(expected, actual, cfg.names)) {
            c.message = m->message;
            JobConfig repro = cfg;
            repro.run.degree_bound = m->theta_degree;
            repro.big_i.reset();
            c.repro = emit_config(repro);
            return c;
        }
        if (auto v = laurent_violation(actual)) {
            c.message = *v;
            return c;
        }
        if (!same_series(parse_series_json(render_json(actual)), actual)) {
            c.message = "JSON rendering does not parse back to the same series";
            return c;
        }
        c.passed = true;
        c.message = std::to_string(actual.terms.size()) + " terms";
    } catch (const std::exception& e) {
        c.message = e.what();
    }
    return c;
}

}  // namespace

CorpusReport run_corpus(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw ConfigError("corpus directory '" + dir.string() + "' does not exist");
    std::vector<std::filesystem::path> configs;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".yaml") configs.push_back(entry.path());
    if (configs.empty()) throw ConfigError("corpus directory '" + dir.string() + "' holds no cases");
    std::sort(configs.begin(), configs.end());
    CorpusReport report;
    for (const auto& y : configs) {
        auto expected = y;
        expected.replace_extension(".expected.json");
        report.cases.push_back(run_case(y, expected));
    }
    return report;
}

}  // namespace qmap
