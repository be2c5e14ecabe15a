// Command line front end: runs a job configuration or the regression corpus.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "qmap/job.hpp"

namespace {

using namespace qmap;

std::vector<long> int_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            out.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw ConfigError("--big-i: '" + item + "' is not an integer");
        }
    }
    return out;
}

/// "ETA;ETA;...:POLY|ETA;...:POLY@ORDER", e.g. "1:x1@2" or "1,0;0,1:x1*x2@1".
BigIConfig parse_big_i_spec(const std::string& spec, int torus_rank) {
    BigIConfig out;
    auto at = spec.rfind('@');
    if (at == std::string::npos) throw ConfigError("--big-i: missing '@ORDER' in '" + spec + "'");
    try {
        out.t_order = std::stoi(spec.substr(at + 1));
    } catch (const std::exception&) {
        throw ConfigError("--big-i: bad order '" + spec.substr(at + 1) + "'");
    }
    std::stringstream ss(spec.substr(0, at));
    for (std::string ins; std::getline(ss, ins, '|');) {
        auto colon = ins.find(':');
        if (colon == std::string::npos) throw ConfigError("--big-i: insertion '" + ins + "' lacks ':POLYNOMIAL'");
        BigIInsertion x;
        std::stringstream chars(ins.substr(0, colon));
        for (std::string eta; std::getline(chars, eta, ';');) {
            auto v = int_list(eta);
            if (static_cast<int>(v.size()) != torus_rank)
                throw ConfigError("--big-i: character '" + eta + "' needs " + std::to_string(torus_rank) + " entries");
            x.etas.push_back(v);
        }
        std::string poly = ins.substr(colon + 1);
        try {
            x.polynomial = parse_polynomial(poly);
        } catch (const std::exception& e) {
            throw ConfigError("--big-i: polynomial '" + poly + "': " + e.what());
        }
        if (x.polynomial.num_vars() > x.etas.size())
            throw ConfigError("--big-i: polynomial '" + poly + "' uses more variables than characters");
        out.insertions.push_back(std::move(x));
        out.polynomial_text.push_back(poly);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Small I-functions of GIT quotients by exact computation"};
    std::string config_path, mode, max_degree, convexity, big_i, output, out_path, corpus_dir;
    long denominator_bound = 0;
    bool equivariant = false;
    auto* config_opt = app.add_option("--config", config_path, "Job configuration (YAML)");
    app.add_option("--mode", mode, "toric, nonabelian or lefschetz")
        ->check(CLI::IsMember({"toric", "nonabelian", "lefschetz"}));
    app.add_option("--max-degree", max_degree, "Bound on the theta-degree, a rational number");
    app.add_option("--denominator-bound", denominator_bound, "Admissible class denominators divide this")
        ->check(CLI::PositiveNumber);
    app.add_option("--convexity", convexity, "convex-only or assume-transverse")
        ->check(CLI::IsMember({"convex-only", "assume-transverse"}));
    app.add_flag("--equivariant", equivariant, "Keep the equivariant parameters");
    app.add_option("--big-i", big_i, "Insertions ETA;..:POLY|...@ORDER");
    app.add_option("--output", output, "plain, latex or json")->check(CLI::IsMember({"plain", "latex", "json"}));
    app.add_option("--out", out_path, "Output file, - for standard output");
    auto* corpus_opt = app.add_option("--corpus", corpus_dir, "Run the regression corpus in DIR")
                           ->expected(0, 1)
                           ->default_str(QMAP_CORPUS_DIR);
    corpus_opt->excludes(config_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (corpus_opt->count() > 0) {
            if (corpus_dir.empty()) corpus_dir = QMAP_CORPUS_DIR;
            auto report = run_corpus(corpus_dir);
            write_output(report.str(), out_path);
            return report.all_passed() ? 0 : static_cast<int>(ExitCode::Failure);
        }
        if (config_path.empty()) throw ConfigError("--config PATH is required (or --corpus)");
        JobConfig cfg = load_config(config_path);
        if (!mode.empty()) cfg.run.mode = mode == "toric" ? Mode::Toric : mode == "nonabelian" ? Mode::Nonabelian : Mode::Lefschetz;
        if (!max_degree.empty()) {
            try {
                cfg.run.degree_bound = parse_rational(max_degree);
            } catch (const std::exception& e) {
                throw ConfigError("--max-degree: " + std::string(e.what()));
            }
        }
        if (denominator_bound > 0) cfg.run.denominator_bound = denominator_bound;
        if (!convexity.empty())
            cfg.run.convexity = convexity == "convex-only" ? Convexity::ConvexOnly : Convexity::AssumeTransverse;
        if (equivariant) cfg.run.equivariant = true;
        if (!big_i.empty()) cfg.big_i = parse_big_i_spec(big_i, cfg.presentation.torus_rank);
        if (!output.empty()) cfg.output.format = output;
        if (!out_path.empty()) cfg.output.destination = out_path;
        if (cfg.run.mode == Mode::Lefschetz && cfg.presentation.e_weights.empty())
            cfg.warnings.push_back("lefschetz mode without e_weights reduces to the plain coefficient");

        auto result = run_job(cfg);
        for (const auto& d : result.series.diagnostics)
            if (d.kind == "warning") std::cerr << "warning: " << d.message << "\n";
        write_output(result.text, cfg.output.destination);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(exit_code_of(e));
    }
}
