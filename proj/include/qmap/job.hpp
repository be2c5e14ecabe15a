#pragma once

// Job execution from a configuration, and the regression corpus runner.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qmap/config.hpp"
#include "qmap/errors.hpp"
#include "qmap/ifunction.hpp"
#include "qmap/render.hpp"

namespace qmap {

struct JobResult {
    IFunctionSeries series;
    std::optional<TwistedSeries> twisted;
    std::string text;  // rendered in the configured format
};

/// Assembles the series (and the big-I twist when configured) and renders it.
/// Configuration warnings join the series diagnostics. Throws the pipeline
/// errors unchanged.
JobResult run_job(const JobConfig& cfg);

/// Writes text to the configured destination ("-" is standard output).
void write_output(const std::string& text, const std::string& destination);

/// Exit code for an exception escaping a job.
ExitCode exit_code_of(const std::exception& e);

struct CorpusCase {
    std::string name;
    bool passed = false;
    std::string message;
    /// Configuration reproducing the first mismatch, bounded at its degree.
    std::string repro;
};

struct CorpusReport {
    std::vector<CorpusCase> cases;
    bool all_passed() const;
    std::size_t failures() const;
    std::string str() const;
};

/// Runs every NAME.yaml in `dir` against NAME.expected.json. Each case stops
/// at its first mismatch. Besides the value comparison it checks that every
/// non-equivariant coefficient has a pure z-power denominator, and that the
/// JSON rendering parses back to the same series. Throws ConfigError for a
/// missing or empty directory.
CorpusReport run_corpus(const std::filesystem::path& dir);

}  // namespace qmap
