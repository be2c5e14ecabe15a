#pragma once

// YAML job configuration: presentation, run options, output.

#include <optional>
#include <string>
#include <vector>

#include "qmap/gitdata.hpp"
#include "qmap/ifunction.hpp"

namespace qmap {

struct BigIConfig {
    std::vector<BigIInsertion> insertions;
    std::vector<std::string> polynomial_text;  // as written, for re-emission
    int t_order = 0;
};

struct OutputConfig {
    std::string format = "plain";  // plain | latex | json
    std::string destination = "-";
    bool latex_factored = false;
};

struct JobConfig {
    std::string preset;  // empty for an explicit presentation
    GitPresentation presentation;
    std::vector<std::string> names;  // display names of t_1..t_r
    RunOptions run;
    std::optional<BigIConfig> big_i;
    OutputConfig output;
    std::vector<std::string> warnings;
};

/// Parses and validates a configuration. Throws ConfigError listing every
/// problem with its line and column.
JobConfig parse_config(const std::string& text);
JobConfig load_config(const std::string& path);

/// YAML that parses back to an equivalent configuration.
std::string emit_config(const JobConfig& cfg);

/// "projective_space(2)", "weighted_projective(1,1,2)", "grassmannian(2,4)".
GitPresentation preset_presentation(const std::string& name);

/// Parses a polynomial in x1, x2, ... with rational coefficients, e.g.
/// "x1^2 - 3/2*x1*x2 + 1".
QPoly parse_polynomial(const std::string& text);

/// Default display names: H for rank one, t1..tr otherwise.
std::vector<std::string> default_names(int r);

}  // namespace qmap
