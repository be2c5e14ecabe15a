#pragma once

// Text renderings of a series: plain, LaTeX and a versioned JSON document
// that parses back to an identical series.

#include <string>
#include <vector>

#include "qmap/ifunction.hpp"

namespace qmap {

enum class Format { Plain, Latex, Json };

Format parse_format(const std::string& name);

struct RenderOptions {
    std::vector<std::string> names;  // display names of t_1..t_r; defaults apply when empty
    bool latex_factored = false;
    /// Needed for the factored LaTeX form; terms fall back to the expanded
    /// form without it.
    const Engine* engine = nullptr;
};

constexpr int kSchemaVersion = 1;

/// A ring element in the user's divisor names, e.g. "1/z^3 - 3*H/z^4".
std::string element_str(const RingElement& x, const std::vector<std::string>& names,
                        TextStyle style = TextStyle::Plain);

std::string render(const IFunctionSeries& s, Format f, const RenderOptions& opts = {});
std::string render(const TwistedSeries& s, Format f, const RenderOptions& opts = {});

std::string render_json(const IFunctionSeries& s);
std::string render_json(const TwistedSeries& s);

/// Inverse of render_json. Coefficients are attached to free truncated rings
/// large enough to hold them. Throws ConfigError on malformed input.
IFunctionSeries parse_series_json(const std::string& text);
TwistedSeries parse_twisted_json(const std::string& text);

/// Field-by-field equality, including sector data and ring coefficients.
bool same_series(const IFunctionSeries& a, const IFunctionSeries& b);
bool same_series(const TwistedSeries& a, const TwistedSeries& b);

}  // namespace qmap
