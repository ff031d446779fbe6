#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wseshadri/errors.hpp"

namespace wseshadri {

struct SvgStyle {
    int width{640};
    int height{480};
    int margin{48};
    std::string stroke{"#1f6feb"};
    std::string title;
};

/* Single-polyline SVG 1.1 plot with axes. Deterministic byte output for a
 * fixed input (fixed-precision coordinate formatting, no external
 * references). Throws TooFewPoints for fewer than two points. */
std::string emit_svg(const std::vector<std::pair<double, double>>& points,
                     const SvgStyle& style = {});

} // namespace wseshadri
