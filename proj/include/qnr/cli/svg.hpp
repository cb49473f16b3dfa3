#pragma once

// Boundary plots: 800x800 viewport, equal axis scales with a 5% margin, one
// closed path per layer from a fixed 8-colour cycle, origin crosshair always
// drawn.

#include <string>
#include <string_view>
#include <vector>

#include "qnr/matcore.hpp"

namespace qnr::cli {

struct SvgLayer {
    std::string label;
    std::vector<Complex> boundary;  // closed polygon, any orientation
    std::vector<Complex> markers;   // drawn as small dots
};

std::string render_svg(const std::vector<SvgLayer>& layers, std::string_view title = {});

}  // namespace qnr::cli
