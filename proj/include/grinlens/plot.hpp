#pragma once

#include <span>
#include <string>

#include "grinlens/analysis.hpp"

namespace grin {

struct PlotOptions {
    int width_px = 720;
    int height_px = 480;
    std::string title = "Measured gain";
};

/// Line plot of gain traces in GHz / dBi with the 100% aperture-efficiency
/// ceiling of a lens of the given diameter drawn dashed.
std::string render_gain_svg(std::span<const GainTrace> traces, double diameter_m, const PlotOptions& options = {});

}  // namespace grin
