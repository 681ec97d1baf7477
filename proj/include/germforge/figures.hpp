#pragma once

#include <string>

#include "germforge/charts.hpp"

namespace germforge {

// Deterministic SVG of the 2k petal lobes (attracting/repelling alternate)
// with an optional orbit overlay; fixed viewport, fixed float formatting.
std::string petal_figure_svg(const VectorFieldParams& p, double delta,
                             const OrbitTrace* orbit = nullptr);

// CSV twin of an orbit: step, re z, im z, chart, re Z, im Z
std::string orbit_csv(const OrbitTrace& trace);

void write_text_file(const std::string& path, const std::string& content);

} // namespace germforge
