#pragma once

#include <string>
#include <vector>

#include "gridnav/grid_map.hpp"
#include "gridnav/path_trace.hpp"

namespace gridnav {

/// Line chart of one value per episode on a fixed 800x600 viewport.
std::string svg_line_chart(const std::vector<double>& values, const std::string& title,
                           const std::string& y_label);

/// Map raster with the trace polyline (footprint centers) overlaid, plus
/// start/goal markers, on a fixed 800x600 viewport.
std::string svg_grid_path(const OccupancyGrid& grid, const PathTrace& trace,
                          const EnvConfig& env);

}  // namespace gridnav
