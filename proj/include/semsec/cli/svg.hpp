#pragma once

// Minimal self-contained SVG heatmap with contour lines.

#include <array>
#include <string>
#include <vector>

namespace semsec::cli {

struct Heatmap {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::string z_label;
  std::vector<double> x;  // strictly increasing
  std::vector<double> y;  // strictly increasing
  std::vector<double> z;  // z[ix * y.size() + iy]; NaN cells are drawn grey
  int contour_levels = 6;
};

std::string render_svg(const Heatmap& h);

/// Marching-squares segments {x0, y0, x1, y1} of z = level in data coordinates.
std::vector<std::array<double, 4>> contour_segments(const Heatmap& h, double level);

}  // namespace semsec::cli
