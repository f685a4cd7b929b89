#pragma once

#include <array>
#include <string>
#include <vector>

namespace cli {

// Barycentric embedding of a 3-part composition onto the unit triangle with
// vertices (0,0), (1,0), (1/2, sqrt(3)/2).  Affine in p, so segments that
// are straight in the simplex stay straight on the page.
std::array<double, 2> simplex_embed(const double* p);

// Pixel mapping shared by every plot: X = 60 + 600*x, Y = 630 - 600*y on a
// 720x660 canvas.  Kept fixed so plots from different runs overlay.
std::array<double, 2> to_pixel(const std::array<double, 2>& xy);

struct SimplexPlot {
  // Rows of 3 parts each.
  std::vector<std::array<double, 3>> data;
  // Projection of data[i]; same length as data when present.
  std::vector<std::array<double, 3>> projections;
  // Blue curve (the image of the fitted subspace).
  std::vector<std::array<double, 3>> curve;
  // Red comparison curve; empty when absent.
  std::vector<std::array<double, 3>> baseline;
  // Comment lines embedded near the top (provenance).
  std::vector<std::string> comments;
};

// Writes the Delta_3 overlay: triangle outline, blue curve, red baseline,
// one grey <line> per (data point, projection) pair, black data circles.
void write_simplex_plot(const std::string& path, const SimplexPlot& plot);

}  // namespace cli
