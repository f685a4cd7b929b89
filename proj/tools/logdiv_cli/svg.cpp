#include "svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cli {

std::array<double, 2> simplex_embed(const double* p) {
  const double h = std::sqrt(3.0) / 2.0;
  return {p[1] + 0.5 * p[2], h * p[2]};
}

std::array<double, 2> to_pixel(const std::array<double, 2>& xy) {
  return {60.0 + 600.0 * xy[0], 630.0 - 600.0 * xy[1]};
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::array<double, 2> pixel_of(const std::array<double, 3>& p) {
  return to_pixel(simplex_embed(p.data()));
}

void emit_polyline(std::ofstream& out,
                   const std::vector<std::array<double, 3>>& pts,
                   const char* stroke) {
  if (pts.size() < 2) return;
  out << "  <polyline fill=\"none\" stroke=\"" << stroke
      << "\" stroke-width=\"2\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    auto q = pixel_of(pts[i]);
    out << (i ? " " : "") << num(q[0]) << "," << num(q[1]);
  }
  out << "\"/>\n";
}

}  // namespace

void write_simplex_plot(const std::string& path, const SimplexPlot& plot) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" "
         "height=\"660\" viewBox=\"0 0 720 660\">\n";
  for (const auto& c : plot.comments) out << "<!-- " << c << " -->\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"720\" height=\"660\" "
         "fill=\"white\"/>\n";

  // Triangle outline; vertex order matches the embedding.
  {
    std::array<double, 3> v1 = {1, 0, 0}, v2 = {0, 1, 0}, v3 = {0, 0, 1};
    auto a = pixel_of(v1), b = pixel_of(v2), c = pixel_of(v3);
    out << "  <g id=\"frame\" stroke=\"#333333\" stroke-width=\"1\" "
           "fill=\"none\">\n";
    out << "    <polygon points=\"" << num(a[0]) << "," << num(a[1]) << " "
        << num(b[0]) << "," << num(b[1]) << " " << num(c[0]) << ","
        << num(c[1]) << "\"/>\n";
    out << "  </g>\n";
  }

  out << "  <g id=\"ecurve\">\n";
  emit_polyline(out, plot.curve, "#1f77b4");
  out << "  </g>\n";

  out << "  <g id=\"baseline\">\n";
  emit_polyline(out, plot.baseline, "#d62728");
  out << "  </g>\n";

  out << "  <g id=\"geodesics\" stroke=\"#999999\" stroke-width=\"1\">\n";
  if (plot.projections.size() == plot.data.size()) {
    for (size_t i = 0; i < plot.data.size(); ++i) {
      auto a = pixel_of(plot.data[i]);
      auto b = pixel_of(plot.projections[i]);
      out << "    <line x1=\"" << num(a[0]) << "\" y1=\"" << num(a[1])
          << "\" x2=\"" << num(b[0]) << "\" y2=\"" << num(b[1]) << "\"/>\n";
    }
  }
  out << "  </g>\n";

  out << "  <g id=\"data\" fill=\"#222222\">\n";
  for (const auto& p : plot.data) {
    auto q = pixel_of(p);
    out << "    <circle cx=\"" << num(q[0]) << "\" cy=\"" << num(q[1])
        << "\" r=\"3\"/>\n";
  }
  out << "  </g>\n";

  out << "</svg>\n";
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace cli
