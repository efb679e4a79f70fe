#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>

#include "internal.hpp"

namespace dexkin::cli {
namespace {

constexpr double kPanel = 320.0;
constexpr double kMargin = 36.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string scatter_svg(const std::vector<Eigen::Vector3d>& points, const std::string& title) {
  struct View {
    int u, v;
    const char* label;
  };
  static constexpr std::array<View, 3> kViews{{{0, 1, "x-y (mm)"}, {0, 2, "x-z (mm)"}, {1, 2, "y-z (mm)"}}};
  const double width = 3 * kPanel;
  const double height = kPanel + 24.0;

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
                  "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"8\" y=\"16\" font-family=\"sans-serif\" font-size=\"13\">" + title + " (" +
       std::to_string(points.size()) + " points)</text>\n";

  for (std::size_t k = 0; k < kViews.size(); ++k) {
    const View& view = kViews[k];
    double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u, lo_v = lo_u, hi_v = -lo_u;
    for (const auto& p : points) {
      lo_u = std::min(lo_u, p[view.u] * 1000.0);
      hi_u = std::max(hi_u, p[view.u] * 1000.0);
      lo_v = std::min(lo_v, p[view.v] * 1000.0);
      hi_v = std::max(hi_v, p[view.v] * 1000.0);
    }
    if (points.empty()) lo_u = lo_v = -1.0, hi_u = hi_v = 1.0;
    // Equal scale on both axes so shapes are not distorted.
    const double span = std::max({hi_u - lo_u, hi_v - lo_v, 1e-6});
    const double scale = (kPanel - 2 * kMargin) / span;
    const double x0 = k * kPanel + kMargin;
    const double y0 = 24.0 + kPanel - kMargin;
    const auto px = [&](double u) { return x0 + (u - lo_u) * scale; };
    const auto py = [&](double v) { return y0 - (v - lo_v) * scale; };

    s += "<g>\n";
    s += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x0 + span * scale) + "\" y2=\"" +
         fmt(y0) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x0) + "\" y2=\"" + fmt(y0 - span * scale) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(x0) + "\" y=\"" + fmt(y0 + 24) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
         view.label + "  [" + fmt(lo_u) + ", " + fmt(lo_v) + "] + " + fmt(span) + "</text>\n";
    for (const auto& p : points) {
      s += "<circle cx=\"" + fmt(px(p[view.u] * 1000.0)) + "\" cy=\"" + fmt(py(p[view.v] * 1000.0)) +
           "\" r=\"1\" fill=\"steelblue\" fill-opacity=\"0.5\"/>\n";
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace dexkin::cli
