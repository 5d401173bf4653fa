#include "tsaug/plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>

namespace tsaug {
namespace {

constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 200.0;
constexpr double kMargin = 30.0;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double map(double v, double out_lo, double out_hi) const {
    const double span = hi > lo ? hi - lo : 1.0;
    return out_lo + (v - lo) / span * (out_hi - out_lo);
  }
};

std::string polyline(const TimeSeries& s, const Range& y, double top, const char* style) {
  std::string pts;
  const Index n = s.rows();
  for (Index t = 0; t < n; ++t) {
    const double x = kMargin + (n == 1 ? 0.0 : static_cast<double>(t) / static_cast<double>(n - 1)) *
                                   (kWidth - 2 * kMargin);
    const double py = y.map(s(t, 0), top + kPanelHeight - kMargin, top + kMargin);
    if (!pts.empty()) pts += ' ';
    pts += num(x) + "," + num(py);
  }
  return "  <polyline fill=\"none\" " + std::string(style) + " points=\"" + pts + "\"/>\n";
}

}  // namespace

std::string overlay_svg(const std::vector<OverlayPanel>& panels) {
  const double height = kPanelHeight * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                    num(height) + "\">\n  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  double top = 0.0;
  for (const auto& panel : panels) {
    Range y;
    for (Index t = 0; t < panel.original.rows(); ++t) y.add(panel.original(t, 0));
    for (Index t = 0; t < panel.generated.rows(); ++t) y.add(panel.generated(t, 0));
    out += "  <text x=\"" + num(kMargin) + "\" y=\"" + num(top + 18) + "\" font-family=\"sans-serif\" font-size=\"13\">" +
           escape(panel.title) + "</text>\n";
    out += polyline(panel.original, y, top, "stroke=\"#1f77b4\" stroke-width=\"1.5\" stroke-dasharray=\"3,3\"");
    out += polyline(panel.generated, y, top, "stroke=\"#d62728\" stroke-width=\"1.5\"");
    top += kPanelHeight;
  }
  out += "</svg>\n";
  return out;
}

std::string scatter_svg(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                        const std::vector<bool>& generated, const std::string& title) {
  const double size = kWidth;
  Range xr, yr;
  for (Index i = 0; i < points.rows(); ++i) {
    xr.add(points(i, 0));
    yr.add(points.cols() > 1 ? points(i, 1) : 0.0);
  }
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(size) + "\" height=\"" + num(size) +
                    "\">\n  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "  <text x=\"" + num(kMargin) + "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">" + escape(title) +
         "</text>\n";
  // Generated points first so the originals stay visible on top.
  for (int pass = 0; pass < 2; ++pass) {
    for (Index i = 0; i < points.rows(); ++i) {
      const bool gen = generated[static_cast<std::size_t>(i)];
      if (gen != (pass == 0)) continue;
      const char* colour = kPalette[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]) % kPalette.size()];
      const double cx = xr.map(points(i, 0), kMargin, size - kMargin);
      const double cy = yr.map(points.cols() > 1 ? points(i, 1) : 0.0, size - kMargin, kMargin);
      out += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"4\" ";
      out += gen ? "fill=\"none\" stroke=\"" + std::string(colour) + "\"" : "fill=\"" + std::string(colour) + "\"";
      out += "/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace tsaug
