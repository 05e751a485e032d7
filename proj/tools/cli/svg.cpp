#include "cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ffdm::cli {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kMarginLeft = 70;
constexpr double kMarginRight = 170;
constexpr double kMarginTop = 40;
constexpr double kMarginBottom = 55;

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                               "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                               "#bcbd22", "#17becf"};

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[32];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  }
};

}  // namespace

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_svg(const Chart& chart) {
  Range xr, yr;
  for (const auto& s : chart.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.settle();
  yr.settle();
  const double pad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= pad;
  yr.hi += pad;

  const double pw = kWidth - kMarginLeft - kMarginRight;
  const double ph = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return kMarginTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kMarginLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"15\">" << xml_escape(chart.title) << "</text>\n";

  // Axes and ticks.
  os << "<g stroke=\"black\" fill=\"none\">\n"
     << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << pw
     << "\" height=\"" << ph << "\"/>\n";
  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double fx = kMarginLeft + pw * t / kTicks;
    const double fy = kMarginTop + ph * t / kTicks;
    os << "<line x1=\"" << fmt(fx) << "\" y1=\"" << kMarginTop + ph << "\" x2=\"" << fmt(fx)
       << "\" y2=\"" << kMarginTop + ph + 5 << "\"/>\n"
       << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << fmt(fy) << "\" x2=\"" << kMarginLeft
       << "\" y2=\"" << fmt(fy) << "\"/>\n";
  }
  os << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int t = 0; t <= kTicks; ++t) {
    const double xv = xr.lo + (xr.hi - xr.lo) * t / kTicks;
    const double yv = yr.hi - (yr.hi - yr.lo) * t / kTicks;
    os << "<text x=\"" << fmt(kMarginLeft + pw * t / kTicks) << "\" y=\""
       << kMarginTop + ph + 18 << "\" text-anchor=\"middle\">" << fmt(xv, "%.3g") << "</text>\n"
       << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt(kMarginTop + ph * t / kTicks + 4)
       << "\" text-anchor=\"end\">" << fmt(yv, "%.3g") << "</text>\n";
  }
  os << "<text x=\"" << kMarginLeft + pw / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\">" << xml_escape(chart.x_label) << "</text>\n"
     << "<text x=\"18\" y=\"" << kMarginTop + ph / 2 << "\" text-anchor=\"middle\" "
     << "transform=\"rotate(-90 18 " << kMarginTop + ph / 2 << ")\">"
     << xml_escape(chart.y_label) << "</text>\n</g>\n";

  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const auto& ser = chart.series[s];
    const char* color = kPalette[s % kPalette.size()];
    const std::size_t n = std::min(ser.x.size(), ser.y.size());
    if (ser.markers) {
      os << "<g fill=\"" << color << "\">\n";
      for (std::size_t i = 0; i < n; ++i) {
        os << "<circle cx=\"" << fmt(sx(ser.x[i])) << "\" cy=\"" << fmt(sy(ser.y[i]))
           << "\" r=\"3\"/>\n";
      }
      os << "</g>\n";
    } else {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < n; ++i) {
        os << (i ? " " : "") << fmt(sx(ser.x[i])) << ',' << fmt(sy(ser.y[i]));
      }
      os << "\"/>\n";
    }
    // Legend entry.
    const double ly = kMarginTop + 10 + 18.0 * static_cast<double>(s);
    const double lx = kWidth - kMarginRight + 15;
    if (ser.markers) {
      os << "<circle cx=\"" << lx + 10 << "\" cy=\"" << ly << "\" r=\"3\" fill=\"" << color
         << "\"/>\n";
    } else {
      os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 20 << "\" y2=\"" << ly
         << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    }
    os << "<text x=\"" << lx + 26 << "\" y=\"" << ly + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(ser.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace ffdm::cli
