#pragma once

#include <string>
#include <vector>

namespace ffdm::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // scatter (circles) instead of a polyline
};

struct Chart {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "T";
  std::vector<Series> series;
};

/// Static SVG line chart with axes, ticks and a legend.
std::string render_svg(const Chart& chart);

std::string xml_escape(const std::string& text);

}  // namespace ffdm::cli
