#pragma once

#include <string>
#include <vector>

namespace helm::plot {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static polyline chart with auto-scaled axes and a small legend.
/// equal_aspect forces a metric x/y scale (used for the trajectory view).
std::string render_chart(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<Series>& series,
                         bool equal_aspect = false);

void write_file(const std::string& path, const std::string& content);

}  // namespace helm::plot
