#pragma once

#include <string>
#include <vector>

namespace mcs::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct ChartLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Polyline chart with axes, min/max ticks and a legend.
std::string line_chart(const ChartLabels& labels, const std::vector<Series>& series);

/// Grouped bars: one group per category, one bar per series (series.y is
/// indexed by category; series.x is ignored).
std::string bar_chart(const ChartLabels& labels, const std::vector<std::string>& categories,
                      const std::vector<Series>& series);

}  // namespace mcs::cli
