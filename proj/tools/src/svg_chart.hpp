#pragma once

#include <string>
#include <vector>

namespace lfpc::cli {

enum class Mark { Line, Points };

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  Mark mark = Mark::Line;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool x_years = true;     // integer year ticks
  bool y_percent = true;   // tick labels as percent; values stay fractions
  bool x_percent = false;
  int width = 800;
  int height = 480;
  std::vector<ChartSeries> series;
};

// Self-contained SVG with axes, ticks and a legend. Output depends only on
// the input, so repeated calls are byte-identical.
std::string emit_svg_chart(const ChartSpec& spec);

// "Nice" tick positions (1, 2, 5 x 10^k) covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

// Scatter of (x, y) with a straight line y = intercept + slope * x across the x range.
ChartSpec scatter_with_line(std::string title, std::string x_label, std::string y_label,
                            const std::vector<double>& x, const std::vector<double>& y,
                            double intercept, double slope);

}  // namespace lfpc::cli
