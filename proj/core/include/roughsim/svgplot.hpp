#pragma once

#include <string>
#include <vector>

namespace rough::svg {

// Minimal hand-rolled SVG renderer for the plot subcommand. Good enough for
// diagnostic line plots and landscape heatmaps; not a charting library.

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> yerr;  // empty, or one error bar per point
};

struct PlotOptions {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  int width = 720;
  int height = 480;
  bool log_y = false;
};

// Throws std::invalid_argument on empty/ragged input and std::runtime_error
// when the file cannot be written.
void write_line_plot(const std::string& path, const std::vector<Series>& series,
                     const PlotOptions& options);

// values[i][j] is the cell at (xs[j], ys[i]); rendered with a linear
// two-color ramp and a labeled color scale.
void write_heatmap(const std::string& path, const std::vector<double>& xs,
                   const std::vector<double>& ys,
                   const std::vector<std::vector<double>>& values,
                   const PlotOptions& options);

}  // namespace rough::svg
