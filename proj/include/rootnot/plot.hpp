#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace rootnot {

struct PlotCurve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "trials";
  std::string y_label = "figure of merit";
  double y_min = 0.0;
  double y_max = 1.0;
};

// Self-contained SVG: one axis pair, one <polyline> per curve, a legend.
// Output depends only on the inputs (fixed number formatting).
std::string render_svg(std::span<const PlotCurve> curves, const PlotOptions &options = {});

// render_svg to a file; throws std::invalid_argument on empty input and
// std::runtime_error naming the path on write failure.
void emit_plot(std::span<const PlotCurve> curves, const std::filesystem::path &path,
               const PlotOptions &options = {});

}  // namespace rootnot
