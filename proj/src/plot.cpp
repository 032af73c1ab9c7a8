#include "rootnot/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "rootnot/series_io.hpp"

namespace rootnot {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string escape_xml(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(std::span<const PlotCurve> curves, const PlotOptions &options) {
  if (curves.empty()) throw std::invalid_argument("render_svg: no curves");
  double x_lo = 0.0, x_hi = 0.0;
  bool first = true;
  for (const PlotCurve &c : curves) {
    if (c.x.size() != c.y.size() || c.x.empty()) {
      throw std::invalid_argument("render_svg: curve '" + c.label + "' is empty or ragged");
    }
    for (double x : c.x) {
      x_lo = first ? x : std::min(x_lo, x);
      x_hi = first ? x : std::max(x_hi, x);
      first = false;
    }
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  const double y_lo = options.y_min;
  const double y_hi = options.y_max > options.y_min ? options.y_max : options.y_min + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) {
    y = std::clamp(y, y_lo, y_hi);
    return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << fixed2(kLeft + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << escape_xml(options.title) << "</text>\n";
  }

  // Axes and ticks.
  svg << "<g stroke=\"black\" fill=\"none\">\n"
      << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kTop + plot_h) << "\" x2=\""
      << fixed2(kLeft + plot_w) << "\" y2=\"" << fixed2(kTop + plot_h) << "\"/>\n"
      << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kTop) << "\" x2=\"" << fixed2(kLeft)
      << "\" y2=\"" << fixed2(kTop + plot_h) << "\"/>\n"
      << "</g>\n";
  svg << "<g fill=\"black\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
    svg << "<text x=\"" << fixed2(px(xv)) << "\" y=\"" << fixed2(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
    const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
    svg << "<text x=\"" << fixed2(kLeft - 8) << "\" y=\"" << fixed2(py(yv) + 4)
        << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
  }
  svg << "<text x=\"" << fixed2(kLeft + plot_w / 2) << "\" y=\"" << fixed2(kHeight - 15)
      << "\" text-anchor=\"middle\">" << escape_xml(options.x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << fixed2(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fixed2(kTop + plot_h / 2) << ")\">" << escape_xml(options.y_label) << "</text>\n";
  svg << "</g>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const PlotCurve &c = curves[i];
    const char *color = kPalette[i % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < c.x.size(); ++j) {
      if (j > 0) svg << ' ';
      svg << fixed2(px(c.x[j])) << ',' << fixed2(py(c.y[j]));
    }
    svg << "\"/>\n";
  }

  // Legend.
  const double lx = kLeft + plot_w + 15;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    const char *color = kPalette[i % std::size(kPalette)];
    svg << "<line x1=\"" << fixed2(lx) << "\" y1=\"" << fixed2(ly) << "\" x2=\"" << fixed2(lx + 24)
        << "\" y2=\"" << fixed2(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fixed2(lx + 30) << "\" y=\"" << fixed2(ly + 4) << "\">" << escape_xml(curves[i].label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(std::span<const PlotCurve> curves, const std::filesystem::path &path,
               const PlotOptions &options) {
  write_text_file(path, render_svg(curves, options));
}

}  // namespace rootnot
