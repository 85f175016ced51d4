#include "senc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace senc {

namespace {

constexpr double kWidth = 680.0;
constexpr double kHeight = 440.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 56.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<SvgSeries>& series) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  if (!(x_min < x_max)) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  y_min = std::min(y_min, 0.0);
  if (!(y_min < y_max)) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  y_max += 0.05 * (y_max - y_min);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kMarginTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << title << "</text>\n";

  // axes
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
      << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
      << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  const int n_ticks = 5;
  for (int k = 0; k <= n_ticks; ++k) {
    double fx = x_min + (x_max - x_min) * k / n_ticks;
    double fy = y_min + (y_max - y_min) * k / n_ticks;
    double tx = px(fx), ty = py(fy);
    out << "<line x1=\"" << fmt1(tx) << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << fmt1(tx)
        << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt1(tx) << "\" y=\"" << kMarginTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fx)
        << "</text>\n";
    out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << fmt1(ty) << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << fmt1(ty) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt1(ty + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fy)
        << "</text>\n";
  }

  out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
      << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  double legend_y = kMarginTop + 8;
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    std::ostringstream pts;
    for (const auto& [x, y] : s.points) pts << fmt1(px(x)) << ',' << fmt1(py(y)) << ' ';
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\""
        << pts.str() << "\"/>\n";
    for (const auto& [x, y] : s.points)
      out << "<circle cx=\"" << fmt1(px(x)) << "\" cy=\"" << fmt1(py(y)) << "\" r=\"2.5\" fill=\""
          << s.color << "\"/>\n";

    double lx = kMarginLeft + plot_w - 130;
    out << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 24 << "\" y2=\""
        << legend_y << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 30 << "\" y=\"" << legend_y + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    legend_y += 18;
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace senc
