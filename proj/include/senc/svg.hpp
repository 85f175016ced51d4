#ifndef SENC_SVG_HPP
#define SENC_SVG_HPP

#include <string>
#include <utility>
#include <vector>

namespace senc {

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

// Static line chart built from SVG primitives: axes with ticks, one polyline
// per series, and a legend. Series with fewer than one point are skipped.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<SvgSeries>& series);

}  // namespace senc

#endif
