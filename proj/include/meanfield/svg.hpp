#ifndef MEANFIELD_SVG_HPP_
#define MEANFIELD_SVG_HPP_

#include <string>
#include <utility>
#include <vector>

namespace meanfield {

struct SvgSeries {
  std::string label;
  std::string color = "black";
  std::vector<std::pair<double, double>> line;    // polyline vertices
  std::vector<std::pair<double, double>> points;  // marker dots
};

// Static SVG 1.1 line plot, fixed 960x480 viewport, axes auto-scaled to the
// data. Deterministic byte output for identical input.
std::string render_svg_plot(const std::vector<SvgSeries>& series, const std::string& title,
                            const std::string& x_label, const std::string& y_label);

void write_svg_plot(const std::string& path, const std::vector<SvgSeries>& series,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label);

}  // namespace meanfield

#endif  // MEANFIELD_SVG_HPP_
