#include "meanfield/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "meanfield/trajectory.hpp"

namespace meanfield {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 50.0;

std::string num(double v) {
  // two decimals are plenty for pixel coordinates and keep files small
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v;
  return os.str();
}

}  // namespace

std::string render_svg_plot(const std::vector<SvgSeries>& series, const std::string& title,
                            const std::string& x_label, const std::string& y_label) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (const auto& all : {s.line, s.points}) {
      for (const auto& [x, y] : all) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (!(xmin <= xmax)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  auto px = [&](double x) {
    return kMargin + (x - xmin) / (xmax - xmin) * (kWidth - 2.0 * kMargin);
  };
  auto py = [&](double y) {
    return kHeight - kMargin - (y - ymin) / (ymax - ymin) * (kHeight - 2.0 * kMargin);
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"960\" "
        "height=\"480\" viewBox=\"0 0 960 480\">\n"
     << "<rect width=\"960\" height=\"480\" fill=\"white\"/>\n"
     << "<text x=\"480\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
     << "</text>\n";
  // axes
  os << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kHeight - kMargin) << "\" x2=\""
     << num(kWidth - kMargin) << "\" y2=\"" << num(kHeight - kMargin)
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kMargin) << "\" x2=\""
     << num(kMargin) << "\" y2=\"" << num(kHeight - kMargin) << "\" stroke=\"black\"/>\n";
  // tick labels at the corners of the data range
  os << "<text x=\"" << num(kMargin) << "\" y=\"" << num(kHeight - kMargin + 20)
     << "\" font-size=\"12\">" << format_double(xmin) << "</text>\n";
  os << "<text x=\"" << num(kWidth - kMargin) << "\" y=\"" << num(kHeight - kMargin + 20)
     << "\" text-anchor=\"end\" font-size=\"12\">" << format_double(xmax) << "</text>\n";
  os << "<text x=\"" << num(kMargin - 6) << "\" y=\"" << num(kHeight - kMargin)
     << "\" text-anchor=\"end\" font-size=\"12\">" << format_double(ymin) << "</text>\n";
  os << "<text x=\"" << num(kMargin - 6) << "\" y=\"" << num(kMargin)
     << "\" text-anchor=\"end\" font-size=\"12\">" << format_double(ymax) << "</text>\n";
  os << "<text x=\"480\" y=\"" << num(kHeight - 10) << "\" text-anchor=\"middle\" "
     << "font-size=\"13\">" << x_label << "</text>\n";
  os << "<text x=\"16\" y=\"240\" text-anchor=\"middle\" font-size=\"13\" "
     << "transform=\"rotate(-90 16 240)\">" << y_label << "</text>\n";

  double legend_y = kMargin + 14.0;
  for (const auto& s : series) {
    if (!s.line.empty()) {
      os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\" points=\"";
      for (const auto& [x, y] : s.line) os << num(px(x)) << ',' << num(py(y)) << ' ';
      os << "\"/>\n";
    }
    for (const auto& [x, y] : s.points) {
      os << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
         << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
    }
    if (!s.label.empty()) {
      os << "<text x=\"" << num(kWidth - kMargin - 160) << "\" y=\"" << num(legend_y)
         << "\" font-size=\"13\" fill=\"" << s.color << "\">" << s.label << "</text>\n";
      legend_y += 18.0;
    }
  }
  os << "</svg>\n";
  return os.str();
}

void write_svg_plot(const std::string& path, const std::vector<SvgSeries>& series,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << render_svg_plot(series, title, x_label, y_label);
}

}  // namespace meanfield
