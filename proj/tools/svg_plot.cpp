#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace helm::plot {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 540.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 20.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double nice_step(double span) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step = 10.0;
  if (frac <= 1.0) step = 1.0;
  else if (frac <= 2.0) step = 2.0;
  else if (frac <= 5.0) step = 5.0;
  return step * mag;
}

}  // namespace

std::string render_chart(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<Series>& series,
                         bool equal_aspect) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!(xmax > xmin)) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (!(ymax > ymin)) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  // pad 4%
  const double xpad = 0.04 * (xmax - xmin);
  const double ypad = 0.04 * (ymax - ymin);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;

  const double plot_w = kWidth - kMarginL - kMarginR;
  const double plot_h = kHeight - kMarginT - kMarginB;
  double sx = plot_w / (xmax - xmin);
  double sy = plot_h / (ymax - ymin);
  if (equal_aspect) {
    const double s = std::min(sx, sy);
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    const double half_w = 0.5 * plot_w / s, half_h = 0.5 * plot_h / s;
    xmin = cx - half_w;
    xmax = cx + half_w;
    ymin = cy - half_h;
    ymax = cy + half_h;
    sx = sy = s;
  }

  const auto px = [&](double x) { return kMarginL + (x - xmin) * sx; };
  const auto py = [&](double y) { return kHeight - kMarginB - (y - ymin) * sy; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" << title << "</text>\n";

  // gridlines and ticks
  const double xstep = nice_step(xmax - xmin);
  const double ystep = nice_step(ymax - ymin);
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">\n";
  for (double gx = std::ceil(xmin / xstep) * xstep; gx <= xmax; gx += xstep) {
    svg << "<line x1=\"" << px(gx) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(gx) << "\" y2=\""
        << py(ymax) << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << px(gx) << "\" y=\"" << kHeight - kMarginB + 16
        << "\" text-anchor=\"middle\">" << num(gx) << "</text>\n";
  }
  for (double gy = std::ceil(ymin / ystep) * ystep; gy <= ymax; gy += ystep) {
    svg << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(gy) << "\" x2=\"" << px(xmax) << "\" y2=\""
        << py(gy) << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << kMarginL - 6 << "\" y=\"" << py(gy) + 4
        << "\" text-anchor=\"end\">" << num(gy) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
      << "</text>\n";
  svg << "<text x=\"16\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
      << kHeight / 2 << ")\">" << y_label << "</text>\n";

  // series: decimate long traces to keep files small
  for (const auto& s : series) {
    const size_t n = std::min(s.x.size(), s.y.size());
    if (n == 0) continue;
    const size_t max_pts = 4000;
    const size_t stride = std::max<size_t>(1, n / max_pts);
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.4\" points=\"";
    for (size_t i = 0; i < n; i += stride)
      svg << px(s.x[i]) << "," << py(s.y[i]) << " ";
    if ((n - 1) % stride != 0) svg << px(s.x[n - 1]) << "," << py(s.y[n - 1]);
    svg << "\"/>\n";
  }

  // legend
  double ly = kMarginT + 14.0;
  for (const auto& s : series) {
    svg << "<line x1=\"" << kMarginL + 10 << "\" y1=\"" << ly << "\" x2=\"" << kMarginL + 34
        << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kMarginL + 40 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    ly += 18.0;
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace helm::plot
