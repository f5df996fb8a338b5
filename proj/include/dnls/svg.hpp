#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "core.hpp"

namespace dnls {

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Minimal line plot, optionally log-log.  Enough to eyeball rates and drifts.
inline void write_svg_plot(const std::string& path, const std::string& title,
                           const std::vector<SvgSeries>& series, bool loglog) {
  const double W = 720, H = 480, L = 70, R = 20, T = 40, B = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto tx = [&](double x) { return loglog ? std::log10(x) : x; };
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (loglog && (x <= 0 || y <= 0)) continue;
      xmin = std::min(xmin, tx(x));
      xmax = std::max(xmax, tx(x));
      ymin = std::min(ymin, tx(y));
      ymax = std::max(ymax, tx(y));
    }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
  }
  if (ymin > ymax) {
    ymin = 0;
    ymax = 1;
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;
  auto px = [&](double x) { return L + (tx(x) - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (tx(y) - ymin) / (ymax - ymin) * (H - T - B); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  f << "<rect width='100%' height='100%' fill='white'/>\n";
  f << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
    << "</text>\n";
  f << "<line x1='" << L << "' y1='" << H - B << "' x2='" << W - R << "' y2='" << H - B
    << "' stroke='black'/>\n";
  f << "<line x1='" << L << "' y1='" << T << "' x2='" << L << "' y2='" << H - B
    << "' stroke='black'/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + k * (xmax - xmin) / 4.0;
    const double yv = ymin + k * (ymax - ymin) / 4.0;
    f << "<text x='" << L + k * (W - L - R) / 4.0 << "' y='" << H - B + 18
      << "' text-anchor='middle' font-size='11'>" << (loglog ? "1e" : "")
      << (loglog ? std::to_string(xv).substr(0, 6) : std::to_string(xv).substr(0, 8))
      << "</text>\n";
    f << "<text x='" << L - 6 << "' y='" << H - B - k * (H - T - B) / 4.0 + 4
      << "' text-anchor='end' font-size='11'>" << (loglog ? "1e" : "")
      << (loglog ? std::to_string(yv).substr(0, 6) : std::to_string(yv).substr(0, 8))
      << "</text>\n";
  }
  int ci = 0;
  for (const auto& s : series) {
    const char* col = colors[ci % 5];
    f << "<polyline fill='none' stroke='" << col << "' stroke-width='1.5' points='";
    for (const auto& [x, y] : s.points) {
      if (loglog && (x <= 0 || y <= 0)) continue;
      f << px(x) << "," << py(y) << " ";
    }
    f << "'/>\n";
    for (const auto& [x, y] : s.points) {
      if (loglog && (x <= 0 || y <= 0)) continue;
      f << "<circle cx='" << px(x) << "' cy='" << py(y) << "' r='2.5' fill='" << col << "'/>\n";
    }
    f << "<text x='" << W - R - 8 << "' y='" << T + 16 + 16 * ci
      << "' text-anchor='end' font-size='12' fill='" << col << "'>" << s.label << "</text>\n";
    ++ci;
  }
  f << "</svg>\n";
}

}  // namespace dnls
