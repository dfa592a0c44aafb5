// Copyright 2026 The gammadiag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace svgplot {

namespace {

constexpr double kPanelWidth = 640.0;
constexpr double kPanelHeight = 320.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

const char* kPalette[] = {"#c02020", "#207020", "#2040c0",
                          "#b07000", "#700070", "#007070"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct LogRange {
  double lo = 0.0;  // log10 bounds
  double hi = 1.0;
};

LogRange log_range(const std::vector<Series>& series, bool x_axis) {
  double lo = 1e300;
  double hi = -1e300;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      double v = std::max(x_axis ? x : y, 1e-300);
      lo = std::min(lo, std::log10(v));
      hi = std::max(hi, std::log10(v));
    }
  }
  if (lo > hi) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 0.5) {
    double mid = 0.5 * (lo + hi);
    lo = mid - 0.25;
    hi = mid + 0.25;
  }
  return {lo, hi};
}

void render_panel(std::ostringstream& out, const Panel& panel,
                  double y_offset) {
  LogRange xr = log_range(panel.series, true);
  LogRange yr = log_range(panel.series, false);
  double x0 = kMarginLeft;
  double x1 = kPanelWidth - kMarginRight;
  double y0 = y_offset + kPanelHeight - kMarginBottom;
  double y1 = y_offset + kMarginTop;

  auto map_x = [&](double v) {
    return x0 + (std::log10(std::max(v, 1e-300)) - xr.lo) / (xr.hi - xr.lo) *
                    (x1 - x0);
  };
  auto map_y = [&](double v) {
    return y0 - (std::log10(std::max(v, 1e-300)) - yr.lo) / (yr.hi - yr.lo) *
                    (y0 - y1);
  };

  out << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y1) << "\" width=\""
      << fmt(x1 - x0) << "\" height=\"" << fmt(y0 - y1)
      << "\" fill=\"none\" stroke=\"#404040\"/>\n";
  out << "<text x=\"" << fmt(x0) << "\" y=\"" << fmt(y1 - 14.0)
      << "\" font-size=\"15\" fill=\"#202020\">" << panel.title << "</text>\n";

  // Decade ticks.
  for (int k = static_cast<int>(std::ceil(xr.lo));
       k <= static_cast<int>(std::floor(xr.hi)); ++k) {
    double px = x0 + (k - xr.lo) / (xr.hi - xr.lo) * (x1 - x0);
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(y0) << "\" x2=\""
        << fmt(px) << "\" y2=\"" << fmt(y1)
        << "\" stroke=\"#d8d8d8\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt(px - 10.0) << "\" y=\"" << fmt(y0 + 18.0)
        << "\" font-size=\"12\" fill=\"#404040\">1e" << k << "</text>\n";
  }
  for (int k = static_cast<int>(std::ceil(yr.lo));
       k <= static_cast<int>(std::floor(yr.hi)); ++k) {
    double py = y0 - (k - yr.lo) / (yr.hi - yr.lo) * (y0 - y1);
    out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(py) << "\" x2=\""
        << fmt(x1) << "\" y2=\"" << fmt(py)
        << "\" stroke=\"#d8d8d8\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt(x0 - 40.0) << "\" y=\"" << fmt(py + 4.0)
        << "\" font-size=\"12\" fill=\"#404040\">1e" << k << "</text>\n";
  }

  out << "<text x=\"" << fmt(0.5 * (x0 + x1)) << "\" y=\""
      << fmt(y0 + 36.0) << "\" font-size=\"13\" fill=\"#202020\">"
      << panel.x_label << "</text>\n";
  out << "<text x=\"" << fmt(14.0) << "\" y=\"" << fmt(0.5 * (y0 + y1))
      << "\" font-size=\"13\" fill=\"#202020\" transform=\"rotate(-90 14,"
      << fmt(0.5 * (y0 + y1)) << ")\">" << panel.y_label << "</text>\n";

  for (std::size_t i = 0; i < panel.series.size(); ++i) {
    const Series& s = panel.series[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.6\" points=\"";
    for (const auto& [x, y] : s.points) {
      out << fmt(map_x(x)) << ',' << fmt(map_y(y)) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << fmt(x1 - 160.0) << "\" y=\""
        << fmt(y1 + 16.0 + 14.0 * static_cast<double>(i))
        << "\" font-size=\"12\" fill=\"" << color << "\">" << s.label
        << "</text>\n";
  }
}

}  // namespace

std::string render_panels(const std::vector<Panel>& panels) {
  std::ostringstream out;
  double total_height = kPanelHeight * static_cast<double>(panels.size());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPanelWidth
      << "\" height=\"" << total_height << "\" viewBox=\"0 0 " << kPanelWidth
      << ' ' << total_height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    render_panel(out, panels[i], kPanelHeight * static_cast<double>(i));
  }
  out << "</svg>\n";
  return out.str();
}

void write_panels(const std::string& path, const std::vector<Panel>& panels) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("svg: cannot open " + path);
  }
  out << render_panels(panels);
  if (!out) {
    throw std::runtime_error("svg: write failed for " + path);
  }
}

}  // namespace svgplot
