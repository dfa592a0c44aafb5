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

#ifndef GAMMADIAG_SVG_PLOT_HPP
#define GAMMADIAG_SVG_PLOT_HPP

#include <string>
#include <utility>
#include <vector>

namespace svgplot {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Stacked log-log line panels with decade ticks; one polyline per series.
std::string render_panels(const std::vector<Panel>& panels);

void write_panels(const std::string& path, const std::vector<Panel>& panels);

}  // namespace svgplot

#endif  // GAMMADIAG_SVG_PLOT_HPP
