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

#include "gammalg/util.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gammalg {

std::string to_bit_string(std::uint64_t value, int width) {
  if (width < 1 || width > 64) {
    throw std::invalid_argument("to_bit_string: bad width");
  }
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> i) & 1) {
      out[static_cast<std::size_t>(width - 1 - i)] = '1';
    }
  }
  return out;
}

std::uint64_t parse_bit_string(std::string_view text) {
  if (text.empty() || text.size() > 64) {
    throw std::invalid_argument("parse_bit_string: length must be in [1, 64]");
  }
  std::uint64_t value = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("parse_bit_string: invalid character '" +
                                  std::string(1, c) + "'");
    }
    value = (value << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return value;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double log_log_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("log_log_slope: need >= 2 paired samples");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0) || !(ys[i] > 0)) {
      throw std::invalid_argument("log_log_slope: samples must be positive");
    }
    double lx = std::log(xs[i]);
    double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double n = static_cast<double>(xs.size());
  double denom = n * sxx - sx * sx;
  if (denom == 0) {
    throw std::invalid_argument("log_log_slope: degenerate x samples");
  }
  return (n * sxy - sx * sy) / denom;
}

}  // namespace gammalg
