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

#ifndef GAMMALG_UTIL_HPP
#define GAMMALG_UTIL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace gammalg {

// Zero-padded binary rendering, most significant bit first.
std::string to_bit_string(std::uint64_t value, int width);

// Parses a string of '0'/'1'; the width is the string length.
// Throws std::invalid_argument on anything else.
std::uint64_t parse_bit_string(std::string_view text);

// Shortest representation that round-trips a double ("%.17g").
std::string format_double(double value);

// Least-squares slope of log(y) against log(x); requires positive samples.
double log_log_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace gammalg

#endif  // GAMMALG_UTIL_HPP
