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

#include "gammalg/models.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "gammalg/util.hpp"

namespace gammalg {

namespace {

// SplitMix64 (Steele, Lea, Flood 2014); stable across platforms.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

}  // namespace

SparseGammaOperator build_tfim(int n_sites, bool periodic_xx) {
  if (n_sites < 2) {
    throw std::invalid_argument("build_tfim: need at least 2 sites");
  }
  if (n_sites > kMaxWidth) {
    throw std::length_error("build_tfim: more than " +
                            std::to_string(kMaxWidth) + " sites");
  }
  int n = n_sites;
  SparseGammaOperator op(n);
  auto site_bit = [n](int site) {
    return std::uint64_t{1} << (n - 1 - site);
  };

  int last_bond = periodic_xx ? n - 1 : n - 2;
  for (int i = 0; i <= last_bond; ++i) {
    std::uint64_t p = site_bit(i) | site_bit((i + 1) % n);
    op.add_term({p, 0}, 1.0);
  }
  for (int i = 0; i < n; ++i) {
    op.add_term({0, site_bit(i)}, 2.0);
  }
  // Y_0 Z_1 ... Z_{n-2} Y_{n-1}: p set on the endpoints, q set everywhere.
  op.add_term({site_bit(0) | site_bit(n - 1), width_mask(n)}, 1.0);
  return op;
}

SparseGammaOperator build_random(int width, std::size_t term_count,
                                 std::uint64_t seed) {
  SparseGammaOperator op(width);
  if (term_count < 1) {
    throw std::invalid_argument("build_random: need at least one term");
  }
  if (width < 32 &&
      term_count > (std::uint64_t{1} << (2 * width))) {
    throw std::invalid_argument(
        "build_random: more terms than distinct indices");
  }
  SplitMix64 rng(seed);
  std::uint64_t mask = width_mask(width);
  while (op.size() < term_count) {
    std::uint64_t p = rng.next() & mask;
    std::uint64_t q = rng.next() & mask;
    if (op.coefficient(SparseGammaOperator::Key{p, q}) != 0.0) {
      continue;  // rejection keeps the draw uniform over distinct indices
    }
    double coeff = 2.0 * rng.next_unit() - 1.0;
    if (coeff == 0.0) {
      continue;
    }
    op.add_term(SparseGammaOperator::Key{p, q}, coeff);
  }
  return op;
}

SparseGammaOperator table1_fixture() {
  struct Row {
    double h;
    const char* p;
    const char* q;
  };
  static constexpr Row kRows[] = {
      {-0.500231, "00000111", "10000011"},
      {0.957786, "00111010", "00111100"},
      {-0.245173, "10000110", "11100010"},
      {0.345722, "10111101", "00110001"},
      {0.172746, "11000110", "01110011"},
      {-0.960913, "11001110", "10001111"},
  };
  SparseGammaOperator op(8);
  for (const Row& row : kRows) {
    op.add_term(SparseGammaOperator::Key{parse_bit_string(row.p),
                                         parse_bit_string(row.q)},
                row.h);
  }
  return op;
}

SparseGammaOperator read_elements(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_elements: cannot open " + path);
  }
  std::string line;
  std::size_t line_no = 0;
  int width = 0;
  std::vector<std::tuple<std::uint64_t, std::uint64_t, double>> parsed;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line;
    auto first = trimmed.find_first_not_of(" \t\r");
    if (first == std::string::npos || trimmed[first] == '#') {
      continue;
    }
    std::istringstream ss(line);
    std::string coeff_text, p_text, q_text, extra;
    if (!(ss >> coeff_text >> p_text >> q_text) || (ss >> extra)) {
      throw std::runtime_error("read_elements: malformed line " +
                               std::to_string(line_no) + " in " + path);
    }
    double coeff = 0.0;
    try {
      std::size_t pos = 0;
      coeff = std::stod(coeff_text, &pos);
      if (pos != coeff_text.size()) {
        throw std::invalid_argument(coeff_text);
      }
    } catch (const std::exception&) {
      throw std::runtime_error("read_elements: bad coefficient at line " +
                               std::to_string(line_no) + " in " + path);
    }
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    try {
      p = parse_bit_string(p_text);
      q = parse_bit_string(q_text);
    } catch (const std::exception&) {
      throw std::runtime_error("read_elements: bad index bits at line " +
                               std::to_string(line_no) + " in " + path);
    }
    if (p_text.size() != q_text.size()) {
      throw std::runtime_error("read_elements: p/q width mismatch at line " +
                               std::to_string(line_no) + " in " + path);
    }
    if (width == 0) {
      width = static_cast<int>(p_text.size());
    } else if (static_cast<int>(p_text.size()) != width) {
      throw std::runtime_error("read_elements: inconsistent width at line " +
                               std::to_string(line_no) + " in " + path);
    }
    parsed.emplace_back(p, q, coeff);
  }
  if (width == 0) {
    throw std::runtime_error("read_elements: no entries in " + path);
  }
  SparseGammaOperator op(width);
  for (const auto& [p, q, coeff] : parsed) {
    op.add_term(SparseGammaOperator::Key{p, q}, coeff);
  }
  return op;
}

void write_elements(const SparseGammaOperator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_elements: cannot open " + path);
  }
  for (const auto& [key, h] : op.entries()) {
    out << format_double(h) << ' ' << to_bit_string(key.p, op.width()) << ' '
        << to_bit_string(key.q, op.width()) << '\n';
  }
  if (!out) {
    throw std::runtime_error("write_elements: write failed for " + path);
  }
}

}  // namespace gammalg
