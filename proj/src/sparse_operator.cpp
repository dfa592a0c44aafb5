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

#include "gammalg/sparse_operator.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "gammalg/util.hpp"

namespace gammalg {

SparseGammaOperator::SparseGammaOperator(int width) : width_(width) {
  if (width < 1 || width > kMaxWidth) {
    throw std::invalid_argument("SparseGammaOperator: width must be in [1, " +
                                std::to_string(kMaxWidth) + "]");
  }
}

void SparseGammaOperator::check_key(Key k) const {
  std::uint64_t mask = width_mask(width_);
  if ((k.p & ~mask) != 0 || (k.q & ~mask) != 0) {
    throw std::invalid_argument(
        "SparseGammaOperator: index does not fit in width " +
        std::to_string(width_));
  }
}

double SparseGammaOperator::coefficient(Key k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? 0.0 : it->second;
}

double SparseGammaOperator::coefficient(const GammaIndex& g) const {
  if (g.width() != width_) {
    throw std::invalid_argument("coefficient: width mismatch");
  }
  return coefficient(Key{g.p(), g.q()});
}

void SparseGammaOperator::add_term(const GammaIndex& g, double coeff) {
  if (g.width() != width_) {
    throw std::invalid_argument("add_term: width mismatch");
  }
  add_term(Key{g.p(), g.q()}, coeff);
}

void SparseGammaOperator::add_term(Key k, double coeff) {
  check_key(k);
  if (!std::isfinite(coeff)) {
    throw std::invalid_argument("add_term: coefficient must be finite");
  }
  if (coeff == 0.0) {
    return;
  }
  auto [it, inserted] = entries_.try_emplace(k, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) {
      entries_.erase(it);
    }
  }
}

void SparseGammaOperator::set(Key k, double value) {
  check_key(k);
  if (!std::isfinite(value)) {
    throw std::invalid_argument("set: coefficient must be finite");
  }
  if (value == 0.0) {
    entries_.erase(k);
  } else {
    entries_[k] = value;
  }
}

double SparseGammaOperator::total_sq_norm() const {
  double sum = 0.0;
  for (const auto& [key, h] : entries_) {
    sum += h * h;
  }
  return sum;
}

double SparseGammaOperator::diagonal_sq_norm() const {
  double sum = 0.0;
  for (auto it = row_begin(0); it != row_end(0); ++it) {
    sum += it->second * it->second;
  }
  return sum;
}

double SparseGammaOperator::epsilon() const {
  double total = total_sq_norm();
  if (total <= 0.0) {
    throw std::domain_error("epsilon: undefined for the zero operator");
  }
  double eps = 1.0 - diagonal_sq_norm() / total;
  if (eps < 0.0) return 0.0;
  if (eps > 1.0) return 1.0;
  return eps;
}

PruneReport SparseGammaOperator::prune(double chi) {
  if (chi < 0.0) {
    throw std::invalid_argument("prune: chi must be >= 0");
  }
  PruneReport report;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (std::abs(it->second) <= chi) {
      report.removed_count += 1;
      report.removed_sq_norm += it->second * it->second;
      it = entries_.erase(it);
    } else {
      ++it;
    }
  }
  return report;
}

std::vector<SparseGammaOperator::RowNorm> SparseGammaOperator::row_sq_norms()
    const {
  std::vector<RowNorm> rows;
  for (const auto& [key, h] : entries_) {
    if (rows.empty() || rows.back().p != key.p) {
      rows.push_back({key.p, 0.0});
    }
    rows.back().sq_norm += h * h;
  }
  return rows;
}

SparseGammaOperator::Map::const_iterator SparseGammaOperator::row_begin(
    std::uint64_t p) const {
  return entries_.lower_bound(Key{p, 0});
}

SparseGammaOperator::Map::const_iterator SparseGammaOperator::row_end(
    std::uint64_t p) const {
  if (p == ~std::uint64_t{0}) {
    return entries_.end();
  }
  return entries_.lower_bound(Key{p + 1, 0});
}

std::string to_json_string(const SparseGammaOperator& op) {
  nlohmann::json doc;
  doc["width"] = op.width();
  doc["entries"] = nlohmann::json::array();
  for (const auto& [key, h] : op.entries()) {
    doc["entries"].push_back({{"p", to_bit_string(key.p, op.width())},
                              {"q", to_bit_string(key.q, op.width())},
                              {"h", h}});
  }
  return doc.dump(2);
}

}  // namespace gammalg
