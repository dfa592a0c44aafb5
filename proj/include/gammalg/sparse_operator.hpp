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

#ifndef GAMMALG_SPARSE_OPERATOR_HPP
#define GAMMALG_SPARSE_OPERATOR_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gammalg/pauli_algebra.hpp"

namespace gammalg {

struct PruneReport {
  std::size_t removed_count = 0;
  double removed_sq_norm = 0.0;
};

// H = sum h_{p,q} Gamma^{p,q} with real, finite, nonzero coefficients.
// Keys are ordered by (p, q), so a fixed p forms one contiguous row and all
// iteration is deterministic. Mutations require exclusive access; reads may
// run concurrently between mutations.
class SparseGammaOperator {
 public:
  struct Key {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  using Map = std::map<Key, double>;

  struct RowNorm {
    std::uint64_t p = 0;
    double sq_norm = 0.0;
  };

  explicit SparseGammaOperator(int width);

  int width() const { return width_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Map& entries() const { return entries_; }

  GammaIndex index_of(Key k) const { return GammaIndex(k.p, k.q, width_); }

  // 0.0 when the entry is absent.
  double coefficient(Key k) const;
  double coefficient(const GammaIndex& g) const;

  // Accumulates into an existing entry; an exact-zero result is evicted.
  void add_term(const GammaIndex& g, double coeff);
  void add_term(Key k, double coeff);

  // Direct assignment; exact zero erases.
  void set(Key k, double value);

  double total_sq_norm() const;

  // Squared norm of the p == 0 row.
  double diagonal_sq_norm() const;

  // 1 - diagonal_sq_norm/total_sq_norm, clamped into [0, 1].
  // Throws std::domain_error on the zero operator.
  double epsilon() const;

  // Removes every entry with |h| <= chi.
  PruneReport prune(double chi);

  // One (p, sum_q h^2) pair per occupied row, ascending in p.
  std::vector<RowNorm> row_sq_norms() const;

  // Row [p] as a key range.
  Map::const_iterator row_begin(std::uint64_t p) const;
  Map::const_iterator row_end(std::uint64_t p) const;

 private:
  void check_key(Key k) const;

  int width_;
  Map entries_;
};

// {"width": m, "entries": [{"p": bits, "q": bits, "h": coeff}, ...]} with
// p and q as zero-padded binary strings.
std::string to_json_string(const SparseGammaOperator& op);

}  // namespace gammalg

#endif  // GAMMALG_SPARSE_OPERATOR_HPP
