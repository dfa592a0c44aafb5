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

#ifndef GAMMALG_MODELS_HPP
#define GAMMALG_MODELS_HPP

#include <cstdint>
#include <string>

#include "gammalg/sparse_operator.hpp"

namespace gammalg {

// 1D transverse-field Ising chain with a fermionic boundary string:
//   sum_i X_i X_{i+1} + 2 sum_i Z_i + Y_0 Z_1 ... Z_{n-2} Y_{n-1}
// Open XX chain (i = 0..n-2) by default; periodic_xx adds the X_{n-1} X_0
// wrap bond as well. Site 0 is the leftmost tensor factor.
SparseGammaOperator build_tfim(int n_sites, bool periodic_xx = false);

// term_count distinct uniformly drawn indices with coefficients uniform in
// [-1, 1], generated by SplitMix64 so results are identical across
// platforms for a fixed seed.
SparseGammaOperator build_random(int width, std::size_t term_count,
                                 std::uint64_t seed);

// The fixed six-term width-8 Hermitian calibration operator.
SparseGammaOperator table1_fixture();

// Element-list text format, one entry per line: `coefficient p_bits q_bits`
// with zero-padded binary index strings. Blank lines and lines starting
// with '#' are skipped; duplicate indices accumulate.
SparseGammaOperator read_elements(const std::string& path);
void write_elements(const SparseGammaOperator& op, const std::string& path);

}  // namespace gammalg

#endif  // GAMMALG_MODELS_HPP
