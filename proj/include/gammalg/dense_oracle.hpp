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

#ifndef GAMMALG_DENSE_ORACLE_HPP
#define GAMMALG_DENSE_ORACLE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gammalg/sparse_operator.hpp"

namespace gammalg {

// Row-major complex matrix of power-of-two dimension.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim);

  std::size_t dim() const { return dim_; }
  int width() const { return width_; }

  std::complex<double>& operator()(std::size_t i, std::size_t j) {
    return data_[i * dim_ + j];
  }
  const std::complex<double>& operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  std::span<std::complex<double>> row(std::size_t i) {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const std::complex<double>> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }

  std::vector<std::complex<double>>& data() { return data_; }
  const std::vector<std::complex<double>>& data() const { return data_; }

 private:
  std::size_t dim_ = 0;
  int width_ = 0;  // dim == 2^width
  std::vector<std::complex<double>> data_;
};

struct SpectrumReport {
  std::vector<double> eigenvalues;  // sorted ascending, length 2^m
  double residual_offdiag_sq = 0.0; // squared norm of ignored p != 0 entries
};

// Unnormalized transform with kernel (-1)^{q.i}; applying twice multiplies
// by the length. Throws unless the length is a power of two.
void walsh_hadamard_in_place(std::span<double> v);
void walsh_hadamard_in_place(std::span<std::complex<double>> v);

// Materializes sum h_{p,q} Gamma^{p,q}; each term touches the 2^m entries
// (i, i^p). Guarded to width <= 12.
DenseMatrix gamma_to_dense(const SparseGammaOperator& op);

// Inverse expansion h_{p,q} = 2^{-m} i^{-p.q} sum_i (-1)^{q.i} M[p^i][i],
// via the XOR row gather followed by a Walsh-Hadamard transform per row.
// Coefficients below 1e-14 in magnitude are dropped; imaginary residues
// above 1e-12 (non-Hermitian input) throw. `in_place_gather` selects the
// swap-based gather kernel instead of the scratch-buffer one.
SparseGammaOperator dense_to_gamma(const DenseMatrix& m,
                                   bool in_place_gather = false);

// Z[p][i] = M[p^i][i]. The map (p,i) -> (p^i,i) pairs rows bijectively.
DenseMatrix xor_gather(const DenseMatrix& m);
void xor_gather_in_place(DenseMatrix& m);

// Eigenvalues of a fully diagonal operator: Walsh-Hadamard transform of the
// scattered p == 0 row, sorted ascending. Entries with p != 0 are ignored
// and reported as residual weight. Guarded to width <= 24.
SpectrumReport diagonal_row_to_eigenvalues(const SparseGammaOperator& op);

// All eigenvalues of a Hermitian matrix, sorted ascending. Cyclic complex
// Jacobi; converged when the off-diagonal Frobenius norm falls below
// 1e-10 * ||M||_F. Guarded to dim <= 1024 and at most 100 sweeps.
std::vector<double> eigen_hermitian(const DenseMatrix& m);

// ||a - b|| / sqrt(||a||^2 + ||b||^2); 0 when both vanish. Inputs must be
// equal-length and sorted consistently by the caller.
double rdm(std::span<const double> a, std::span<const double> b);

// Dense CSV: each row holds 2*dim fields, alternating re and im.
DenseMatrix read_dense_csv(const std::string& path);
void write_dense_csv(const DenseMatrix& m, const std::string& path);

// Helpers for conjugation checks.
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix adjoint(const DenseMatrix& m);

}  // namespace gammalg

#endif  // GAMMALG_DENSE_ORACLE_HPP
