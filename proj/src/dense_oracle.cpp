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

#include "gammalg/dense_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gammalg/util.hpp"

namespace gammalg {

namespace {

constexpr double kDropThreshold = 1e-14;
constexpr double kImagTolerance = 1e-12;
constexpr double kHermitianTolerance = 1e-10;
constexpr int kMaxJacobiSweeps = 100;
constexpr std::size_t kMaxEigenDim = 1024;
constexpr int kMaxDenseWidth = 12;
constexpr int kMaxSpectrumWidth = 24;

int width_of_dim(std::size_t dim, const char* where) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw std::invalid_argument(std::string(where) +
                                ": dimension must be a power of two, got " +
                                std::to_string(dim));
  }
  return std::countr_zero(dim);
}

template <typename T>
void wht_impl(std::span<T> v) {
  std::size_t n = v.size();
  width_of_dim(n, "walsh_hadamard_in_place");
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t block = 0; block < n; block += h << 1) {
      for (std::size_t j = block; j < block + h; ++j) {
        T x = v[j];
        T y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
    }
  }
}

constexpr std::complex<double> kPhase[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

// i^{-p.q}
std::complex<double> inverse_pq_phase(std::uint64_t p, std::uint64_t q) {
  return kPhase[(4 - (detail::dot_u64(p, q) & 3)) & 3];
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t dim)
    : dim_(dim), width_(width_of_dim(dim, "DenseMatrix")) {
  data_.assign(dim * dim, {0.0, 0.0});
}

void walsh_hadamard_in_place(std::span<double> v) { wht_impl(v); }
void walsh_hadamard_in_place(std::span<std::complex<double>> v) {
  wht_impl(v);
}

DenseMatrix gamma_to_dense(const SparseGammaOperator& op) {
  if (op.width() > kMaxDenseWidth) {
    throw std::length_error("gamma_to_dense: width " +
                            std::to_string(op.width()) + " exceeds " +
                            std::to_string(kMaxDenseWidth));
  }
  std::size_t dim = std::size_t{1} << op.width();
  DenseMatrix m(dim);
  for (const auto& [key, h] : op.entries()) {
    std::complex<double> base = inverse_pq_phase(key.p, key.q) * h;
    for (std::size_t i = 0; i < dim; ++i) {
      std::complex<double> value =
          (detail::dot_u64(key.q, i) & 1) ? -base : base;
      m(i, i ^ key.p) += value;
    }
  }
  return m;
}

DenseMatrix xor_gather(const DenseMatrix& m) {
  DenseMatrix z(m.dim());
  for (std::size_t p = 0; p < m.dim(); ++p) {
    for (std::size_t i = 0; i < m.dim(); ++i) {
      z(p, i) = m(p ^ i, i);
    }
  }
  return z;
}

void xor_gather_in_place(DenseMatrix& m) {
  std::size_t dim = m.dim();
  // Column i permutes rows by p -> p^i, an involution. Visiting only rows
  // with a zero bit at i's highest set bit swaps each pair exactly once.
  for (std::size_t i = 1; i < dim; ++i) {
    std::size_t high = std::bit_floor(i);
    for (std::size_t p = 0; p < dim; ++p) {
      if ((p & high) == 0) {
        std::swap(m(p, i), m(p ^ i, i));
      }
    }
  }
}

SparseGammaOperator dense_to_gamma(const DenseMatrix& m,
                                   bool in_place_gather) {
  int width = width_of_dim(m.dim(), "dense_to_gamma");
  if (width == 0) {
    throw std::invalid_argument("dense_to_gamma: dimension must be >= 2");
  }
  std::size_t dim = m.dim();
  DenseMatrix z;
  if (in_place_gather) {
    z = m;
    xor_gather_in_place(z);
  } else {
    z = xor_gather(m);
  }
  double scale = 1.0 / static_cast<double>(dim);
  SparseGammaOperator op(width);
  for (std::size_t p = 0; p < dim; ++p) {
    walsh_hadamard_in_place(z.row(p));
    for (std::size_t q = 0; q < dim; ++q) {
      std::complex<double> value = scale * inverse_pq_phase(p, q) * z(p, q);
      if (std::abs(value) < kDropThreshold) {
        continue;
      }
      if (std::abs(value.imag()) > kImagTolerance) {
        throw std::invalid_argument(
            "dense_to_gamma: non-Hermitian input, imaginary coefficient at "
            "p=" + to_bit_string(p, width) + " q=" + to_bit_string(q, width));
      }
      op.set({p, q}, value.real());
    }
  }
  return op;
}

SpectrumReport diagonal_row_to_eigenvalues(const SparseGammaOperator& op) {
  if (op.width() > kMaxSpectrumWidth) {
    throw std::length_error("diagonal_row_to_eigenvalues: width " +
                            std::to_string(op.width()) + " exceeds " +
                            std::to_string(kMaxSpectrumWidth));
  }
  std::size_t dim = std::size_t{1} << op.width();
  SpectrumReport report;
  report.eigenvalues.assign(dim, 0.0);
  for (const auto& [key, h] : op.entries()) {
    if (key.p == 0) {
      report.eigenvalues[key.q] = h;
    } else {
      report.residual_offdiag_sq += h * h;
    }
  }
  walsh_hadamard_in_place(std::span<double>(report.eigenvalues));
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end());
  return report;
}

std::vector<double> eigen_hermitian(const DenseMatrix& m) {
  std::size_t dim = m.dim();
  width_of_dim(dim, "eigen_hermitian");
  if (dim > kMaxEigenDim) {
    throw std::length_error("eigen_hermitian: dimension " +
                            std::to_string(dim) + " exceeds " +
                            std::to_string(kMaxEigenDim));
  }
  double frob_sq = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > kHermitianTolerance) {
        throw std::invalid_argument(
            "eigen_hermitian: input is not Hermitian within tolerance");
      }
      frob_sq += std::norm(m(i, j));
    }
  }

  DenseMatrix a(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    }
  }

  double tol = kHermitianTolerance * std::sqrt(frob_sq);
  double skip = dim > 0 ? tol / static_cast<double>(dim) : 0.0;
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off_sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i + 1; j < dim; ++j) {
        off_sq += 2.0 * std::norm(a(i, j));
      }
    }
    if (std::sqrt(off_sq) <= tol) {
      std::vector<double> eigenvalues(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        eigenvalues[i] = a(i, i).real();
      }
      std::sort(eigenvalues.begin(), eigenvalues.end());
      return eigenvalues;
    }

    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        std::complex<double> w = a(p, q);
        double rho = std::abs(w);
        if (rho <= skip) {
          continue;
        }
        std::complex<double> phase = w / rho;
        double app = a(p, p).real();
        double aqq = a(q, q).real();
        double theta = 0.5 * std::atan2(2.0 * rho, app - aqq);
        double c = std::cos(theta);
        double s = std::sin(theta);
        // A <- A U, columns p and q.
        for (std::size_t k = 0; k < dim; ++k) {
          std::complex<double> kp = a(k, p);
          std::complex<double> kq = a(k, q);
          a(k, p) = c * kp + s * std::conj(phase) * kq;
          a(k, q) = -s * phase * kp + c * kq;
        }
        // A <- U^dagger A, rows p and q.
        for (std::size_t k = 0; k < dim; ++k) {
          std::complex<double> pk = a(p, k);
          std::complex<double> qk = a(q, k);
          a(p, k) = c * pk + s * phase * qk;
          a(q, k) = -s * std::conj(phase) * pk + c * qk;
        }
      }
    }
  }
  throw std::runtime_error("eigen_hermitian: no convergence within " +
                           std::to_string(kMaxJacobiSweeps) + " sweeps");
}

double rdm(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("rdm: length mismatch");
  }
  double diff_sq = 0.0;
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff_sq += (a[i] - b[i]) * (a[i] - b[i]);
    norm_sq += a[i] * a[i] + b[i] * b[i];
  }
  if (norm_sq == 0.0) {
    return 0.0;
  }
  return std::sqrt(diff_sq / norm_sq);
}

DenseMatrix read_dense_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_dense_csv: cannot open " + path);
  }
  std::vector<std::vector<std::complex<double>>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
        if (pos != cell.size()) {
          throw std::invalid_argument(cell);
        }
        fields.push_back(v);
      } catch (const std::exception&) {
        throw std::runtime_error("read_dense_csv: bad field at line " +
                                 std::to_string(line_no));
      }
    }
    if (fields.size() % 2 != 0) {
      throw std::runtime_error("read_dense_csv: odd field count at line " +
                               std::to_string(line_no));
    }
    std::vector<std::complex<double>> row(fields.size() / 2);
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] = {fields[2 * j], fields[2 * j + 1]};
    }
    rows.push_back(std::move(row));
  }
  std::size_t dim = rows.size();
  width_of_dim(dim, "read_dense_csv");
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (rows[i].size() != dim) {
      throw std::runtime_error("read_dense_csv: row " + std::to_string(i + 1) +
                               " has " + std::to_string(rows[i].size()) +
                               " cells, expected " + std::to_string(dim));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

void write_dense_csv(const DenseMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_dense_csv: cannot open " + path);
  }
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j != 0) {
        out << ',';
      }
      out << format_double(m(i, j).real()) << ','
          << format_double(m(i, j).imag());
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write_dense_csv: write failed for " + path);
  }
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("multiply: dimension mismatch");
  }
  std::size_t dim = a.dim();
  DenseMatrix out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      std::complex<double> aik = a(i, k);
      if (aik == std::complex<double>{0.0, 0.0}) {
        continue;
      }
      for (std::size_t j = 0; j < dim; ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

DenseMatrix adjoint(const DenseMatrix& m) {
  DenseMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      out(j, i) = std::conj(m(i, j));
    }
  }
  return out;
}

}  // namespace gammalg
