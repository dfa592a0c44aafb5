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

#ifndef GAMMALG_PAULI_ALGEBRA_HPP
#define GAMMALG_PAULI_ALGEBRA_HPP

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace gammalg {

// Widths are limited to one machine word.
inline constexpr int kMaxWidth = 64;

inline constexpr std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

// An m-bit unsigned value, 1 <= m <= 64.
class BitWord {
 public:
  BitWord() = default;
  BitWord(std::uint64_t value, int width);

  std::uint64_t value() const { return value_; }
  int width() const { return width_; }

  friend bool operator==(const BitWord&, const BitWord&) = default;

 private:
  std::uint64_t value_ = 0;
  int width_ = 1;
};

// p.q = popcount(p & q), the GF(2) vector metric.
int dot(BitWord a, BitWord b);

namespace detail {

inline int dot_u64(std::uint64_t a, std::uint64_t b) {
  return std::popcount(a & b);
}

// Exponent k of i^k = i^(r.q - p.s) * (-1)^((s^q).(p&r) + (p^r).(q&s)), the
// structure constant of Gamma^{p,q} Gamma^{r,s} with (p,q) the left factor.
inline int structure_exponent_u64(std::uint64_t p, std::uint64_t q,
                                  std::uint64_t r, std::uint64_t s) {
  int k = dot_u64(r, q) - dot_u64(p, s) +
          2 * (std::popcount((s ^ q) & p & r) + std::popcount((p ^ r) & q & s));
  return ((k % 4) + 4) % 4;
}

inline bool anticommutes_u64(std::uint64_t p, std::uint64_t q, std::uint64_t r,
                             std::uint64_t s) {
  return ((dot_u64(p, s) + dot_u64(q, r)) & 1) != 0;
}

// Real sign i * f for an anticommuting pair: +1 or -1. The left factor is the
// rotation generator (r,s), the right factor the entry (p,q).
inline int rotation_sign_u64(std::uint64_t r, std::uint64_t s, std::uint64_t p,
                             std::uint64_t q) {
  // f is +/-i exactly when the pair anticommutes, so k is odd here.
  int k = structure_exponent_u64(r, s, p, q);
  return k == 3 ? 1 : -1;
}

}  // namespace detail

// A fourth root of unity i^k, k in {0,1,2,3}.
class PhaseExponent {
 public:
  PhaseExponent() = default;
  explicit PhaseExponent(int k) : k_(((k % 4) + 4) % 4) {}

  int k() const { return k_; }
  std::complex<double> value() const;

  friend bool operator==(const PhaseExponent&, const PhaseExponent&) = default;

 private:
  int k_ = 0;
};

// Identifies one basis matrix Gamma^{p,q} of width m: a Kronecker product of
// m one-site factors, the p bit selecting {I,Z} vs {X,Y} and the q bit the
// sign-alternating member of the pair. Entries follow
//   Gamma^{p,q}_{ij} = (-1)^{q.i} i^{-p.q} delta(i ^ j ^ p).
class GammaIndex {
 public:
  GammaIndex() = default;
  GammaIndex(BitWord p, BitWord q);
  GammaIndex(std::uint64_t p, std::uint64_t q, int width);

  std::uint64_t p() const { return p_; }
  std::uint64_t q() const { return q_; }
  int width() const { return width_; }
  BitWord p_word() const { return BitWord(p_, width_); }
  BitWord q_word() const { return BitWord(q_, width_); }

  bool is_identity() const { return p_ == 0 && q_ == 0; }
  bool is_diagonal() const { return p_ == 0; }

  friend bool operator==(const GammaIndex&, const GammaIndex&) = default;

 private:
  std::uint64_t p_ = 0;
  std::uint64_t q_ = 0;
  int width_ = 1;
};

// Phase exponent k with Gamma^{left} Gamma^{right} = i^k Gamma^{left^right}.
PhaseExponent structure_constant(const GammaIndex& left,
                                 const GammaIndex& right);

// Group product: returns (Gamma^{p^r, q^s}, structure constant).
std::pair<GammaIndex, PhaseExponent> multiply(const GammaIndex& left,
                                              const GammaIndex& right);

// True iff (p.s + q.r) is even for a=(p,q), b=(r,s).
bool commutes(const GammaIndex& a, const GammaIndex& b);

// Tensor product; the left factor occupies the high-order bits.
GammaIndex kron(const GammaIndex& a, const GammaIndex& b);

// Sign g in f_{p^a, q^b} = f_{p,q} f_{a,b} g relating structure constants of
// a product of left factors against a common generator; 0 for +1, 2 for -1.
PhaseExponent triple_sign(const GammaIndex& gen, const GammaIndex& a,
                          const GammaIndex& b);

// Text form over {I,X,Y,Z}; the leftmost character is the leftmost tensor
// factor and lands in the highest bits.
GammaIndex from_pauli_string(std::string_view text);
std::string to_pauli_string(const GammaIndex& g);

// One matrix entry of Gamma^{p,q}; zero unless j == i ^ p.
std::complex<double> dense_entry(const GammaIndex& g, std::uint64_t i,
                                 std::uint64_t j);

}  // namespace gammalg

#endif  // GAMMALG_PAULI_ALGEBRA_HPP
