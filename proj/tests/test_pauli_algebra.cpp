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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <string>

#include "gammalg/pauli_algebra.hpp"
#include "test_helpers.hpp"

using namespace gammalg;
using testutil::dense_of;
using testutil::max_abs_diff;
using testutil::Rng;

namespace {

const GammaIndex kI1(0, 0, 1);
const GammaIndex kX(1, 0, 1);
const GammaIndex kY(1, 1, 1);
const GammaIndex kZ(0, 1, 1);

DenseMatrix scaled(const DenseMatrix& m, std::complex<double> factor) {
  DenseMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      out(i, j) = factor * m(i, j);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("BitWord enforces its invariants") {
  CHECK(BitWord(0b1010, 4).value() == 0b1010);
  CHECK(BitWord(0, 64).width() == 64);
  CHECK_THROWS_AS(BitWord(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(BitWord(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(BitWord(0, 65), std::invalid_argument);
}

TEST_CASE("dot counts shared bits") {
  CHECK(dot(BitWord(0b1010, 4), BitWord(0b0110, 4)) == 1);
  CHECK(dot(BitWord(0b111, 3), BitWord(0b111, 3)) == 3);
  Rng rng;
  for (int t = 0; t < 32; ++t) {
    CHECK(dot(BitWord(rng.bits(8), 8), BitWord(0, 8)) == 0);
  }
  CHECK_THROWS_AS(dot(BitWord(1, 2), BitWord(1, 3)), std::invalid_argument);
}

TEST_CASE("bitwise xor-sum identity") {
  Rng rng;
  for (int t = 0; t < 2000; ++t) {
    std::uint64_t s = rng.bits(16);
    std::uint64_t p = rng.bits(16);
    std::uint64_t q = rng.bits(16);
    int lhs = detail::dot_u64(s, p ^ q);
    int rhs = detail::dot_u64(s, p) + detail::dot_u64(s, q) -
              2 * detail::dot_u64(s, p & q);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("structure constant fixed cases") {
  // X Z = -i Y
  CHECK(structure_constant(kX, kZ).k() == 3);
  // Y X = -i Z
  CHECK(structure_constant(kY, kX).k() == 3);
  // g g = +1 identity
  Rng rng;
  for (int t = 0; t < 50; ++t) {
    GammaIndex g(rng.bits(6), rng.bits(6), 6);
    CHECK(structure_constant(g, g).k() == 0);
  }
  CHECK_THROWS_AS(structure_constant(kX, GammaIndex(0, 0, 2)),
                  std::invalid_argument);
}

TEST_CASE("multiply fixed cases") {
  auto [xz, k_xz] = multiply(kX, kZ);
  CHECK(xz == kY);
  CHECK(k_xz.k() == 3);

  Rng rng;
  for (int t = 0; t < 50; ++t) {
    GammaIndex g(rng.bits(5), rng.bits(5), 5);
    GammaIndex id(0, 0, 5);
    auto [ig, k_ig] = multiply(id, g);
    CHECK(ig == g);
    CHECK(k_ig.k() == 0);
    auto [gg, k_gg] = multiply(g, g);
    CHECK(gg == id);
    CHECK(k_gg.k() == 0);
  }
}

TEST_CASE("group law matches dense products exhaustively at m <= 2") {
  for (int m = 1; m <= 2; ++m) {
    std::uint64_t n = std::uint64_t{1} << m;
    for (std::uint64_t p = 0; p < n; ++p) {
      for (std::uint64_t q = 0; q < n; ++q) {
        for (std::uint64_t r = 0; r < n; ++r) {
          for (std::uint64_t s = 0; s < n; ++s) {
            GammaIndex left(p, q, m);
            GammaIndex right(r, s, m);
            auto [prod, phase] = multiply(left, right);
            DenseMatrix expect = multiply(dense_of(left), dense_of(right));
            DenseMatrix got = scaled(dense_of(prod), phase.value());
            REQUIRE(max_abs_diff(expect, got) == 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("commutes matches the dense commutator") {
  CHECK_FALSE(commutes(kX, kY));
  CHECK(commutes(kI1, kY));
  CHECK(commutes(GammaIndex(0, 3, 2), GammaIndex(3, 0, 2)));  // ZZ vs XX

  Rng rng;
  for (int t = 0; t < 200; ++t) {
    int m = 1 + static_cast<int>(rng.next() % 3);
    GammaIndex a(rng.bits(m), rng.bits(m), m);
    GammaIndex b(rng.bits(m), rng.bits(m), m);
    DenseMatrix ab = multiply(dense_of(a), dense_of(b));
    DenseMatrix ba = multiply(dense_of(b), dense_of(a));
    double comm = 0.0, anti = 0.0;
    for (std::size_t i = 0; i < ab.dim(); ++i) {
      for (std::size_t j = 0; j < ab.dim(); ++j) {
        comm = std::max(comm, std::abs(ab(i, j) - ba(i, j)));
        anti = std::max(anti, std::abs(ab(i, j) + ba(i, j)));
      }
    }
    if (commutes(a, b)) {
      CHECK(comm == 0.0);
    } else {
      CHECK(anti == 0.0);
    }
  }
}

TEST_CASE("kron concatenates with the left factor in high bits") {
  GammaIndex xz = kron(kX, kZ);
  CHECK(xz.p() == 0b10);
  CHECK(xz.q() == 0b01);
  CHECK(xz.width() == 2);

  GammaIndex zi = kron(kZ, kI1);
  CHECK(zi.p() == 0);
  CHECK(zi.q() == 0b10);

  Rng rng;
  for (int t = 0; t < 50; ++t) {
    GammaIndex g(rng.bits(4), rng.bits(4), 4);
    GammaIndex ig = kron(kI1, g);
    CHECK(ig.width() == 5);
    CHECK(ig.p() == g.p());
    CHECK(ig.q() == g.q());
  }

  CHECK_THROWS_AS(kron(GammaIndex(0, 0, 40), GammaIndex(0, 0, 40)),
                  std::length_error);
}

TEST_CASE("kron agrees with the dense Kronecker product") {
  Rng rng;
  for (int t = 0; t < 40; ++t) {
    GammaIndex a(rng.bits(2), rng.bits(2), 2);
    GammaIndex b(rng.bits(1), rng.bits(1), 1);
    DenseMatrix da = dense_of(a);
    DenseMatrix db = dense_of(b);
    DenseMatrix dk = dense_of(kron(a, b));
    for (std::size_t i = 0; i < dk.dim(); ++i) {
      for (std::size_t j = 0; j < dk.dim(); ++j) {
        std::complex<double> expect =
            da(i >> 1, j >> 1) * db(i & 1, j & 1);
        REQUIRE(std::abs(dk(i, j) - expect) == 0.0);
      }
    }
  }
}

TEST_CASE("triple sign fixed cases and symmetry") {
  // Any identity argument kills every AND term.
  Rng rng;
  for (int t = 0; t < 50; ++t) {
    GammaIndex g(rng.bits(4), rng.bits(4), 4);
    GammaIndex h(rng.bits(4), rng.bits(4), 4);
    GammaIndex id(0, 0, 4);
    CHECK(triple_sign(id, g, h).k() == 0);
    CHECK(triple_sign(g, id, h).k() == 0);
    CHECK(triple_sign(g, h, id).k() == 0);
    CHECK(triple_sign(g, h, h) == triple_sign(g, h, h));
  }
  // Exchanging the two left-factor groups leaves the sign unchanged.
  for (int t = 0; t < 200; ++t) {
    GammaIndex gen(rng.bits(6), rng.bits(6), 6);
    GammaIndex a(rng.bits(6), rng.bits(6), 6);
    GammaIndex b(rng.bits(6), rng.bits(6), 6);
    CHECK(triple_sign(gen, a, b) == triple_sign(gen, b, a));
  }
  // One-site worked instance: f_{XY} = f_X f_Y g against generator Y.
  GammaIndex gen(1, 1, 1);
  GammaIndex a(1, 0, 1);
  GammaIndex b(0, 1, 1);
  int lhs = structure_constant(GammaIndex(1, 1, 1), gen).k();
  int rhs = (structure_constant(a, gen).k() + structure_constant(b, gen).k() +
             triple_sign(gen, a, b).k()) %
            4;
  CHECK(lhs == rhs);
}

TEST_CASE("triple product identity over random triples") {
  Rng rng;
  for (int t = 0; t < 10000; ++t) {
    int m = 1 + static_cast<int>(rng.next() % 8);
    GammaIndex gen(rng.bits(m), rng.bits(m), m);
    GammaIndex a(rng.bits(m), rng.bits(m), m);
    GammaIndex b(rng.bits(m), rng.bits(m), m);
    GammaIndex ab(a.p() ^ b.p(), a.q() ^ b.q(), m);
    int lhs = structure_constant(ab, gen).k();
    int rhs = (structure_constant(a, gen).k() +
               structure_constant(b, gen).k() + triple_sign(gen, a, b).k()) %
              4;
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("pauli string parsing") {
  CHECK(from_pauli_string("X") == kX);
  GammaIndex zi = from_pauli_string("ZI");
  CHECK(zi.p() == 0);
  CHECK(zi.q() == 0b10);
  GammaIndex yzy = from_pauli_string("YZY");
  CHECK(yzy.p() == 0b101);
  CHECK(yzy.q() == 0b111);

  CHECK_THROWS_AS(from_pauli_string(""), std::invalid_argument);
  CHECK_THROWS_AS(from_pauli_string("XQZ"), std::invalid_argument);
  CHECK_THROWS_AS(from_pauli_string(std::string(65, 'X')), std::length_error);
}

TEST_CASE("pauli string round trip is exhaustive up to length 4") {
  const char alphabet[] = {'I', 'X', 'Y', 'Z'};
  for (int len = 1; len <= 4; ++len) {
    std::uint64_t count = std::uint64_t{1} << (2 * len);
    for (std::uint64_t code = 0; code < count; ++code) {
      std::string text;
      for (int i = len - 1; i >= 0; --i) {
        text.push_back(alphabet[(code >> (2 * i)) & 3]);
      }
      GammaIndex g = from_pauli_string(text);
      REQUIRE(to_pauli_string(g) == text);
      REQUIRE(from_pauli_string(to_pauli_string(g)) == g);
    }
  }
}

TEST_CASE("dense entries match the printed one-site matrices") {
  CHECK(dense_entry(kY, 1, 0) == std::complex<double>(0.0, 1.0));
  CHECK(dense_entry(kY, 0, 1) == std::complex<double>(0.0, -1.0));
  CHECK(dense_entry(kZ, 1, 1) == std::complex<double>(-1.0, 0.0));
  CHECK(dense_entry(kZ, 0, 0) == std::complex<double>(1.0, 0.0));
  CHECK(dense_entry(kX, 0, 1) == std::complex<double>(1.0, 0.0));
  for (std::uint64_t i = 0; i < 2; ++i) {
    for (std::uint64_t j = 0; j < 2; ++j) {
      CHECK(dense_entry(kI1, i, j) ==
            std::complex<double>(i == j ? 1.0 : 0.0, 0.0));
    }
  }
  CHECK_THROWS_AS(dense_entry(kX, 2, 0), std::invalid_argument);
}

TEST_CASE("every basis matrix is Hermitian") {
  Rng rng;
  for (int t = 0; t < 100; ++t) {
    int m = 1 + static_cast<int>(rng.next() % 3);
    GammaIndex g(rng.bits(m), rng.bits(m), m);
    DenseMatrix d = dense_of(g);
    CHECK(max_abs_diff(d, adjoint(d)) == 0.0);
  }
}

TEST_CASE("orthogonality: trace(Ga Gb) = 2^m only on equal indices") {
  for (int m = 1; m <= 2; ++m) {
    std::uint64_t n = std::uint64_t{1} << m;
    for (std::uint64_t p = 0; p < n; ++p) {
      for (std::uint64_t q = 0; q < n; ++q) {
        for (std::uint64_t r = 0; r < n; ++r) {
          for (std::uint64_t s = 0; s < n; ++s) {
            DenseMatrix prod = multiply(dense_of(GammaIndex(p, q, m)),
                                        dense_of(GammaIndex(r, s, m)));
            std::complex<double> trace = 0.0;
            for (std::size_t i = 0; i < prod.dim(); ++i) {
              trace += prod(i, i);
            }
            double expect = (p == r && q == s) ? static_cast<double>(n) : 0.0;
            REQUIRE(std::abs(trace - expect) == 0.0);
          }
        }
      }
    }
  }
  Rng rng;
  for (int t = 0; t < 64; ++t) {
    GammaIndex a(rng.bits(3), rng.bits(3), 3);
    GammaIndex b(rng.bits(3), rng.bits(3), 3);
    DenseMatrix prod = multiply(dense_of(a), dense_of(b));
    std::complex<double> trace = 0.0;
    for (std::size_t i = 0; i < prod.dim(); ++i) {
      trace += prod(i, i);
    }
    double expect = (a == b) ? 8.0 : 0.0;
    CHECK(std::abs(trace - expect) == 0.0);
  }
}
