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

#include "gammalg/pauli_algebra.hpp"

#include <stdexcept>

namespace gammalg {

namespace {

constexpr std::complex<double> kPhaseTable[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void require_equal_width(int a, int b, const char* where) {
  if (a != b) {
    throw std::invalid_argument(std::string(where) + ": width mismatch (" +
                                std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  }
}

}  // namespace

BitWord::BitWord(std::uint64_t value, int width)
    : value_(value), width_(width) {
  if (width < 1 || width > kMaxWidth) {
    throw std::invalid_argument("BitWord: width must be in [1, 64], got " +
                                std::to_string(width));
  }
  if (value > width_mask(width)) {
    throw std::invalid_argument("BitWord: value does not fit in " +
                                std::to_string(width) + " bits");
  }
}

int dot(BitWord a, BitWord b) {
  require_equal_width(a.width(), b.width(), "dot");
  return detail::dot_u64(a.value(), b.value());
}

std::complex<double> PhaseExponent::value() const { return kPhaseTable[k_]; }

GammaIndex::GammaIndex(BitWord p, BitWord q)
    : p_(p.value()), q_(q.value()), width_(p.width()) {
  require_equal_width(p.width(), q.width(), "GammaIndex");
}

GammaIndex::GammaIndex(std::uint64_t p, std::uint64_t q, int width)
    : GammaIndex(BitWord(p, width), BitWord(q, width)) {}

PhaseExponent structure_constant(const GammaIndex& left,
                                 const GammaIndex& right) {
  require_equal_width(left.width(), right.width(), "structure_constant");
  return PhaseExponent(detail::structure_exponent_u64(left.p(), left.q(),
                                                      right.p(), right.q()));
}

std::pair<GammaIndex, PhaseExponent> multiply(const GammaIndex& left,
                                              const GammaIndex& right) {
  require_equal_width(left.width(), right.width(), "multiply");
  GammaIndex product(left.p() ^ right.p(), left.q() ^ right.q(), left.width());
  return {product, structure_constant(left, right)};
}

bool commutes(const GammaIndex& a, const GammaIndex& b) {
  require_equal_width(a.width(), b.width(), "commutes");
  return !detail::anticommutes_u64(a.p(), a.q(), b.p(), b.q());
}

GammaIndex kron(const GammaIndex& a, const GammaIndex& b) {
  int width = a.width() + b.width();
  if (width > kMaxWidth) {
    throw std::length_error("kron: combined width " + std::to_string(width) +
                            " exceeds " + std::to_string(kMaxWidth));
  }
  return GammaIndex((a.p() << b.width()) | b.p(), (a.q() << b.width()) | b.q(),
                    width);
}

PhaseExponent triple_sign(const GammaIndex& gen, const GammaIndex& a,
                          const GammaIndex& b) {
  require_equal_width(gen.width(), a.width(), "triple_sign");
  require_equal_width(gen.width(), b.width(), "triple_sign");
  int parity =
      std::popcount((gen.p() ^ gen.q()) & (a.p() ^ a.q()) & (b.p() ^ b.q())) +
      std::popcount(gen.p() & a.p() & b.p()) +
      std::popcount(gen.q() & a.q() & b.q());
  return PhaseExponent((parity & 1) ? 2 : 0);
}

GammaIndex from_pauli_string(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("from_pauli_string: empty string");
  }
  if (text.size() > static_cast<std::size_t>(kMaxWidth)) {
    throw std::length_error("from_pauli_string: string longer than " +
                            std::to_string(kMaxWidth) + " sites");
  }
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    p <<= 1;
    q <<= 1;
    switch (text[i]) {
      case 'I':
        break;
      case 'X':
        p |= 1;
        break;
      case 'Y':
        p |= 1;
        q |= 1;
        break;
      case 'Z':
        q |= 1;
        break;
      default:
        throw std::invalid_argument(
            "from_pauli_string: invalid character '" +
            std::string(1, text[i]) + "' at position " + std::to_string(i));
    }
  }
  return GammaIndex(p, q, static_cast<int>(text.size()));
}

std::string to_pauli_string(const GammaIndex& g) {
  std::string out;
  out.reserve(static_cast<std::size_t>(g.width()));
  for (int site = g.width() - 1; site >= 0; --site) {
    bool px = (g.p() >> site) & 1;
    bool qz = (g.q() >> site) & 1;
    out.push_back(px ? (qz ? 'Y' : 'X') : (qz ? 'Z' : 'I'));
  }
  return out;
}

std::complex<double> dense_entry(const GammaIndex& g, std::uint64_t i,
                                 std::uint64_t j) {
  if (g.width() < kMaxWidth) {
    std::uint64_t dim = std::uint64_t{1} << g.width();
    if (i >= dim || j >= dim) {
      throw std::invalid_argument("dense_entry: index out of range");
    }
  }
  if ((i ^ j ^ g.p()) != 0) {
    return {0.0, 0.0};
  }
  // (-1)^{q.i} i^{-p.q} = i^{2 q.i - p.q}
  int k = 2 * detail::dot_u64(g.q(), i) - detail::dot_u64(g.p(), g.q());
  return kPhaseTable[((k % 4) + 4) % 4];
}

}  // namespace gammalg
