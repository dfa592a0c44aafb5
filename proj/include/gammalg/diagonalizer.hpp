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

#ifndef GAMMALG_DIAGONALIZER_HPP
#define GAMMALG_DIAGONALIZER_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gammalg/sparse_operator.hpp"

namespace gammalg {

// One accepted Jacobi step. The rotation is conjugation by
// U = cos(phi) I - i sin(phi) Gamma^{r,s}, i.e. H' = U H U^dagger.
struct RotationStep {
  std::size_t iteration = 0;  // 1-based count of applied rotations
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  double phi = 0.0;                  // in [-pi/4, pi/4]
  double epsilon_after = 0.0;        // recorded after pruning
  std::size_t elements_after = 0;
  double pruned_sq_norm_cum = 0.0;
};

struct DiagonalizeConfig {
  double stop_epsilon = 0.0078125;    // 2^-7
  double delete_chi = 0.00048828125;  // 2^-11
  std::size_t max_rotations = 1000000;
  // Minimum predicted diagonal-norm gain to accept a step.
  double gain_tolerance = 1e-14;
  // Next-best rows to retry after the best row yields no gain.
  int candidate_retry_limit = 8;
  std::uint64_t rng_seed = 0;
  // Weight candidate buckets by |h_diag * h_row| instead of counting pairs.
  bool weighted_buckets = true;
};

enum class DiagonalizeStatus { converged, stalled, budget_exhausted };

struct DiagonalizeOutcome {
  DiagonalizeStatus status = DiagonalizeStatus::converged;
  std::vector<RotationStep> history;
};

const char* to_string(DiagonalizeStatus status);

// Anticommuting-sector statistics of the diagonal row against candidate
// generator (r,s):
//   X = sum over q with q.r odd of h_{0,q}^2 - h_{r,q^s}^2
//   Y = sum over the same q of 2 sigma h_{r,q^s} h_{0,q}
// with sigma = i f for left factor (r,s), right factor (0,q). A rotation by
// phi maps (X,Y) by a 4*phi plane rotation, so the reachable diagonal gain
// is (sqrt(X^2+Y^2) - X) / 2.
struct XYStats {
  double x = 0.0;
  double y = 0.0;
};
XYStats xy_for_candidate(const SparseGammaOperator& op, std::uint64_t r,
                         std::uint64_t s);

// phi = atan2(y, x) / 4, which maximizes cos(4 phi) x + sin(4 phi) y.
double optimal_angle(double x, double y);

// Conjugates the operator in place. Entries commuting with Gamma^{r,s} are
// untouched; anticommuting entries mix pairwise with their (p^r, q^s)
// partner. r == 0 is a no-op guard.
void apply_rotation(SparseGammaOperator& op, std::uint64_t r, std::uint64_t s,
                    double phi);

struct Candidate {
  std::uint64_t r = 0;
  std::uint64_t s = 0;
};

// Heuristic pick: r from the largest off-diagonal row norm, s from the most
// common (weighted) q_diag ^ q_row bucket, with a parity fix-up when the
// commuting diagonal population dominates. Empty when already diagonal.
std::optional<Candidate> select_candidate(const SparseGammaOperator& op,
                                          bool weighted_buckets = true);

using StepObserver =
    std::function<void(const RotationStep&, const SparseGammaOperator&)>;

// Jacobi loop: rotate, prune, record, until epsilon <= stop_epsilon
// (converged) or the rotation budget runs out (budget_exhausted). Candidate
// search walks the top 1 + candidate_retry_limit rows by norm with their
// pinned s pick; if none clears gain_tolerance, the exact gain is evaluated
// over each of those rows' bucket pools and the best rotation anywhere in
// them is taken. Only when that also finds nothing is the run stalled.
DiagonalizeOutcome diagonalize(SparseGammaOperator& op,
                               const DiagonalizeConfig& config,
                               const StepObserver& observer = {});

}  // namespace gammalg

#endif  // GAMMALG_DIAGONALIZER_HPP
