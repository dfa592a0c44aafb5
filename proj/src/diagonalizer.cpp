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

#include "gammalg/diagonalizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace gammalg {

namespace {

using Key = SparseGammaOperator::Key;

void check_generator(const SparseGammaOperator& op, std::uint64_t r,
                     std::uint64_t s, const char* where) {
  std::uint64_t mask = width_mask(op.width());
  if ((r & ~mask) != 0 || (s & ~mask) != 0) {
    throw std::invalid_argument(std::string(where) +
                                ": generator does not fit operator width");
  }
}

// Rows with p != 0, sorted by descending squared norm, ties toward small p.
std::vector<SparseGammaOperator::RowNorm> offdiagonal_rows_by_norm(
    const SparseGammaOperator& op) {
  std::vector<SparseGammaOperator::RowNorm> rows = op.row_sq_norms();
  if (!rows.empty() && rows.front().p == 0) {
    rows.erase(rows.begin());
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) {
                     return a.sq_norm > b.sq_norm;
                   });
  return rows;
}

// s for a fixed r: bucket q0 ^ qr over anticommuting diagonal entries
// against row r. When the commuting diagonal population dominates (or no
// pairs exist), fix the parity of s.r instead: a row entry (r, qr) only
// rotates when dot(s,r) + dot(qr,r) is odd, so the parity is chosen to
// activate the heavier half of the row.
std::uint64_t pick_s_for_row(const SparseGammaOperator& op, std::uint64_t r,
                             bool weighted_buckets) {
  std::size_t anticommuting = 0;
  std::size_t commuting = 0;
  std::map<std::uint64_t, double> buckets;
  for (auto it = op.row_begin(0); it != op.row_end(0); ++it) {
    std::uint64_t q0 = it->first.q;
    if ((detail::dot_u64(q0, r) & 1) == 0) {
      ++commuting;
      continue;
    }
    ++anticommuting;
    double h0 = std::abs(it->second);
    for (auto jt = op.row_begin(r); jt != op.row_end(r); ++jt) {
      double weight = weighted_buckets ? h0 * std::abs(jt->second) : 1.0;
      buckets[q0 ^ jt->first.q] += weight;
    }
  }

  std::uint64_t s = 0;
  double best = -1.0;
  for (const auto& [candidate, weight] : buckets) {
    if (weight > best) {
      best = weight;
      s = candidate;
    }
  }

  bool majority_anticommutes = anticommuting >= commuting;
  bool have_pairs = !buckets.empty();
  if (!majority_anticommutes || !have_pairs) {
    double mass_even = 0.0;
    double mass_odd = 0.0;
    for (auto it = op.row_begin(r); it != op.row_end(r); ++it) {
      double h_sq = it->second * it->second;
      if (detail::dot_u64(it->first.q, r) & 1) {
        mass_odd += h_sq;
      } else {
        mass_even += h_sq;
      }
    }
    int want = mass_even >= mass_odd ? 1 : 0;
    if ((detail::dot_u64(s, r) & 1) != want) {
      s ^= r & (~r + 1);  // toggle the lowest set bit of r
    }
  }
  return s;
}

// Exact-gain fallback pool for a stalled row: bucket keys ranked by weight
// (capped), each with its parity-flipped twin, plus the trivial alignments.
std::vector<std::uint64_t> fallback_s_candidates(const SparseGammaOperator& op,
                                                 std::uint64_t r) {
  constexpr std::size_t kMaxBuckets = 64;
  std::map<std::uint64_t, double> buckets;
  for (auto it = op.row_begin(0); it != op.row_end(0); ++it) {
    if ((detail::dot_u64(it->first.q, r) & 1) == 0) {
      continue;
    }
    double h0 = std::abs(it->second);
    for (auto jt = op.row_begin(r); jt != op.row_end(r); ++jt) {
      buckets[it->first.q ^ jt->first.q] += h0 * std::abs(jt->second);
    }
  }
  std::vector<std::pair<double, std::uint64_t>> ranked;
  ranked.reserve(buckets.size());
  for (const auto& [s, weight] : buckets) {
    ranked.emplace_back(-weight, s);
  }
  std::sort(ranked.begin(), ranked.end());
  if (ranked.size() > kMaxBuckets) {
    ranked.resize(kMaxBuckets);
  }

  std::uint64_t low = r & (~r + 1);
  std::set<std::uint64_t> pool{0, low};
  for (const auto& [neg_weight, s] : ranked) {
    pool.insert(s);
    pool.insert(s ^ low);
  }
  return {pool.begin(), pool.end()};
}

}  // namespace

const char* to_string(DiagonalizeStatus status) {
  switch (status) {
    case DiagonalizeStatus::converged:
      return "converged";
    case DiagonalizeStatus::stalled:
      return "stalled";
    case DiagonalizeStatus::budget_exhausted:
      return "budget_exhausted";
  }
  return "unknown";
}

XYStats xy_for_candidate(const SparseGammaOperator& op, std::uint64_t r,
                         std::uint64_t s) {
  check_generator(op, r, s, "xy_for_candidate");
  if (r == 0) {
    throw std::invalid_argument("xy_for_candidate: r must be nonzero");
  }
  XYStats stats;
  // Diagonal side: slots q with q.r odd contribute h_{0,q}^2 and, when the
  // (r, q^s) partner exists, the cross term.
  for (auto it = op.row_begin(0); it != op.row_end(0); ++it) {
    std::uint64_t q = it->first.q;
    if ((detail::dot_u64(q, r) & 1) == 0) {
      continue;
    }
    double h0 = it->second;
    stats.x += h0 * h0;
    double hr = op.coefficient(Key{r, q ^ s});
    if (hr != 0.0) {
      int sigma = detail::rotation_sign_u64(r, s, 0, q);
      stats.y += 2.0 * sigma * hr * h0;
    }
  }
  // Row side: entry (r, qr) sits in slot q = qr ^ s.
  for (auto it = op.row_begin(r); it != op.row_end(r); ++it) {
    std::uint64_t q = it->first.q ^ s;
    if ((detail::dot_u64(q, r) & 1) == 0) {
      continue;
    }
    stats.x -= it->second * it->second;
  }
  return stats;
}

double optimal_angle(double x, double y) {
  if (x == 0.0 && y == 0.0) {
    return 0.0;
  }
  return 0.25 * std::atan2(y, x);
}

void apply_rotation(SparseGammaOperator& op, std::uint64_t r, std::uint64_t s,
                    double phi) {
  check_generator(op, r, s, "apply_rotation");
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("apply_rotation: phi must be finite");
  }
  if (r == 0 || phi == 0.0) {
    return;
  }
  double c2 = std::cos(2.0 * phi);
  double s2 = std::sin(2.0 * phi);

  struct Update {
    Key key;
    double value;
  };
  std::vector<Update> updates;
  updates.reserve(op.size());

  for (const auto& [key, h] : op.entries()) {
    if (!detail::anticommutes_u64(key.p, key.q, r, s)) {
      continue;
    }
    Key partner{key.p ^ r, key.q ^ s};
    double hb = op.coefficient(partner);
    if (hb != 0.0 && partner < key) {
      continue;  // pair handled when the partner was visited
    }
    int sigma = detail::rotation_sign_u64(r, s, key.p, key.q);
    updates.push_back({key, c2 * h + sigma * s2 * hb});
    updates.push_back({partner, c2 * hb - sigma * s2 * h});
  }
  for (const Update& u : updates) {
    op.set(u.key, u.value);
  }
}

std::optional<Candidate> select_candidate(const SparseGammaOperator& op,
                                          bool weighted_buckets) {
  auto rows = offdiagonal_rows_by_norm(op);
  if (rows.empty()) {
    return std::nullopt;
  }
  std::uint64_t r = rows.front().p;
  return Candidate{r, pick_s_for_row(op, r, weighted_buckets)};
}

DiagonalizeOutcome diagonalize(SparseGammaOperator& op,
                               const DiagonalizeConfig& config,
                               const StepObserver& observer) {
  if (op.empty()) {
    throw std::invalid_argument("diagonalize: zero operator");
  }
  if (!(config.stop_epsilon > 0.0) || !(config.stop_epsilon < 1.0)) {
    throw std::invalid_argument("diagonalize: stop_epsilon must be in (0,1)");
  }
  if (config.delete_chi < 0.0) {
    throw std::invalid_argument("diagonalize: delete_chi must be >= 0");
  }
  if (config.max_rotations < 1) {
    throw std::invalid_argument("diagonalize: max_rotations must be >= 1");
  }
  if (config.gain_tolerance < 0.0) {
    throw std::invalid_argument("diagonalize: gain_tolerance must be >= 0");
  }
  if (config.candidate_retry_limit < 0) {
    throw std::invalid_argument(
        "diagonalize: candidate_retry_limit must be >= 0");
  }

  DiagonalizeOutcome outcome;
  double pruned_cum = 0.0;

  for (;;) {
    double eps = op.empty() ? 0.0 : op.epsilon();
    if (eps <= config.stop_epsilon) {
      outcome.status = DiagonalizeStatus::converged;
      return outcome;
    }
    if (outcome.history.size() >= config.max_rotations) {
      outcome.status = DiagonalizeStatus::budget_exhausted;
      return outcome;
    }

    auto rows = offdiagonal_rows_by_norm(op);
    bool accepted = false;
    std::uint64_t r = 0;
    std::uint64_t s = 0;
    XYStats stats;
    std::size_t tries =
        std::min(rows.size(),
                 static_cast<std::size_t>(config.candidate_retry_limit) + 1);
    for (std::size_t t = 0; t < tries; ++t) {
      r = rows[t].p;
      s = pick_s_for_row(op, r, config.weighted_buckets);
      stats = xy_for_candidate(op, r, s);
      double gain = 0.5 * (std::hypot(stats.x, stats.y) - stats.x);
      if (gain > config.gain_tolerance) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // The one-s-per-row heuristic found nothing; score the bucket pool of
      // each retry row exactly and take the best rotation anywhere in it.
      double best_gain = config.gain_tolerance;
      for (std::size_t t = 0; t < tries; ++t) {
        for (std::uint64_t cand : fallback_s_candidates(op, rows[t].p)) {
          XYStats st = xy_for_candidate(op, rows[t].p, cand);
          double gain = 0.5 * (std::hypot(st.x, st.y) - st.x);
          if (gain > best_gain) {
            best_gain = gain;
            r = rows[t].p;
            s = cand;
            stats = st;
            accepted = true;
          }
        }
      }
    }
    if (!accepted) {
      outcome.status = DiagonalizeStatus::stalled;
      return outcome;
    }

    double phi = optimal_angle(stats.x, stats.y);
    apply_rotation(op, r, s, phi);
    PruneReport report = op.prune(config.delete_chi);
    pruned_cum += report.removed_sq_norm;

    RotationStep step;
    step.iteration = outcome.history.size() + 1;
    step.r = r;
    step.s = s;
    step.phi = phi;
    step.epsilon_after = op.empty() ? 0.0 : op.epsilon();
    step.elements_after = op.size();
    step.pruned_sq_norm_cum = pruned_cum;
    outcome.history.push_back(step);
    if (observer) {
      observer(step, op);
    }
  }
}

}  // namespace gammalg
