// Copyright 2026 The Fairshare Authors
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

#include "fairshare/chores.hpp"

#include <algorithm>
#include <random>

#include "fairshare/shares.hpp"

namespace fairshare {

bool PickingSequence::satisfies_spreading(
    const std::vector<Rat>& responsibilities) const {
  const int m = rounds();
  const int n = static_cast<int>(responsibilities.size());
  for (int i = 0; i < n; ++i) {
    if (responsibilities[i] >= 1) continue;
    // Largest k with b_i <= 1/k.
    const long k = to_long(rat_floor(1 / responsibilities[i]));
    int picks = 0;
    for (int r = 0; r < m; ++r) {
      if (pi[r] != i) continue;
      ++picks;
      // The t-th pick may come no earlier than round (t-1)*k + 1.
      if ((picks - 1) * k > r) return false;
    }
  }
  return true;
}

PickingSequence build_picking_sequence(
    const std::vector<Rat>& responsibilities, int m, DebtSelectionRule rule) {
  const int n = static_cast<int>(responsibilities.size());
  Rat sum = 0;
  for (const Rat& b : responsibilities) {
    if (b <= 0) throw std::invalid_argument("responsibility must be positive");
    sum += b;
  }
  if (sum != 1) {
    throw std::invalid_argument("responsibilities must sum to 1");
  }

  PickingSequence seq;
  std::vector<Rat> debt(responsibilities);
  for (int r = 0; r < m; ++r) {
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (debt[i] <= 0) continue;
      if (pick == -1) {
        pick = i;
      } else if (rule == DebtSelectionRule::MaxDebt && debt[i] > debt[pick]) {
        pick = i;
      }
    }
    if (pick == -1) {
      throw std::logic_error("picking sequence: no agent with positive debt");
    }
    seq.pi.push_back(pick);
    for (int i = 0; i < n; ++i) debt[i] += responsibilities[i];
    debt[pick] -= 1;
    for (int i = 0; i < n; ++i) {
      if (debt[i] <= -1) {
        throw std::logic_error("picking sequence: debt fell to -1");
      }
    }
  }
  if (!seq.satisfies_spreading(responsibilities)) {
    throw std::logic_error("picking sequence: spreading property violated");
  }
  return seq;
}

namespace {

// The picker takes her cheapest remaining chore, lowest item id on ties.
int cheapest_remaining(const AdditiveValuation& c,
                       const std::vector<bool>& taken) {
  int best = -1;
  for (int j = 0; j < c.size(); ++j) {
    if (taken[j]) continue;
    if (best == -1 || c.item_values[j] < c.item_values[best]) best = j;
  }
  return best;
}

Allocation run_reverse_sequence(const Instance& inst,
                                const std::vector<int>& pi) {
  const int m = inst.item_count;
  Allocation alloc;
  alloc.bundles.assign(inst.agent_count(), {});
  std::vector<bool> taken(m, false);
  for (int r = m; r >= 1; --r) {
    const int agent = pi[r - 1];
    const int item = cheapest_remaining(inst.valuation(agent), taken);
    taken[item] = true;
    alloc.bundles[agent].push_back(item);
  }
  alloc.validate(m);
  return alloc;
}

}  // namespace

Allocation assign_rrr(const Instance& inst, DebtSelectionRule rule) {
  if (inst.kind != Kind::Chores) {
    throw std::invalid_argument("assign_rrr expects a chores instance");
  }
  std::vector<Rat> responsibilities;
  for (const Agent& a : inst.agents) responsibilities.push_back(a.entitlement);
  PickingSequence seq =
      build_picking_sequence(responsibilities, inst.item_count, rule);
  return run_reverse_sequence(inst, seq.pi);
}

CouponMatching build_coupon_matching(const std::vector<Rat>& responsibilities,
                                     int m) {
  const int n = static_cast<int>(responsibilities.size());
  Rat sum = 0;
  for (const Rat& b : responsibilities) sum += b;
  if (sum != 1) {
    throw std::invalid_argument("responsibilities must sum to 1");
  }

  CouponMatching cm;
  cm.main_coupons = m;
  Rat t_frac = 0;
  std::vector<Rat> aux_share(n);
  std::vector<Int> subagents(n);
  for (int i = 0; i < n; ++i) {
    Rat bm = responsibilities[i] * m;
    subagents[i] = rat_ceil(bm);
    aux_share[i] = Rat(subagents[i]) - bm;
    t_frac += aux_share[i];
  }
  if (t_frac.get_den() != 1) {
    throw std::logic_error("auxiliary coupon count is not an integer");
  }
  cm.aux_coupons = static_cast<int>(to_long(t_frac.get_num()));
  const int cols = m + cm.aux_coupons;

  for (int i = 0; i < n; ++i) {
    // Agent i's per-coupon fractions, poured consecutively into subagents
    // holding total 1 each; a coupon may straddle two subagents.
    std::vector<Rat> frac(cols, Rat(0));
    for (int r = 0; r < m; ++r) frac[r] = responsibilities[i];
    for (int r = m; r < cols; ++r) {
      frac[r] = cm.aux_coupons > 0 ? aux_share[i] / cm.aux_coupons : Rat(0);
    }
    const long rows = to_long(subagents[i]);
    std::vector<std::vector<Rat>> sub(rows, std::vector<Rat>(cols, Rat(0)));
    long row = 0;
    Rat filled = 0;
    for (int r = 0; r < cols; ++r) {
      Rat remaining = frac[r];
      while (remaining > 0) {
        Rat room = 1 - filled;
        Rat put = std::min(room, remaining);
        sub[row][r] += put;
        filled += put;
        remaining -= put;
        if (filled == 1) {
          ++row;
          filled = 0;
        }
      }
    }
    for (long s = 0; s < rows; ++s) {
      cm.subagent_owner.push_back(i);
      cm.fractions.push_back(std::move(sub[s]));
    }
  }

  // Doubly stochastic by construction; verify.
  const int rows = static_cast<int>(cm.fractions.size());
  if (rows != cols) throw std::logic_error("coupon matrix is not square");
  for (int r = 0; r < rows; ++r) {
    Rat row_sum = 0;
    for (const Rat& x : cm.fractions[r]) row_sum += x;
    if (row_sum != 1) throw std::logic_error("subagent row does not sum to 1");
  }
  for (int c = 0; c < cols; ++c) {
    Rat col_sum = 0;
    for (int r = 0; r < rows; ++r) col_sum += cm.fractions[r][c];
    if (col_sum != 1) throw std::logic_error("coupon column does not sum to 1");
  }
  return cm;
}

namespace {

// Kuhn's augmenting-path matching on the positive-fraction graph.
struct Matcher {
  const std::vector<std::vector<Rat>>* fractions;
  int n;
  std::vector<int> match_of_col;
  std::vector<bool> visited;

  bool try_row(int row) {
    for (int c = 0; c < n; ++c) {
      if ((*fractions)[row][c] <= 0 || visited[c]) continue;
      visited[c] = true;
      if (match_of_col[c] == -1 || try_row(match_of_col[c])) {
        match_of_col[c] = row;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

std::vector<WeightedMatching> bvn_decompose(const CouponMatching& matching) {
  const int n = static_cast<int>(matching.fractions.size());
  std::vector<std::vector<Rat>> residual = matching.fractions;
  std::vector<WeightedMatching> result;
  Rat total_weight = 0;
  while (total_weight < 1) {
    Matcher matcher;
    matcher.fractions = &residual;
    matcher.n = n;
    matcher.match_of_col.assign(n, -1);
    for (int r = 0; r < n; ++r) {
      matcher.visited.assign(n, false);
      if (!matcher.try_row(r)) {
        throw std::logic_error("bvn: no perfect matching (Hall violated)");
      }
    }
    WeightedMatching wm;
    wm.coupon_of_row.assign(n, -1);
    for (int c = 0; c < n; ++c) wm.coupon_of_row[matcher.match_of_col[c]] = c;
    Rat w = 0;
    for (int r = 0; r < n; ++r) {
      const Rat& f = residual[r][wm.coupon_of_row[r]];
      if (w == 0 || f < w) w = f;
    }
    wm.weight = w;
    for (int r = 0; r < n; ++r) residual[r][wm.coupon_of_row[r]] -= w;
    total_weight += w;
    result.push_back(std::move(wm));
  }
  for (const auto& row : residual) {
    for (const Rat& x : row) {
      if (x != 0) throw std::logic_error("bvn: nonzero residual after peel");
    }
  }
  return result;
}

const RandomizedAssignment::Outcome& RandomizedAssignment::sample(
    std::uint64_t seed) const {
  std::mt19937_64 gen(seed);
  const std::uint64_t draw = gen();
  // Exact uniform rational in [0,1): draw / 2^64.
  Rat u(Int(draw), Int(1) << 64);
  u.canonicalize();
  Rat cumulative = 0;
  for (const Outcome& o : outcomes) {
    cumulative += o.weight;
    if (u < cumulative) return o;
  }
  return outcomes.back();
}

RandomizedAssignment assign_bobw(const Instance& inst) {
  if (inst.kind != Kind::Chores) {
    throw std::invalid_argument("assign_bobw expects a chores instance");
  }
  const int m = inst.item_count;
  const int n = inst.agent_count();
  std::vector<Rat> responsibilities;
  for (const Agent& a : inst.agents) responsibilities.push_back(a.entitlement);

  CouponMatching cm = build_coupon_matching(responsibilities, m);
  std::vector<WeightedMatching> matchings = bvn_decompose(cm);

  RandomizedAssignment ra;
  ra.coupon_marginals.assign(m, std::vector<Rat>(n, Rat(0)));
  for (const WeightedMatching& wm : matchings) {
    // Coupon r (1-based) is spent in the round when r chores remain.
    std::vector<int> holder(m + 1, -1);
    for (int row = 0; row < static_cast<int>(wm.coupon_of_row.size()); ++row) {
      const int coupon = wm.coupon_of_row[row];
      if (coupon < m) {  // auxiliary coupons are discarded
        holder[coupon + 1] = cm.subagent_owner[row];
        ra.coupon_marginals[coupon][cm.subagent_owner[row]] += wm.weight;
      }
    }
    RandomizedAssignment::Outcome outcome;
    outcome.weight = wm.weight;
    outcome.allocation = run_reverse_sequence(
        inst, std::vector<int>(holder.begin() + 1, holder.end()));
    ra.outcomes.push_back(std::move(outcome));
  }
  return ra;
}

}  // namespace fairshare
