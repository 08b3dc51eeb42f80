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

#include "fairshare/personalized.hpp"

#include <algorithm>
#include <functional>

namespace fairshare {

PersonalizedContext make_personalized_context(Kind kind,
                                              const AdditiveValuation& anchor,
                                              const Rat& b, double cap) {
  const int m = anchor.size();
  if (m > 20) {
    throw ResourceCapError("personalized context: too many items");
  }
  PersonalizedContext ctx;
  ctx.kind = kind;
  ctx.anchor_valuation = anchor;
  ctx.anchor_entitlement = b;
  if (kind == Kind::Goods) {
    ctx.k = unit_upper_bound_k(b);
    MmsResult r = mms_partition(anchor, ctx.k, Kind::Goods, cap);
    ctx.equal_split_share = r.value;
    ctx.anchor_partition = r.partition;
    for (ItemMask s = 0; s < (ItemMask{1} << m); ++s) {
      if (anchor.value_of(s) >= ctx.equal_split_share) {
        ctx.acceptable_bundles.push_back(s);
      }
    }
  } else {
    ctx.k = unit_lower_bound_k(b);
    MmsResult r = mms_partition(anchor, ctx.k + 1, Kind::Chores, cap);
    ctx.equal_split_share = r.value;
    ctx.anchor_partition = r.partition;
    for (ItemMask s = 0; s < (ItemMask{1} << m); ++s) {
      if (anchor.value_of(s) <= ctx.equal_split_share) {
        ctx.acceptable_bundles.push_back(s);
      }
    }
  }
  return ctx;
}

int representative_count(const PersonalizedContext& ctx, const Rat& b_j) {
  if (b_j <= 0 || b_j > 1) {
    throw std::invalid_argument("representative_count: b_j outside (0,1]");
  }
  if (ctx.kind == Kind::Goods) {
    // f/(k+1) < b_j <= (f+1)/(k+1)  =>  f = ceil(b_j*(k+1)) - 1
    return static_cast<int>(to_long(rat_ceil(b_j * (ctx.k + 1)))) - 1;
  }
  // (f-1)/k <= b_j < f/k  =>  f = floor(b_j*k) + 1
  return static_cast<int>(to_long(rat_floor(b_j * ctx.k))) + 1;
}

Rat personalized_mms(const PersonalizedContext& ctx,
                     const AdditiveValuation& v_j, const Rat& b_j) {
  const int m = ctx.anchor_valuation.size();
  if (v_j.size() != m) {
    throw std::invalid_argument("personalized_mms: item count mismatch");
  }
  const int f = representative_count(ctx, b_j);
  if (f == 0) return 0;  // goods only; empty disjoint union

  const std::size_t full = std::size_t{1} << m;
  // reach[u] = true if bundle u is a disjoint union of `level` acceptable
  // bundles; DP over subsets.
  std::vector<char> reach(full, 0), next(full, 0);
  reach[0] = 1;
  for (int level = 0; level < f; ++level) {
    std::fill(next.begin(), next.end(), 0);
    for (ItemMask u = 0; u < full; ++u) {
      if (!reach[u]) continue;
      for (ItemMask s : ctx.acceptable_bundles) {
        if ((u & s) == 0) next[u | s] = 1;
      }
    }
    reach.swap(next);
  }

  bool found = false;
  Rat best = 0;
  for (ItemMask u = 0; u < full; ++u) {
    if (!reach[u]) continue;
    Rat val = v_j.value_of(u);
    if (!found) {
      best = val;
      found = true;
    } else if (ctx.kind == Kind::Goods ? val < best : val > best) {
      best = val;
    }
  }
  if (!found) {
    throw std::logic_error("personalized_mms: empty bundle family");
  }
  return best;
}

Rat personalized_ps(Kind kind, int k, const AdditiveValuation& v_j,
                    const Rat& b_j) {
  if (kind == Kind::Goods) {
    const Int f = rat_ceil(b_j * (k + 1)) - 1;
    Rat ratio(f, k);
    ratio.canonicalize();
    return ratio * v_j.total();
  }
  const Int f = rat_floor(b_j * k) + 1;
  Rat ratio(f, k + 1);
  ratio.canonicalize();
  return ratio * v_j.total();
}

std::vector<Rat> coupon_values(const AdditiveValuation& v) {
  std::vector<Rat> sorted = v.item_values;
  std::sort(sorted.begin(), sorted.end(), std::greater<Rat>());
  return sorted;
}

Rat coupon_set_value(const std::vector<Rat>& coupons,
                     const std::vector<int>& indices) {
  Rat sum = 0;
  for (int r : indices) {
    if (r < 1 || r > static_cast<int>(coupons.size())) {
      throw std::invalid_argument("coupon index out of range");
    }
    sum += coupons[r - 1];
  }
  return sum;
}

Allocation verify_personalized_feasibility(const PersonalizedContext& ctx,
                                           const Instance& inst) {
  if (inst.kind != ctx.kind) {
    throw std::invalid_argument("instance kind does not match context");
  }
  const int n = inst.agent_count();
  Allocation alloc;
  alloc.bundles.assign(n, {});

  std::vector<int> reps(n);
  for (int i = 0; i < n; ++i) {
    reps[i] = representative_count(ctx, inst.entitlement(i));
  }

  const auto& partition = ctx.anchor_partition;
  const int parts = static_cast<int>(partition.size());
  if (ctx.kind == Kind::Goods) {
    // sum reps <= k since entitlements sum to 1; hand out reps[i] distinct
    // partition bundles, leftovers to agent 0.
    int next = 0;
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < reps[i]; ++t) {
        if (next >= parts) {
          throw std::logic_error("personalized feasibility: ran out of bundles");
        }
        for (int j : partition[next++]) alloc.bundles[i].push_back(j);
      }
    }
    while (next < parts) {
      for (int j : partition[next++]) alloc.bundles[0].push_back(j);
    }
  } else {
    // sum reps >= k+1; hand out all k+1 bundles, at most reps[i] each.
    std::vector<int> given(n, 0);
    int agent = 0;
    for (int p = 0; p < parts; ++p) {
      while (agent < n && given[agent] >= reps[agent]) ++agent;
      if (agent == n) {
        throw std::logic_error("personalized feasibility: capacity exhausted");
      }
      for (int j : partition[p]) alloc.bundles[agent].push_back(j);
      ++given[agent];
    }
  }
  alloc.validate(inst.item_count);

  for (int i = 0; i < n; ++i) {
    const Rat got = inst.valuation(i).value_of(alloc.bundles[i]);
    const Rat share =
        personalized_mms(ctx, inst.valuation(i), inst.entitlement(i));
    const bool ok =
        ctx.kind == Kind::Goods ? got >= share : got <= share;
    if (!ok) {
      throw std::logic_error("personalized feasibility violated for agent " +
                             std::to_string(i));
    }
  }
  return alloc;
}

}  // namespace fairshare
