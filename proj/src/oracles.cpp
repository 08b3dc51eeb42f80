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

#include "fairshare/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "fairshare/bidding.hpp"
#include "fairshare/chores.hpp"
#include "fairshare/goods_exante.hpp"
#include "fairshare/shares.hpp"

namespace fairshare {

void enumerate_allocations(
    int agents, int items,
    const std::function<bool(const std::vector<int>&)>& visit, double cap) {
  if (std::pow(static_cast<double>(agents), static_cast<double>(items)) >
      cap) {
    throw ResourceCapError("enumerate_allocations: n^m exceeds cap");
  }
  std::vector<int> owner(items, 0);
  while (true) {
    if (!visit(owner)) return;
    int j = 0;
    while (j < items && owner[j] == agents - 1) owner[j++] = 0;
    if (j == items) return;
    ++owner[j];
  }
}

namespace {

struct FeasibilitySearch {
  const Instance* inst;
  const std::vector<Rat>* shares;
  std::vector<Rat> bundle_value;
  std::vector<Rat> remaining_suffix;  // per agent: value of items j.. under v_i
  std::vector<int> owner;
  bool found = false;

  bool dfs(int j) {
    const int n = inst->agent_count();
    const int m = inst->item_count;
    if (j == m) {
      for (int i = 0; i < n; ++i) {
        const bool ok = inst->kind == Kind::Goods
                            ? bundle_value[i] >= (*shares)[i]
                            : bundle_value[i] <= (*shares)[i];
        if (!ok) return false;
      }
      return true;
    }
    for (int i = 0; i < n; ++i) {
      const Rat& value = inst->valuation(i).item_values[j];
      if (inst->kind == Kind::Chores &&
          bundle_value[i] + value > (*shares)[i]) {
        continue;
      }
      bundle_value[i] += value;
      owner[j] = i;
      bool prune = false;
      if (inst->kind == Kind::Goods) {
        // An agent who cannot reach her share even with every later item
        // makes this branch hopeless.
        for (int a = 0; a < n && !prune; ++a) {
          Rat rest = bundle_value[a];
          for (int jj = j + 1; jj < m; ++jj) {
            rest += inst->valuation(a).item_values[jj];
          }
          if (rest < (*shares)[a]) prune = true;
        }
      }
      if (!prune && dfs(j + 1)) return true;
      bundle_value[i] -= value;
    }
    return false;
  }
};

}  // namespace

FeasibilityResult check_feasibility(const Instance& inst,
                                    const std::vector<Rat>& shares,
                                    double cap) {
  const int n = inst.agent_count();
  if (static_cast<int>(shares.size()) != n) {
    throw std::invalid_argument("check_feasibility: one share per agent");
  }
  if (std::pow(static_cast<double>(n),
               static_cast<double>(inst.item_count)) > cap) {
    throw ResourceCapError("check_feasibility: n^m exceeds cap");
  }
  FeasibilitySearch search;
  search.inst = &inst;
  search.shares = &shares;
  search.bundle_value.assign(n, Rat(0));
  search.owner.assign(inst.item_count, 0);

  FeasibilityResult result;
  result.feasible = search.dfs(0);
  if (result.feasible) {
    Allocation alloc;
    alloc.bundles.assign(n, {});
    for (int j = 0; j < inst.item_count; ++j) {
      alloc.bundles[search.owner[j]].push_back(j);
    }
    alloc.validate(inst.item_count);
    result.witness = std::move(alloc);
  }
  return result;
}

namespace {

Instance make_instance(Kind kind, const std::vector<Rat>& entitlements,
                       const std::vector<std::vector<Rat>>& valuations) {
  Instance inst;
  inst.kind = kind;
  inst.item_count = static_cast<int>(valuations.at(0).size());
  for (std::size_t i = 0; i < entitlements.size(); ++i) {
    Agent a;
    a.name = "agent" + std::to_string(i);
    a.entitlement = entitlements[i];
    a.valuation.item_values = valuations[i % valuations.size()];
    inst.agents.push_back(std::move(a));
  }
  inst.validate();
  return inst;
}

Instance identical_instance(Kind kind, const std::vector<Rat>& entitlements,
                            const std::vector<Rat>& values) {
  std::vector<std::vector<Rat>> vals(entitlements.size(), values);
  return make_instance(kind, entitlements, vals);
}

// m = 2n-2 identical unit items; one agent just below 1/n, the rest just
// above it. Scaled rounded shares are infeasible beyond the factor 1/2.
Instance goods_tightness_instance(int n) {
  const int m = 2 * n - 2;
  // b_n strictly inside (1/(n+1), 1/n); others split the rest evenly,
  // strictly inside (1/n, 1/(n-1)).
  Rat small = (make_rat(1, n + 1) + make_rat(1, n)) / 2;
  Rat big = (1 - small) / (n - 1);
  if (!(small > make_rat(1, n + 1) && small < make_rat(1, n))) {
    throw std::logic_error("tightness fixture: small entitlement off range");
  }
  if (!(big > make_rat(1, n) && big < make_rat(1, n - 1))) {
    throw std::logic_error("tightness fixture: big entitlement off range");
  }
  std::vector<Rat> entitlements(n - 1, big);
  entitlements.push_back(small);
  return identical_instance(Kind::Goods, entitlements,
                            std::vector<Rat>(m, Rat(1)));
}

bool certify_goods_tightness(int n) {
  Instance inst = goods_tightness_instance(n);
  const Rat rho = make_rat(1, 2) + make_rat(1, 10);
  std::vector<Rat> shares;
  for (const Agent& a : inst.agents) {
    shares.push_back(rho * mms_hat(a.valuation, a.entitlement));
  }
  return !check_feasibility(inst, shares).feasible;
}

bool certify_chores_2domination() {
  // t = 3: six unit chores, responsibilities (5/6, 1/6); every assignment
  // puts some agent at (2 - 1/3) times her rounded share or worse.
  Instance inst = identical_instance(
      Kind::Chores, {make_rat(5, 6), make_rat(1, 6)},
      std::vector<Rat>(6, Rat(1)));
  const Rat eps = make_rat(1, 3);
  std::vector<Rat> bars;
  for (const Agent& a : inst.agents) {
    bars.push_back(mms_bar(a.valuation, a.entitlement));
  }
  if (bars[0] != 3 || bars[1] != 1) return false;
  bool ok = true;
  enumerate_allocations(2, 6, [&](const std::vector<int>& owner) {
    Rat c0 = 0, c1 = 0;
    for (int j = 0; j < 6; ++j) (owner[j] == 0 ? c0 : c1) += 1;
    if (c0 < (2 - eps) * bars[0] && c1 < (2 - eps) * bars[1]) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

bool certify_chores_three_half() {
  // n = 4, eight unit chores: responsibilities (7/24, 7/24, 7/24, 1/8).
  std::vector<Rat> ent(3, make_rat(7, 24));
  ent.push_back(make_rat(1, 8));
  Instance inst =
      identical_instance(Kind::Chores, ent, std::vector<Rat>(8, Rat(1)));
  std::vector<Rat> bars;
  for (const Agent& a : inst.agents) {
    bars.push_back(mms_bar(a.valuation, a.entitlement));
  }
  if (bars[0] != 2 || bars[3] != 1) return false;
  bool ok = true;
  enumerate_allocations(4, 8, [&](const std::vector<int>& owner) {
    std::vector<Rat> cost(4, Rat(0));
    for (int j = 0; j < 8; ++j) cost[owner[j]] += 1;
    bool violated = false;
    for (int i = 0; i < 4; ++i) {
      if (cost[i] * 2 >= 3 * bars[i]) violated = true;
    }
    if (!violated) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

bool certify_chores_bobw_lb() {
  // Four unit chores; the pivotal agent holds responsibility strictly
  // between 1/4 and 1/3, so her expected load under any PS-respecting
  // distribution exceeds one chore, forcing an outcome at 2x her rounded
  // share. Our own randomizer must exhibit such an outcome.
  const Rat b0 = make_rat(7, 24);
  Instance inst = identical_instance(
      Kind::Chores, {b0, 1 - b0}, std::vector<Rat>(4, Rat(1)));
  const Rat bar0 = mms_bar(inst.valuation(0), b0);
  if (bar0 != 1) return false;
  if (!(b0 * 4 > 1)) return false;
  // Proportional shares exhaust the total cost, so any distribution capped
  // by PS ex-ante meets it with equality.
  Rat ps_total = 0;
  for (const Agent& a : inst.agents) {
    ps_total += proportional_share(a.valuation, a.entitlement);
  }
  if (ps_total != 4) return false;
  RandomizedAssignment ra = assign_bobw(inst);
  for (const auto& outcome : ra.outcomes) {
    if (outcome.weight > 0 &&
        inst.valuation(0).value_of(outcome.allocation.bundles[0]) >=
            2 * bar0) {
      return true;
    }
  }
  return false;
}

std::vector<Rat> nonmonotone_lemma_values() {
  std::vector<Rat> v(3, make_rat(1, 4));
  for (int i = 0; i < 10; ++i) v.push_back(make_rat(1, 40));
  return v;
}

bool certify_nonmonotone() {
  // Optimal (non-monotone) play strictly beats every monotone strategy on
  // a grid refined to the instance's natural 1/45 breakpoints.
  const std::vector<Rat> values = nonmonotone_lemma_values();
  AdditiveValuation v{values};
  const Rat b = make_rat(1, 3);
  BidSolver solver(v, 14);
  const Rat optimal = solver.guaranteed(1, b).value;
  const Rat monotone = best_monotone_grid_value(v, b, 45);
  // The non-monotone witness must also be realizable by an actual strategy.
  const Rat realized =
      exhaustive_adversary_value(v, b, optimal_strategy(v, b, 14), 14);
  return realized == optimal && optimal > monotone;
}

bool certify_nonmonotone_entitled() {
  // Extra 0.39 item, entitlement just above one half: the safe strategy
  // clears half the total value while every grid-monotone strategy stays
  // short of it.
  std::vector<Rat> values;
  values.push_back(make_rat(39, 100));
  for (const Rat& x : nonmonotone_lemma_values()) values.push_back(x);
  AdditiveValuation v{values};
  const Rat b = make_rat(1, 2) + make_rat(1, 100);
  const Rat half_total = v.total() / 2;  // 0.695
  const Rat safe =
      exhaustive_adversary_value(v, b, safe_strategy(v, b, 14), 14);
  const Rat monotone = best_monotone_grid_value(v, b, 40);
  return safe >= half_total && monotone < half_total;
}

bool certify_myopic_pair() {
  // Instance A: items (0.34, 0.33, 0.33); instance B: 0.34 plus 66 items
  // of 0.01. Entitlement 0.51 requires half the total, 0.5. No first-round
  // bid survives both instances:
  //   - bids p >= 53/200 lose A: even with optimal continuation the agent's
  //     post-win fraction (0.51-p)/(1-p) is at most the exact one-item
  //     threshold 1/3 of the two-item endgame, so she ends at 0.34;
  //   - bids p <= 31/100 lose B: the adversary takes the big item, then
  //     matches any bid up to tau = (0.49-p)/17 on 17 small items; the
  //     agent can win at most floor(0.51/tau) <= 48 items expensively and
  //     49 in total, ending at 0.49.
  // The two ranges overlap, so every myopic rule fails on one instance.
  const Rat big = make_rat(34, 100);
  const Rat med = make_rat(33, 100);
  const Rat b = make_rat(51, 100);

  AdditiveValuation tail2{{med, med}};
  BidSolver endgame(tail2, 4);
  // One-item guarantee in the two-item endgame needs fraction > 1/3.
  ThresholdVector tv = endgame.threshold_vector();
  if (tv.entries[1].threshold != make_rat(1, 3)) return false;

  const Rat a_cut = make_rat(53, 200);
  // (0.51 - p)/(1 - p) equals 1/3 exactly at p = 53/200 and decreases in p.
  if ((b - a_cut) / (1 - a_cut) != make_rat(1, 3)) return false;

  auto value_a = [&](const Rat& p) {
    Rat best = big + endgame.guaranteed(1, Rat((b - p) / (1 - p))).value;
    if (p <= 1 - b) {
      const Rat taken = endgame.guaranteed(1, Rat(b / (1 - p))).value;
      best = std::min(best, taken);
    }
    return best;
  };
  // Sampled sweep confirming the A side across its whole range.
  for (int i = 0; i <= 102; ++i) {
    Rat p = make_rat(i, 200);
    if (p > b) break;
    if (p >= a_cut && value_a(p) >= make_rat(1, 2)) return false;
  }

  // B side arithmetic at the overlap boundary p = 31/100.
  const Rat p_b = make_rat(31, 100);
  if (!(a_cut < p_b)) return false;  // ranges must overlap
  const Rat tau = (1 - b - p_b) / 17;
  if (!(tau * 17 <= 1 - b - p_b)) return false;  // adversary can afford 17
  const Int expensive_cap = rat_floor(b / tau);
  if (expensive_cap > 49) return false;  // 48: cannot buy 50 items above tau
  // Total wins <= max(expensive_cap, 66 - 17) = 49 < 50 needed for value 0.5.
  return true;
}

bool certify_lookahead() {
  // Values (14+e, 10-e, 8, 8, 8, 8, 8, 8)/72 with e = 1/24. The eighth
  // item is worth at least 1/12, so the flat-1/9 pre-check must fire; with
  // it the table strategy clears a quarter, without it the adversary wins.
  const Rat e = make_rat(1, 24);
  std::vector<Rat> values{(14 + e) / 72, (10 - e) / 72};
  for (int i = 0; i < 6; ++i) values.push_back(make_rat(8, 72));
  AdditiveValuation v{values};
  const Rat b = make_rat(1, 3) + e / 72;
  const Rat target = tps(v, make_rat(1, 2)) / 2;
  const Rat with_precheck =
      exhaustive_adversary_value(v, b, k2_table_strategy(v, b, true), 10);
  const Rat without_precheck =
      exhaustive_adversary_value(v, b, k2_table_strategy(v, b, false), 10);
  return with_precheck >= target && without_precheck < target;
}

TableValuation nonadditive_table(bool permuted) {
  // v({A,B}) = v({C,D}) = 1 (or {A,C},{B,D} in the permuted copy), 1 on any
  // bundle of three or more items, 0 elsewhere.
  TableValuation tv;
  tv.item_count = 4;
  tv.table.assign(16, Rat(0));
  const ItemMask pair1 = permuted ? 0b0101 : 0b0011;
  const ItemMask pair2 = permuted ? 0b1010 : 0b1100;
  for (ItemMask s = 0; s < 16; ++s) {
    const int size = __builtin_popcountll(s);
    if (s == pair1 || s == pair2 || size > 2) tv.table[s] = 1;
  }
  return tv;
}

bool certify_nonadditive_zero_share() {
  TableValuation v = nonadditive_table(false);
  TableValuation vp = nonadditive_table(true);
  // Both agents hold maximin value 1 at entitlement 1/2...
  Rat mms_v = 0, mms_vp = 0;
  for (ItemMask s = 0; s < 16; ++s) {
    const ItemMask comp = 0b1111 & ~s;
    Rat worst = std::min(v.value_of(s), v.value_of(comp));
    mms_v = std::max(mms_v, worst);
    worst = std::min(vp.value_of(s), vp.value_of(comp));
    mms_vp = std::max(mms_vp, worst);
  }
  if (mms_v != 1 || mms_vp != 1) return false;
  // ...yet no split gives both of them positive value.
  for (ItemMask s = 0; s < 16; ++s) {
    const ItemMask comp = 0b1111 & ~s;
    if (v.value_of(s) > 0 && vp.value_of(comp) > 0) return false;
  }
  return true;
}

bool certify_sylvester_tight_n3() {
  ExanteTightness cert = verify_exante_tightness(3);
  if (cert.hat_sum != make_rat(5, 3)) return false;
  if (!cert.infeasible) return false;
  Instance inst =
      identical_instance(Kind::Goods, cert.entitlements, {Rat(1)});
  RandomizedAssignment lottery = exante_grand_bundle_lottery(inst);
  Rat total = 0;
  for (const auto& o : lottery.outcomes) total += o.weight;
  return total == 1;
}

}  // namespace

Fixture fixture(const std::string& name) {
  Fixture fx;
  fx.name = name;
  if (name == "goods-tightness-lb-n3" || name == "goods-tightness-lb-n4") {
    const int n = name.back() == '3' ? 3 : 4;
    fx.summary = "identical unit goods; 0.6x rounded maximin is infeasible";
    fx.instance = goods_tightness_instance(n);
    fx.certify = [n] { return certify_goods_tightness(n); };
  } else if (name == "chores-2domination-lb") {
    fx.summary = "six unit chores, (5/6,1/6): factor 2-1/3 is forced";
    fx.instance = identical_instance(Kind::Chores,
                                     {make_rat(5, 6), make_rat(1, 6)},
                                     std::vector<Rat>(6, Rat(1)));
    fx.certify = certify_chores_2domination;
  } else if (name == "chores-3half-lb") {
    fx.summary = "eight unit chores, four agents: factor 3/2 is forced";
    std::vector<Rat> ent(3, make_rat(7, 24));
    ent.push_back(make_rat(1, 8));
    fx.instance =
        identical_instance(Kind::Chores, ent, std::vector<Rat>(8, Rat(1)));
    fx.certify = certify_chores_three_half;
  } else if (name == "chores-bobw-lb") {
    fx.summary = "four unit chores: PS-capped lotteries hit 2x rounded share";
    const Rat b0 = make_rat(7, 24);
    fx.instance = identical_instance(Kind::Chores, {b0, 1 - b0},
                                     std::vector<Rat>(4, Rat(1)));
    fx.certify = certify_chores_bobw_lb;
  } else if (name == "nonmonotone") {
    fx.summary = "three quarter items plus fillers: monotone bids lose";
    fx.instance = identical_instance(
        Kind::Goods, {make_rat(1, 3), make_rat(2, 3)},
        nonmonotone_lemma_values());
    fx.certify = certify_nonmonotone;
  } else if (name == "nonmonotone-entitled") {
    fx.summary = "0.39 item added, entitlement 0.51: monotone misses half";
    std::vector<Rat> values{make_rat(39, 100)};
    for (const Rat& x : nonmonotone_lemma_values()) values.push_back(x);
    fx.instance = identical_instance(
        Kind::Goods,
        {make_rat(1, 2) + make_rat(1, 100), make_rat(1, 2) - make_rat(1, 100)},
        values);
    fx.certify = certify_nonmonotone_entitled;
  } else if (name == "myopic-pair") {
    fx.summary = "0.34 with two 0.33s vs 66 pennies: no myopic bid fits both";
    std::vector<Rat> a_values{make_rat(34, 100), make_rat(33, 100),
                              make_rat(33, 100)};
    fx.instance = identical_instance(
        Kind::Goods, {make_rat(51, 100), make_rat(49, 100)}, a_values);
    fx.certify = certify_myopic_pair;
  } else if (name == "lookahead") {
    fx.summary = "large eighth item: the flat 1/9 pre-check is necessary";
    const Rat e = make_rat(1, 24);
    std::vector<Rat> values{(14 + e) / 72, (10 - e) / 72};
    for (int i = 0; i < 6; ++i) values.push_back(make_rat(8, 72));
    const Rat b = make_rat(1, 3) + e / 72;
    fx.instance = identical_instance(Kind::Goods, {b, 1 - b}, values);
    fx.certify = certify_lookahead;
  } else if (name == "nonadditive-zero-share") {
    fx.summary = "paired 4-item table valuations force the zero share";
    fx.table_pair = {nonadditive_table(false), nonadditive_table(true)};
    fx.certify = certify_nonadditive_zero_share;
  } else if (name == "sylvester-tight-n3") {
    fx.summary = "tight entitlements: hat sum reaches s_3 = 5/3";
    ExanteTightness cert = verify_exante_tightness(3);
    fx.instance =
        identical_instance(Kind::Goods, cert.entitlements, {Rat(1)});
    fx.certify = certify_sylvester_tight_n3;
  } else {
    throw std::invalid_argument("unknown fixture '" + name + "'");
  }
  return fx;
}

std::vector<std::string> fixture_names() {
  return {"goods-tightness-lb-n3", "goods-tightness-lb-n4",
          "chores-2domination-lb", "chores-3half-lb",
          "chores-bobw-lb",        "nonmonotone",
          "nonmonotone-entitled",  "myopic-pair",
          "lookahead",             "nonadditive-zero-share",
          "sylvester-tight-n3"};
}

}  // namespace fairshare
