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

#include "fairshare/goods_exante.hpp"

#include <algorithm>
#include <cmath>

namespace fairshare {

RandomizedAssignment exante_grand_bundle_lottery(const Instance& inst,
                                                 int sylvester_terms) {
  if (inst.kind != Kind::Goods) {
    throw std::invalid_argument("lottery expects a goods instance");
  }
  const int n = inst.agent_count();
  if (n > sylvester_terms) {
    throw ResourceCapError(
        "grand-bundle lottery: agent count exceeds the Sylvester term cap");
  }
  SylvesterTables tables = sylvester(sylvester_terms);
  const Rat gamma_tilde = tables.gamma_lower;

  Rat hat_sum = 0;
  std::vector<Rat> probs(n);
  for (int i = 0; i < n; ++i) {
    probs[i] = unit_upper_bound(inst.entitlement(i)) / gamma_tilde;
    hat_sum += unit_upper_bound(inst.entitlement(i));
  }
  if (n >= 2 && hat_sum > tables.s[n - 1]) {
    throw std::logic_error("lottery: hat sum exceeds s_n");
  }
  Rat prob_sum = hat_sum / gamma_tilde;
  if (prob_sum > 1) {
    throw std::logic_error("lottery: probabilities exceed 1");
  }
  probs[0] += 1 - prob_sum;  // residual padding

  RandomizedAssignment ra;
  for (int i = 0; i < n; ++i) {
    if (probs[i] == 0) continue;
    RandomizedAssignment::Outcome o;
    o.weight = probs[i];
    o.allocation.bundles.assign(n, {});
    for (int j = 0; j < inst.item_count; ++j) {
      o.allocation.bundles[i].push_back(j);
    }
    ra.outcomes.push_back(std::move(o));
  }
  return ra;
}

ExanteTightness verify_exante_tightness(int n, const Rat& eps) {
  if (n < 2 || n > 5) {
    throw std::invalid_argument("verify_exante_tightness: need 2 <= n <= 5");
  }
  SylvesterTables tables = sylvester(n + 1);
  // a_{n+1} = q_{n+1} - 1 = product of the first n Sylvester terms.
  const Int a_next = tables.a[n];

  ExanteTightness out;
  Rat b_sum = 0;
  out.hat_sum = 0;
  for (int i = 0; i < n; ++i) {
    Rat b = Rat(1, tables.q[i]) + Rat(1, n * a_next);
    b.canonicalize();
    out.entitlements.push_back(b);
    b_sum += b;
    out.hat_sum += unit_upper_bound(b);
  }
  if (b_sum != 1) {
    throw std::logic_error("tight entitlements do not sum to 1");
  }
  const Rat s_n = tables.s[n - 1];
  if (out.hat_sum != s_n) {
    throw std::logic_error("tight instance: hat sum != s_n");
  }
  // With identical valuations scaled to v(M) = 1, each ps_hat is hat(b_i),
  // so the demanded expectations total (1/s_n + eps) * s_n.
  out.demanded = (Rat(1) / s_n + eps) * out.hat_sum;
  out.infeasible = out.demanded > 1;
  return out;
}

BobwGoodsFixture bobw_goods_impossibility_fixture(int n, int m) {
  if (n < 2 || m < 1) {
    throw std::invalid_argument("fixture requires n >= 2, m >= 1");
  }
  const int real_items = std::min(m, n - 1);

  BobwGoodsFixture fx;
  fx.instance.kind = Kind::Goods;
  fx.instance.item_count = m;

  // K agents sit strictly inside (1/(real+1), 1/real); the rest split
  // what is left, each at most 1/(real+1).
  Rat high = Rat(2 * real_items + 1, 2 * real_items * (real_items + 1));
  high.canonicalize();
  Rat rest_total = 1 - high * real_items;
  const int low_agents = n - real_items;
  Rat low = rest_total / low_agents;
  for (int i = 0; i < n; ++i) {
    Agent a;
    a.name = "agent" + std::to_string(i);
    a.entitlement = i < real_items ? high : low;
    for (int j = 0; j < m; ++j) {
      a.valuation.item_values.push_back(j < real_items ? Rat(1) : Rat(0));
    }
    fx.instance.agents.push_back(std::move(a));
    if (i < real_items) fx.high_entitlement_agents.push_back(i);
  }
  fx.instance.validate();

  // Certificate by enumeration: every allocation that gives each K agent at
  // least one unit item must leave some other agent with zero value.
  double states = std::pow(static_cast<double>(n), static_cast<double>(m));
  if (states > 1e7) {
    throw ResourceCapError("bobw fixture: n^m exceeds enumeration cap");
  }
  fx.certified = true;
  std::vector<int> owner(m, 0);
  while (true) {
    std::vector<Rat> value(n, Rat(0));
    for (int j = 0; j < m; ++j) {
      value[owner[j]] += fx.instance.valuation(owner[j]).item_values[j];
    }
    bool k_served = true;
    for (int i : fx.high_entitlement_agents) {
      if (value[i] < 1) { k_served = false; break; }
    }
    if (k_served) {
      bool someone_starved = false;
      for (int i = real_items; i < n; ++i) {
        if (value[i] == 0) { someone_starved = true; break; }
      }
      if (!someone_starved) { fx.certified = false; break; }
    }
    int j = 0;
    while (j < m && owner[j] == n - 1) owner[j++] = 0;
    if (j == m) break;
    ++owner[j];
  }
  return fx;
}

}  // namespace fairshare
