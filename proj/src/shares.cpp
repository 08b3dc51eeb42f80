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

#include "fairshare/shares.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fairshare {

const char* share_kind_name(ShareKind k) {
  switch (k) {
    case ShareKind::PS: return "ps";
    case ShareKind::MMS: return "mms";
    case ShareKind::TPS: return "tps";
    case ShareKind::MES: return "mes";
    case ShareKind::RRR: return "rrr";
    case ShareKind::MMS_HAT: return "mms-hat";
    case ShareKind::PS_HAT: return "ps-hat";
    case ShareKind::TPS_HAT: return "tps-hat";
    case ShareKind::MMS_BAR: return "mms-bar";
    case ShareKind::PS_BAR: return "ps-bar";
    case ShareKind::PERSONALIZED: return "personalized";
  }
  return "?";
}

std::optional<ShareKind> share_kind_from_name(const std::string& name) {
  for (ShareKind k :
       {ShareKind::PS, ShareKind::MMS, ShareKind::TPS, ShareKind::MES,
        ShareKind::RRR, ShareKind::MMS_HAT, ShareKind::PS_HAT,
        ShareKind::TPS_HAT, ShareKind::MMS_BAR, ShareKind::PS_BAR,
        ShareKind::PERSONALIZED}) {
    if (name == share_kind_name(k)) return k;
  }
  return std::nullopt;
}

Rat proportional_share(const AdditiveValuation& v, const Rat& b) {
  return b * v.total();
}

namespace {

struct MmsSearch {
  const std::vector<Rat>* values;  // sorted non-increasing
  const std::vector<Rat>* suffix;  // suffix[i] = sum of values[i..]
  int k;
  Kind kind;
  std::vector<Rat> bundle_totals;
  std::vector<int> assignment;
  Rat best;
  std::vector<int> best_assignment;
  bool have_best = false;

  // Goods: maximize the minimum bundle value.
  void search_goods(int i) {
    const int m = static_cast<int>(values->size());
    if (i == m) {
      Rat mn = bundle_totals[0];
      for (const Rat& t : bundle_totals) mn = std::min(mn, t);
      if (!have_best || mn > best) {
        best = mn;
        best_assignment = assignment;
        have_best = true;
      }
      return;
    }
    // A bundle that cannot reach `best` even with all remaining value caps
    // the achievable minimum; prune.
    if (have_best) {
      for (const Rat& t : bundle_totals) {
        if (t + (*suffix)[i] <= best) return;
      }
    }
    int opened = 0;
    while (opened < k && bundle_totals[opened] != 0) ++opened;
    const int limit = std::min(k - 1, opened);  // at most one empty bundle
    for (int b = 0; b <= limit; ++b) {
      // Equal-total bundles are interchangeable; keep the first only.
      bool dup = false;
      for (int b2 = 0; b2 < b; ++b2) {
        if (bundle_totals[b2] == bundle_totals[b]) { dup = true; break; }
      }
      if (dup) continue;
      bundle_totals[b] += (*values)[i];
      assignment[i] = b;
      search_goods(i + 1);
      bundle_totals[b] -= (*values)[i];
    }
  }

  // Chores: minimize the maximum bundle cost.
  void search_chores(int i) {
    const int m = static_cast<int>(values->size());
    if (have_best) {
      Rat mx = 0;
      for (const Rat& t : bundle_totals) mx = std::max(mx, t);
      if (mx >= best) return;
    }
    if (i == m) {
      Rat mx = 0;
      for (const Rat& t : bundle_totals) mx = std::max(mx, t);
      if (!have_best || mx < best) {
        best = mx;
        best_assignment = assignment;
        have_best = true;
      }
      return;
    }
    int opened = 0;
    while (opened < k && bundle_totals[opened] != 0) ++opened;
    const int limit = std::min(k - 1, opened);
    for (int b = 0; b <= limit; ++b) {
      bool dup = false;
      for (int b2 = 0; b2 < b; ++b2) {
        if (bundle_totals[b2] == bundle_totals[b]) { dup = true; break; }
      }
      if (dup) continue;
      if (have_best && bundle_totals[b] + (*values)[i] >= best) continue;
      bundle_totals[b] += (*values)[i];
      assignment[i] = b;
      search_chores(i + 1);
      bundle_totals[b] -= (*values)[i];
    }
  }
};

}  // namespace

MmsResult mms_partition(const AdditiveValuation& v, int k, Kind kind,
                        double cap) {
  if (k < 1) throw std::invalid_argument("mms: k must be >= 1");
  const int m = v.size();
  MmsResult result;
  result.partition.assign(k, {});

  if (m == 0) {
    result.value = 0;
    return result;
  }
  if (k == 1) {
    result.value = v.total();
    for (int j = 0; j < m; ++j) result.partition[0].push_back(j);
    return result;
  }
  if (kind == Kind::Goods && k > m) {
    result.value = 0;  // some bundle is empty
    for (int j = 0; j < m; ++j) result.partition[j].push_back(j);
    return result;
  }
  if (kind == Kind::Chores && k >= m) {
    // One chore per bundle is optimal: max cost = most costly chore.
    Rat mx = 0;
    for (const Rat& c : v.item_values) mx = std::max(mx, c);
    result.value = mx;
    for (int j = 0; j < m; ++j) result.partition[j].push_back(j);
    return result;
  }
  if (std::pow(static_cast<double>(k), static_cast<double>(m)) > cap) {
    throw ResourceCapError("mms: k^m exceeds enumeration cap");
  }

  OrderedValuation ov = order_items(v);
  std::vector<Rat> sorted(m);
  for (int r = 0; r < m; ++r) sorted[r] = v.item_values[ov.order[r]];
  std::vector<Rat> suffix(m + 1, Rat(0));
  for (int i = m - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + sorted[i];

  MmsSearch search;
  search.values = &sorted;
  search.suffix = &suffix;
  search.k = k;
  search.kind = kind;
  search.bundle_totals.assign(k, Rat(0));
  search.assignment.assign(m, 0);
  if (kind == Kind::Goods) {
    search.search_goods(0);
  } else {
    search.search_chores(0);
  }

  result.value = search.best;
  for (int i = 0; i < m; ++i) {
    result.partition[search.best_assignment[i]].push_back(ov.order[i]);
  }
  return result;
}

Rat tps(const AdditiveValuation& v, const Rat& b) {
  if (b <= 0 || b > 1) throw std::invalid_argument("tps: b outside (0,1]");
  const int m = v.size();
  std::vector<Rat> sorted = v.item_values;
  std::sort(sorted.begin(), sorted.end(), std::greater<Rat>());
  std::vector<Rat> suffix(m + 1, Rat(0));
  for (int i = m - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + sorted[i];

  // Treat the p largest items as truncated to z; then z = b*(p*z + tail)
  // gives z = b*tail / (1 - p*b), accepted when the truncation set is
  // self-consistent. Exactly one candidate survives (up to boundary ties).
  std::optional<Rat> answer;
  for (int p = 0; p <= m; ++p) {
    Rat denom = 1 - p * b;
    if (denom <= 0) continue;
    Rat z = b * suffix[p] / denom;
    if (p > 0 && sorted[p - 1] < z) continue;
    if (p < m && sorted[p] > z) continue;
    if (answer && *answer != z) {
      throw std::logic_error("tps: inconsistent candidates");
    }
    answer = z;
  }
  if (!answer) throw std::logic_error("tps: no consistent truncation");
  return *answer;
}

int unit_upper_bound_k(const Rat& b) {
  if (b <= 0 || b > 1) {
    throw std::invalid_argument("unit upper bound: b outside (0,1]");
  }
  return to_long(rat_floor(1 / b));
}

Rat unit_upper_bound(const Rat& b) {
  return Rat(1, unit_upper_bound_k(b));
}

int unit_lower_bound_k(const Rat& b) {
  if (b <= 0 || b > 1) {
    throw std::invalid_argument("unit lower bound: b outside (0,1]");
  }
  if (b == 1) return 0;
  // The unique k with 1/(k+1) <= b < 1/k: ceil(1/b) - 1.
  return to_long(rat_ceil(1 / b)) - 1;
}

Rat unit_lower_bound(const Rat& b) {
  return Rat(1, unit_lower_bound_k(b) + 1);
}

Rat mms_hat(const AdditiveValuation& v, const Rat& b, double cap) {
  return mms(v, unit_upper_bound_k(b), Kind::Goods, cap);
}

Rat ps_hat(const AdditiveValuation& v, const Rat& b) {
  return proportional_share(v, unit_upper_bound(b));
}

Rat tps_hat(const AdditiveValuation& v, const Rat& b) {
  return tps(v, unit_upper_bound(b));
}

Rat mms_bar(const AdditiveValuation& c, const Rat& b, double cap) {
  return mms(c, unit_lower_bound_k(b) + 1, Kind::Chores, cap);
}

Rat ps_bar(const AdditiveValuation& c, const Rat& b) {
  return proportional_share(c, unit_lower_bound(b));
}

Rat rrr_share(const AdditiveValuation& c, const Rat& b) {
  if (b <= 0 || b > 1) throw std::invalid_argument("rrr: b outside (0,1]");
  if (b == 1) return c.total();  // single-agent corner: every position
  const int k = unit_lower_bound_k(b);
  std::vector<Rat> sorted = c.item_values;
  std::sort(sorted.begin(), sorted.end(), std::greater<Rat>());
  Rat sum = 0;
  for (std::size_t pos = 0; pos < sorted.size(); pos += k) {
    sum += sorted[pos];
  }
  return sum;
}

SylvesterTables sylvester(int n) {
  if (n < 1) throw std::invalid_argument("sylvester: n must be >= 1");
  SylvesterTables t;
  Int prod = 1;
  Rat q_inv_sum = 0;
  for (int i = 0; i < n + 1; ++i) {
    Int qi = (i == 0) ? Int(2) : Int(prod + 1);
    if (i < n) {
      t.q.push_back(qi);
      t.a.push_back(qi - 1);
      Rat si = (i == 0) ? Rat(1) : t.s.back() + Rat(1, t.a.back());
      si.canonicalize();
      t.s.push_back(si);
      q_inv_sum += Rat(1, qi);
      q_inv_sum.canonicalize();
    } else {
      // Telescoping identity: sum_{i<=n} 1/q_i = 1 - 1/a_{n+1}.
      Rat rhs = 1 - Rat(1, Int(qi - 1));
      rhs.canonicalize();
      if (q_inv_sum != rhs) {
        throw std::logic_error("sylvester identity violated");
      }
    }
    prod *= qi;
  }
  t.gamma_lower = t.s.back();
  return t;
}

HatSumBound hat_sum_bound(const std::vector<Rat>& entitlements) {
  const int n = static_cast<int>(entitlements.size());
  if (n < 2) throw std::invalid_argument("hat_sum_bound: need n >= 2");
  Rat total = 0;
  for (const Rat& b : entitlements) total += b;
  if (total != 1) {
    throw std::invalid_argument("hat_sum_bound: entitlements must sum to 1");
  }
  HatSumBound out;
  out.sum = 0;
  for (const Rat& b : entitlements) out.sum += unit_upper_bound(b);
  out.bound = sylvester(n).s.back();
  out.ok = out.sum <= out.bound;
  return out;
}

}  // namespace fairshare
