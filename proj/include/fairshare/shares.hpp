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

#pragma once

#include <optional>
#include <vector>

#include "fairshare/instance.hpp"

namespace fairshare {

enum class ShareKind {
  PS,
  MMS,
  TPS,
  MES,
  RRR,
  MMS_HAT,
  PS_HAT,
  TPS_HAT,
  MMS_BAR,
  PS_BAR,
  PERSONALIZED,
};

const char* share_kind_name(ShareKind k);
std::optional<ShareKind> share_kind_from_name(const std::string& name);

struct ShareValue {
  Rat value;
  ShareKind kind;
};

// PS(v, b) = b * v(M).
Rat proportional_share(const AdditiveValuation& v, const Rat& b);

struct MmsResult {
  Rat value;
  std::vector<std::vector<int>> partition;  // one witnessing k-partition
};

// Exact maximin share over k-partitions (goods: max of min bundle value;
// chores: min of max bundle cost). Enumerates item-to-bundle assignments
// with bundle-symmetry pruning and branch-and-bound; intended for desk
// scale. Throws ResourceCapError when k^m exceeds `cap`.
MmsResult mms_partition(const AdditiveValuation& v, int k, Kind kind,
                        double cap = 1e12);

inline Rat mms(const AdditiveValuation& v, int k, Kind kind = Kind::Goods,
               double cap = 1e12) {
  return mms_partition(v, k, kind, cap).value;
}

// Truncated proportional share: the unique z with b * sum_j min(v_j, z) = z.
Rat tps(const AdditiveValuation& v, const Rat& b);

// Unit upper bound 1/floor(1/b): the unique 1/k with 1/(k+1) < b <= 1/k.
Rat unit_upper_bound(const Rat& b);
int unit_upper_bound_k(const Rat& b);

// Unit lower bound 1/(k+1) for the unique k with 1/(k+1) <= b < 1/k.
// At exact reciprocals b = 1/t this gives back 1/t. b = 1 maps to k = 0,
// so the bound is 1 (single-agent corner).
Rat unit_lower_bound(const Rat& b);
int unit_lower_bound_k(const Rat& b);

// Rounded-entitlement shares for goods.
Rat mms_hat(const AdditiveValuation& v, const Rat& b, double cap = 1e12);
Rat ps_hat(const AdditiveValuation& v, const Rat& b);
Rat tps_hat(const AdditiveValuation& v, const Rat& b);

// Rounded-responsibility shares for chores.
Rat mms_bar(const AdditiveValuation& c, const Rat& b, double cap = 1e12);
Rat ps_bar(const AdditiveValuation& c, const Rat& b);

// Rounded-responsibilities Round Robin share: sum of descending costs at
// positions 1, 1+k, 1+2k, ... for the k with 1/(k+1) <= b < 1/k.
Rat rrr_share(const AdditiveValuation& c, const Rat& b);

struct SylvesterTables {
  std::vector<Int> q;   // q_1 = 2, q_k = 1 + prod_{i<k} q_i
  std::vector<Int> a;   // a_i = q_i - 1
  std::vector<Rat> s;   // s_n = sum_{i<=n} 1/a_i
  Rat gamma_lower;      // s_N, a certified lower bound on the limit
};

// First n terms of the Sylvester machinery, with the telescoping identity
// sum 1/q_i = 1 - 1/a_{n+1} asserted along the way.
SylvesterTables sylvester(int n);

struct HatSumBound {
  Rat sum;    // sum of unit upper bounds
  Rat bound;  // s_n
  bool ok;    // sum <= bound
};

// Checks sum_i hat(b_i) <= s_n for an entitlement vector summing to 1.
HatSumBound hat_sum_bound(const std::vector<Rat>& entitlements);

}  // namespace fairshare
