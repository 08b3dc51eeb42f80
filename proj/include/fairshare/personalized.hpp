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

#include <vector>

#include "fairshare/instance.hpp"
#include "fairshare/shares.hpp"

namespace fairshare {

// Anchor data for the personalized shares built from one agent's
// (valuation, entitlement) pair. For goods, k is the integer with
// 1/(k+1) < b <= 1/k and acceptable bundles S satisfy
// v(S) >= MMS(v, 1/k); for chores, 1/(k+1) <= b < 1/k and acceptable
// bundles satisfy c(S) <= MMS(c, 1/(k+1)).
struct PersonalizedContext {
  Kind kind;
  AdditiveValuation anchor_valuation;
  Rat anchor_entitlement;
  int k;
  Rat equal_split_share;               // MMS at the rounded entitlement
  std::vector<ItemMask> acceptable_bundles;
  std::vector<std::vector<int>> anchor_partition;  // witnessing partition
};

PersonalizedContext make_personalized_context(Kind kind,
                                              const AdditiveValuation& anchor,
                                              const Rat& b,
                                              double cap = 1e12);

// Number of "representatives" an entitlement b_j buys: for goods the unique
// f with f/(k+1) < b_j <= (f+1)/(k+1); for chores the unique f with
// (f-1)/k <= b_j < f/k.
int representative_count(const PersonalizedContext& ctx, const Rat& b_j);

// Personalized MMS: min (goods) / max (chores) of v_j over disjoint unions
// of representative_count(b_j) acceptable bundles. Zero for goods when the
// count is zero.
Rat personalized_mms(const PersonalizedContext& ctx,
                     const AdditiveValuation& v_j, const Rat& b_j);

// Personalized proportional share: f_j/k * v_j(M) for goods,
// f_j/(k+1) * c_j(M) for chores. Depends on the anchor only through k.
Rat personalized_ps(Kind kind, int k, const AdditiveValuation& v_j,
                    const Rat& b_j);

// Item values sorted non-increasing; coupon r is worth the r-th entry.
std::vector<Rat> coupon_values(const AdditiveValuation& v);

// Sum of coupon values over a set of 1-based coupon indices.
Rat coupon_set_value(const std::vector<Rat>& coupons,
                     const std::vector<int>& indices);

// Builds the allocation that witnesses feasibility of the anchored
// personalized MMS share on `inst` (each agent gets representative_count
// distinct bundles of the anchor partition) and asserts every agent meets
// her personalized share. Throws std::logic_error if the check fails.
Allocation verify_personalized_feasibility(const PersonalizedContext& ctx,
                                           const Instance& inst);

}  // namespace fairshare
