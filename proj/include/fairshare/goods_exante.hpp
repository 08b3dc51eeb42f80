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

#include "fairshare/chores.hpp"
#include "fairshare/instance.hpp"
#include "fairshare/shares.hpp"

namespace fairshare {

// Grand-bundle lottery for goods: agent i receives all items with
// probability hat(b_i) / s_N, residual probability padded onto agent 0.
// s_N (N = sylvester_terms) is the certified rational stand-in for the
// limit constant; expected value per agent is ps_hat / s_N. Requires
// n <= sylvester_terms so that sum hat(b_i) <= s_n <= s_N.
RandomizedAssignment exante_grand_bundle_lottery(const Instance& inst,
                                                 int sylvester_terms = 8);

struct ExanteTightness {
  std::vector<Rat> entitlements;  // b_i = 1/q_i + 1/(n*a_{n+1})
  Rat hat_sum;                    // sum of unit upper bounds = s_n
  Rat demanded;                   // (1/s_n + eps) * sum ps_hat, v(M) = 1
  bool infeasible;                // demanded > 1
};

// Sylvester-tight certificate: with n identical agents at the tight
// entitlement vector, expectations of (1/s_n + eps) * ps_hat sum to more
// than the whole value, so no distribution delivers them. eps defaults to
// 1/100; eps = 0 sits exactly on the feasibility boundary.
ExanteTightness verify_exante_tightness(int n, const Rat& eps = Rat(1, 100));

struct BobwGoodsFixture {
  Instance instance;
  std::vector<int> high_entitlement_agents;  // the set K
  // Certificate: every allocation giving all K agents at least one unit
  // item starves some agent outside K.
  bool certified;
};

// The identical-unit-items instance on which no randomized allocation can
// give everyone a constant fraction of PS ex-ante while staying on
// allocations with a constant fraction of mms_hat ex-post.
BobwGoodsFixture bobw_goods_impossibility_fixture(int n, int m);

}  // namespace fairshare
