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

#include <doctest.h>

#include "fairshare/chores.hpp"
#include "fairshare/oracles.hpp"
#include "fairshare/shares.hpp"
#include "test_helpers.hpp"

using namespace fairshare;
using fairshare::testing::RatRng;

TEST_CASE("allocation enumeration") {
  int count = 0;
  enumerate_allocations(2, 2, [&](const std::vector<int>&) {
    ++count;
    return true;
  });
  CHECK(count == 4);

  count = 0;
  enumerate_allocations(1, 4, [&](const std::vector<int>&) {
    ++count;
    return true;
  });
  CHECK(count == 1);

  count = 0;
  enumerate_allocations(3, 4, [&](const std::vector<int>&) {
    ++count;
    return true;
  });
  CHECK(count == 81);

  CHECK_THROWS_AS(
      enumerate_allocations(10, 10, [](const std::vector<int>&) {
        return true;
      }),
      ResourceCapError);
}

TEST_CASE("feasibility search") {
  SUBCASE("scaled rounded maximin share is infeasible on the unit fixture") {
    CHECK(fixture("goods-tightness-lb-n3").certify());
  }
  SUBCASE("half rounded TPS is feasible on random goods instances") {
    RatRng rng(601);
    for (int trial = 0; trial < 500; ++trial) {
      const int n = rng.uniform(2, 3);
      const int m = rng.uniform(1, 5);
      Instance inst = rng.instance(Kind::Goods, n, m, 9, 4);
      std::vector<Rat> shares;
      for (const Agent& a : inst.agents) {
        shares.push_back(tps_hat(a.valuation, a.entitlement) / 2);
      }
      CHECK(check_feasibility(inst, shares).feasible);
    }
  }
  SUBCASE("twice the rounded chores share is feasible with the RRR witness") {
    RatRng rng(602);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = rng.uniform(2, 4);
      const int m = rng.uniform(1, 6);
      Instance inst = rng.instance(Kind::Chores, n, m, 9, 4);
      std::vector<Rat> shares;
      for (const Agent& a : inst.agents) {
        shares.push_back(2 * mms_bar(a.valuation, a.entitlement));
      }
      FeasibilityResult res = check_feasibility(inst, shares);
      CHECK(res.feasible);
      // The deterministic picking-sequence assignment is itself a witness.
      Allocation rrr = assign_rrr(inst);
      for (int i = 0; i < n; ++i) {
        CHECK(inst.valuation(i).value_of(rrr.bundles[i]) <= shares[i]);
      }
    }
  }
  SUBCASE("a feasible witness validates") {
    RatRng rng(603);
    Instance inst = rng.instance(Kind::Goods, 2, 4, 9, 4);
    std::vector<Rat> zero(2, Rat(0));
    FeasibilityResult res = check_feasibility(inst, zero);
    REQUIRE(res.feasible);
    REQUIRE(res.witness.has_value());
    res.witness->validate(inst.item_count);
  }
}

TEST_CASE("fixture catalog") {
  for (const std::string& name : fixture_names()) {
    Fixture fx = fixture(name);
    CHECK(fx.name == name);
    CHECK(!fx.summary.empty());
    CHECK((fx.instance.has_value() || !fx.table_pair.empty()));
  }
  CHECK_THROWS_AS(fixture("no-such-fixture"), std::invalid_argument);
}

TEST_CASE("cheap fixture certificates") {
  // The expensive game-tree fixtures run in the acceptance suite.
  CHECK(fixture("chores-2domination-lb").certify());
  CHECK(fixture("chores-bobw-lb").certify());
  CHECK(fixture("nonadditive-zero-share").certify());
  CHECK(fixture("sylvester-tight-n3").certify());
  CHECK(fixture("myopic-pair").certify());
  CHECK(fixture("lookahead").certify());
}
