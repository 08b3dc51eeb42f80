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

#include "fairshare/goods_exante.hpp"
#include "test_helpers.hpp"

using namespace fairshare;
using fairshare::testing::RatRng;

namespace {

Instance identical_goods(std::vector<Rat> ent, std::vector<Rat> values) {
  Instance inst;
  inst.kind = Kind::Goods;
  inst.item_count = static_cast<int>(values.size());
  AdditiveValuation v{values};
  for (std::size_t i = 0; i < ent.size(); ++i) {
    inst.agents.push_back(Agent{"agent" + std::to_string(i), v, ent[i]});
  }
  inst.validate();
  return inst;
}

}  // namespace

TEST_CASE("grand-bundle lottery") {
  SUBCASE("two equal agents") {
    Instance inst =
        identical_goods({make_rat(1, 2), make_rat(1, 2)}, {Rat(2), Rat(3)});
    RandomizedAssignment ra = exante_grand_bundle_lottery(inst);
    const Rat gamma_tilde = sylvester(8).s.back();
    Rat total = 0;
    std::vector<Rat> expected(2, Rat(0));
    for (const auto& o : ra.outcomes) {
      CHECK(o.weight > 0);
      total += o.weight;
      for (int i = 0; i < 2; ++i) {
        expected[i] +=
            o.weight * inst.valuation(i).value_of(o.allocation.bundles[i]);
      }
    }
    CHECK(total == 1);
    for (int i = 0; i < 2; ++i) {
      CHECK(expected[i] >=
            ps_hat(inst.valuation(i), inst.entitlement(i)) / gamma_tilde);
    }
  }
  SUBCASE("single agent") {
    Instance inst = identical_goods({Rat(1)}, {Rat(5)});
    RandomizedAssignment ra = exante_grand_bundle_lottery(inst);
    Rat total = 0;
    for (const auto& o : ra.outcomes) total += o.weight;
    CHECK(total == 1);
  }
  SUBCASE("sylvester-tight entitlements still fit, n = 3") {
    ExanteTightness cert = verify_exante_tightness(3);
    Instance inst = identical_goods(cert.entitlements, {Rat(1)});
    CHECK(cert.hat_sum == make_rat(5, 3));
    RandomizedAssignment ra = exante_grand_bundle_lottery(inst);
    Rat grand_total = 0;
    for (const auto& o : ra.outcomes) grand_total += o.weight;
    CHECK(grand_total == 1);
  }
  SUBCASE("probability padding keeps totals at one on random instances") {
    RatRng rng(401);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = rng.uniform(1, 5);
      const int m = rng.uniform(1, 5);
      Instance inst = rng.instance(Kind::Goods, n, m, 9, 4);
      RandomizedAssignment ra = exante_grand_bundle_lottery(inst);
      Rat total = 0;
      for (const auto& o : ra.outcomes) {
        CHECK(o.weight >= 0);
        total += o.weight;
      }
      CHECK(total == 1);
    }
  }
  SUBCASE("agent count above the term cap is refused") {
    std::vector<Rat> ent(9, make_rat(1, 9));
    Instance inst = identical_goods(ent, {Rat(1)});
    CHECK_THROWS_AS(exante_grand_bundle_lottery(inst, 8), ResourceCapError);
  }
}

TEST_CASE("ex-ante tightness certificates") {
  SUBCASE("n = 2") {
    ExanteTightness cert = verify_exante_tightness(2);
    CHECK(cert.hat_sum == make_rat(3, 2));
    CHECK(cert.demanded > 1);
    CHECK(cert.infeasible);
  }
  SUBCASE("n = 3") {
    ExanteTightness cert = verify_exante_tightness(3);
    CHECK(cert.hat_sum == make_rat(5, 3));
    CHECK(cert.infeasible);
  }
  SUBCASE("eps = 0 sits exactly on the boundary") {
    ExanteTightness cert = verify_exante_tightness(3, Rat(0));
    CHECK(cert.demanded == 1);
    CHECK(!cert.infeasible);
  }
}

TEST_CASE("best-of-both-worlds impossibility fixture for goods") {
  SUBCASE("n = 2, m = 1: the second agent always starves") {
    BobwGoodsFixture fx = bobw_goods_impossibility_fixture(2, 1);
    CHECK(fx.high_entitlement_agents == std::vector<int>{0});
    CHECK(fx.certified);
  }
  SUBCASE("n = 3, m = 2") {
    BobwGoodsFixture fx = bobw_goods_impossibility_fixture(3, 2);
    CHECK(fx.certified);
  }
  SUBCASE("m >= n pads with zero-value items") {
    BobwGoodsFixture fx = bobw_goods_impossibility_fixture(3, 5);
    CHECK(fx.instance.item_count == 5);
    // Only the first n-1 items carry value.
    for (int j = 0; j < 5; ++j) {
      CHECK(fx.instance.valuation(0).item_values[j] == (j < 2 ? 1 : 0));
    }
    CHECK(fx.certified);
  }
}
