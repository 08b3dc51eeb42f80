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

#include "fairshare/oracles.hpp"
#include "fairshare/personalized.hpp"
#include "test_helpers.hpp"

using namespace fairshare;
using fairshare::testing::RatRng;

namespace {

AdditiveValuation vals(std::initializer_list<Rat> xs) {
  return AdditiveValuation{std::vector<Rat>(xs)};
}

Instance identical(Kind kind, std::vector<Rat> ent, AdditiveValuation v) {
  Instance inst;
  inst.kind = kind;
  inst.item_count = v.size();
  for (std::size_t i = 0; i < ent.size(); ++i) {
    inst.agents.push_back(
        Agent{"agent" + std::to_string(i), v, ent[i]});
  }
  inst.validate();
  return inst;
}

}  // namespace

TEST_CASE("representative counts") {
  AdditiveValuation anchor = vals({1, 1, 1});

  SUBCASE("goods: f/(k+1) < b <= (f+1)/(k+1)") {
    PersonalizedContext ctx =
        make_personalized_context(Kind::Goods, anchor, make_rat(3, 10));
    CHECK(ctx.k == 3);
    CHECK(representative_count(ctx, make_rat(1, 2)) == 1);  // 1/4 < 1/2 <= 2/4
    CHECK(representative_count(ctx, make_rat(1, 5)) == 0);
    CHECK(representative_count(ctx, make_rat(1, 4)) == 0);  // boundary: <=
    CHECK(representative_count(ctx, Rat(1)) == 3);
  }
  SUBCASE("chores: (f-1)/k <= b < f/k") {
    PersonalizedContext ctx =
        make_personalized_context(Kind::Chores, anchor, make_rat(2, 5));
    CHECK(ctx.k == 2);
    CHECK(representative_count(ctx, make_rat(1, 2)) == 2);  // 1/2 <= 1/2 < 1
    CHECK(representative_count(ctx, make_rat(1, 5)) == 1);
  }
}

TEST_CASE("personalized maximin share") {
  SUBCASE("at the anchor it collapses to the rounded share") {
    RatRng rng(201);
    for (int trial = 0; trial < 40; ++trial) {
      const int m = rng.uniform(1, 6);
      AdditiveValuation v = rng.valuation(m, 9, 4);
      Rat b = rng.positive_rational(9, 10);
      while (b > 1) b /= 2;
      PersonalizedContext ctx = make_personalized_context(Kind::Goods, v, b);
      CHECK(personalized_mms(ctx, v, b) == mms_hat(v, b));
    }
  }
  SUBCASE("zero representatives, zero share") {
    PersonalizedContext ctx =
        make_personalized_context(Kind::Goods, vals({1, 1, 1}), make_rat(1, 3));
    CHECK(personalized_mms(ctx, vals({5, 5, 5}), make_rat(1, 5)) == 0);
  }
  SUBCASE("anchor [1,1] at k=2 against an indifferent agent") {
    PersonalizedContext ctx =
        make_personalized_context(Kind::Goods, vals({1, 1}), make_rat(1, 2));
    CHECK(ctx.k == 2);
    CHECK(personalized_mms(ctx, vals({2, 0}), make_rat(1, 2)) == 0);
  }
  SUBCASE("chores mirror collapses to the rounded share at the anchor") {
    RatRng rng(202);
    for (int trial = 0; trial < 40; ++trial) {
      const int m = rng.uniform(1, 6);
      AdditiveValuation c = rng.valuation(m, 9, 4);
      Rat b = rng.positive_rational(9, 10);
      while (b >= 1) b /= 2;
      PersonalizedContext ctx = make_personalized_context(Kind::Chores, c, b);
      CHECK(personalized_mms(ctx, c, b) == mms_bar(c, b));
    }
  }
  SUBCASE("domination sandwich against foreign anchors") {
    RatRng rng(203);
    for (int trial = 0; trial < 40; ++trial) {
      const int m = rng.uniform(1, 5);
      AdditiveValuation anchor_v = rng.valuation(m, 9, 4);
      AdditiveValuation v = rng.valuation(m, 9, 4);
      Rat anchor_b = rng.positive_rational(9, 10);
      while (anchor_b > 1) anchor_b /= 2;
      Rat b = rng.positive_rational(9, 10);
      while (b > 1) b /= 2;
      PersonalizedContext ctx =
          make_personalized_context(Kind::Goods, anchor_v, anchor_b);
      // Every feasible ex-post share sits below the rounded maximin share.
      CHECK(personalized_mms(ctx, v, b) <= mms_hat(v, b));
      if (b < 1) {
        PersonalizedContext cctx =
            make_personalized_context(Kind::Chores, anchor_v, anchor_b < 1
                                                                   ? anchor_b
                                                                   : make_rat(1, 2));
        CHECK(personalized_mms(cctx, v, b) >= mms_bar(v, b));
      }
    }
  }
}

TEST_CASE("personalized proportional share") {
  SUBCASE("goods at the anchor band") {
    // 1/3 < b <= 1/2 gives k = 2 and one representative: v(M)/2.
    CHECK(personalized_ps(Kind::Goods, 2, vals({1, 1}), make_rat(2, 5)) == 1);
    CHECK(personalized_ps(Kind::Goods, 2, vals({1, 1}), make_rat(2, 5)) ==
          ps_hat(vals({1, 1}), make_rat(2, 5)));
  }
  SUBCASE("zero representatives") {
    CHECK(personalized_ps(Kind::Goods, 3, vals({7, 7}), make_rat(1, 5)) == 0);
  }
  SUBCASE("chores with k = 1") {
    CHECK(personalized_ps(Kind::Chores, 1, vals({4, 4}), make_rat(3, 4)) == 4);
  }
}

TEST_CASE("coupon values") {
  CHECK(coupon_values(vals({3, 1, 2})) == std::vector<Rat>{3, 2, 1});
  CHECK(coupon_set_value(coupon_values(vals({3, 1, 2})), {1, 2}) == 5);
  CHECK(coupon_set_value(coupon_values(vals({3, 1, 2})), {}) == 0);
}

TEST_CASE("personalized feasibility witnesses") {
  SUBCASE("single fully entitled agent") {
    Instance inst = identical(Kind::Goods, {Rat(1)}, vals({2, 3}));
    PersonalizedContext ctx =
        make_personalized_context(Kind::Goods, vals({2, 3}), Rat(1));
    Allocation alloc = verify_personalized_feasibility(ctx, inst);
    CHECK(alloc.bundles[0].size() == 2);
  }
  SUBCASE("three nearly equal agents, goods") {
    Instance inst = identical(
        Kind::Goods,
        {make_rat(34, 100), make_rat(33, 100), make_rat(33, 100)},
        vals({1, 1, 1, 1}));
    PersonalizedContext ctx = make_personalized_context(
        Kind::Goods, inst.valuation(0), inst.entitlement(0));
    CHECK_NOTHROW(verify_personalized_feasibility(ctx, inst));
  }
  SUBCASE("chores: k+1 agents at the unit lower bound") {
    Instance inst = identical(
        Kind::Chores,
        {make_rat(1, 3), make_rat(1, 3), make_rat(1, 3)},
        vals({1, 1, 1, 2, 2, 3}));
    PersonalizedContext ctx = make_personalized_context(
        Kind::Chores, inst.valuation(0), inst.entitlement(0));
    CHECK_NOTHROW(verify_personalized_feasibility(ctx, inst));
  }
  SUBCASE("200 random instances per kind") {
    RatRng rng(204);
    for (int trial = 0; trial < 200; ++trial) {
      const Kind kind = trial % 2 == 0 ? Kind::Goods : Kind::Chores;
      const int n = rng.uniform(1 + (kind == Kind::Chores), 4);
      const int m = rng.uniform(1, 6);
      Instance inst = rng.instance(kind, n, m, 9, 4);
      PersonalizedContext ctx = make_personalized_context(
          kind, inst.valuation(0), inst.entitlement(0));
      CHECK_NOTHROW(verify_personalized_feasibility(ctx, inst));
    }
  }
}

TEST_CASE("non-additive pair admits only the zero share") {
  Fixture fx = fixture("nonadditive-zero-share");
  CHECK(fx.certify());
}
