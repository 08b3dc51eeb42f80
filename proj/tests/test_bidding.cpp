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

#include "fairshare/bidding.hpp"
#include "fairshare/shares.hpp"
#include "test_helpers.hpp"

using namespace fairshare;
using fairshare::testing::RatRng;
using fairshare::testing::brute_force_mms;

namespace {

AdditiveValuation vals(std::initializer_list<Rat> xs) {
  return AdditiveValuation{std::vector<Rat>(xs)};
}

Instance goods_instance(std::vector<Rat> ent,
                        std::vector<AdditiveValuation> valuations) {
  Instance inst;
  inst.kind = Kind::Goods;
  inst.item_count = valuations.at(0).size();
  for (std::size_t i = 0; i < ent.size(); ++i) {
    inst.agents.push_back(Agent{"agent" + std::to_string(i),
                                valuations[i % valuations.size()], ent[i]});
  }
  inst.validate();
  return inst;
}

GameState fresh_state(const AdditiveValuation& v, const Rat& b) {
  GameState st;
  st.item_count = v.size();
  for (int j = 0; j < v.size(); ++j) st.remaining.push_back(j);
  st.budgets = {b, 1 - b};
  st.round = 1;
  return st;
}

Strategy constant_bid(const Rat& fraction_of_budget) {
  return [fraction_of_budget](const GameState& st, int self) -> BidAction {
    BidAction act;
    act.bid = st.budgets[self] * fraction_of_budget;
    act.pick = st.remaining.front();
    return act;
  };
}

}  // namespace

TEST_CASE("run_game basics") {
  AdditiveValuation v = vals({1, 1});
  Instance inst = goods_instance({make_rat(1, 2), make_rat(1, 2)}, {v});

  SUBCASE("two all-in bidders alternate by tie-break") {
    // Both agents bid their whole budget; index tie-break gives agent 0 the
    // first round at price 1/2, after which agent 1 wins what remains.
    GameResult result = run_game(inst, {constant_bid(1), constant_bid(1)});
    CHECK(result.history[0].winner == 0);
    CHECK(result.history[0].payment == make_rat(1, 2));
    CHECK(result.history[1].winner == 1);
    CHECK(result.allocation.bundles[0].size() == 1);
    CHECK(result.allocation.bundles[1].size() == 1);
  }
  SUBCASE("payments never exceed the initial budget total") {
    RatRng rng(501);
    for (int trial = 0; trial < 30; ++trial) {
      Instance game = rng.instance(Kind::Goods, rng.uniform(2, 4),
                                   rng.uniform(1, 5), 9, 4);
      std::vector<Strategy> strategies;
      for (int i = 0; i < game.agent_count(); ++i) {
        strategies.push_back(
            safe_strategy(game.valuation(i), game.entitlement(i)));
      }
      GameResult result = run_game(game, strategies);
      Rat paid = 0;
      for (const RoundRecord& rec : result.history) paid += rec.payment;
      CHECK(paid <= 1);
      result.allocation.validate(game.item_count);
    }
  }
  SUBCASE("an over-budget bid is rejected with a diagnostic") {
    Strategy bad = [](const GameState& st, int self) -> BidAction {
      return {st.budgets[self] + 1, st.remaining.front()};
    };
    CHECK_THROWS_AS(run_game(inst, {bad, constant_bid(0)}),
                    InvalidStrategyAction);
  }
  SUBCASE("seeded tie-break permutation is deterministic") {
    TieBreak tb{TieBreak::Mode::SeededPermutation, 7};
    GameResult a = run_game(inst, {constant_bid(1), constant_bid(1)}, tb);
    GameResult b = run_game(inst, {constant_bid(1), constant_bid(1)}, tb);
    CHECK(a.history[0].winner == b.history[0].winner);
  }
}

TEST_CASE("two-player solver structure") {
  SUBCASE("hand-checked thresholds for [1,1,0]") {
    BidSolver solver(vals({1, 1, 0}));
    ThresholdVector tv = solver.threshold_vector();
    std::vector<Rat> expect{Rat(0),         make_rat(1, 4), make_rat(1, 3),
                            make_rat(2, 5), make_rat(1, 2), make_rat(3, 5),
                            make_rat(2, 3), make_rat(3, 4)};
    REQUIRE(tv.entries.size() == 8);
    for (int j = 0; j < 8; ++j) CHECK(tv.entries[j].threshold == expect[j]);
  }
  SUBCASE("named thresholds on random integer valuations") {
    RatRng rng(502);
    for (int trial = 0; trial < 12; ++trial) {
      const int m = rng.uniform(1, 6);
      AdditiveValuation v = rng.integer_valuation(m, 9);
      BidSolver solver(v);
      ThresholdVector tv = solver.threshold_vector();
      const std::size_t size = std::size_t{1} << m;
      REQUIRE(tv.entries.size() == size);
      CHECK(tv.entries[0].threshold == 0);
      CHECK(tv.entries[1].threshold == make_rat(1, m + 1));
      CHECK(tv.entries[size - 1].threshold == make_rat(m, m + 1));
      if (m >= 1) {
        CHECK(tv.entries[size / 2].threshold == make_rat(1, 2));
      }
      for (std::size_t j = 1; j < size; ++j) {
        CHECK(tv.entries[j].threshold > tv.entries[j - 1].threshold);
        CHECK(tv.entries[j].threshold + tv.entries[size - j + 1 - 1].threshold ==
              1);
      }
    }
  }
  SUBCASE("value function matches rank values on the half-open intervals") {
    RatRng rng(503);
    for (int trial = 0; trial < 10; ++trial) {
      const int m = rng.uniform(1, 5);
      AdditiveValuation v = rng.valuation(m, 9, 4);
      BidSolver solver(v);
      ThresholdVector tv = solver.threshold_vector();
      StepFunction v1 = solver.value_function(1);
      const std::size_t size = tv.entries.size();
      for (std::size_t j = 0; j < size; ++j) {
        // Right endpoint of the rank-j interval.
        const Rat right =
            j + 1 < size ? tv.entries[j + 1].threshold : Rat(1);
        CHECK(v1.at(right) == tv.entries[j].value);
        if (j + 1 < size) {
          const Rat mid = (tv.entries[j].threshold + right) / 2;
          CHECK(v1.at(mid) == tv.entries[j].value);
        }
      }
    }
  }
  SUBCASE("item cap is enforced") {
    AdditiveValuation big;
    for (int i = 0; i < 13; ++i) big.item_values.push_back(Rat(1));
    CHECK_THROWS_AS(BidSolver(big, 12), ResourceCapError);
  }
}

TEST_CASE("worst-case-optimal strategy") {
  SUBCASE("single item: strictly more than half wins, half loses") {
    AdditiveValuation v = vals({1});
    const Rat eps = make_rat(1, 100);
    CHECK(exhaustive_adversary_value(
              v, make_rat(1, 2) + eps,
              optimal_strategy(v, make_rat(1, 2) + eps)) == 1);
    CHECK(exhaustive_adversary_value(
              v, make_rat(1, 2), optimal_strategy(v, make_rat(1, 2))) == 0);
  }
  SUBCASE("realized worst case equals the solved game value") {
    RatRng rng(504);
    for (int trial = 0; trial < 25; ++trial) {
      const int m = rng.uniform(1, 6);
      AdditiveValuation v = rng.valuation(m, 9, 4);
      Rat b = rng.positive_rational(19, 20);
      while (b >= 1) b /= 2;
      BidSolver solver(v);
      const Rat solved = solver.guaranteed(1, b).value;
      CHECK(exhaustive_adversary_value(v, b, optimal_strategy(v, b)) ==
            solved);
    }
  }
  SUBCASE("maximin share at one half") {
    RatRng rng(505);
    for (int trial = 0; trial < 10; ++trial) {
      const int m = rng.uniform(1, 6);
      AdditiveValuation v = rng.valuation(m, 9, 4);
      CHECK(exhaustive_adversary_value(v, make_rat(1, 2),
                                       optimal_strategy(v, make_rat(1, 2))) ==
            brute_force_mms(v, 2, Kind::Goods));
    }
  }
  SUBCASE("half the total above one half entitlement") {
    RatRng rng(506);
    for (int trial = 0; trial < 10; ++trial) {
      const int m = rng.uniform(1, 6);
      AdditiveValuation v = rng.valuation(m, 9, 4);
      const Rat b = make_rat(1, 2) + rng.positive_rational(10, 25) / 10;
      if (b >= 1) continue;
      CHECK(2 * exhaustive_adversary_value(v, b, optimal_strategy(v, b)) >=
            v.total());
    }
  }
}

TEST_CASE("bid your value") {
  SUBCASE("four quarters at half entitlement keep one quarter") {
    AdditiveValuation v = vals({make_rat(1, 4), make_rat(1, 4),
                                make_rat(1, 4), make_rat(1, 4)});
    const Rat worst = exhaustive_adversary_value(
        v, make_rat(1, 2), bid_your_value_strategy(v, make_rat(1, 2)));
    CHECK(worst >= make_rat(1, 4));
  }
  SUBCASE("full budget wins every positive item") {
    AdditiveValuation v = vals({1});
    CHECK(exhaustive_adversary_value(v, Rat(1),
                                     bid_your_value_strategy(v, Rat(1))) == 1);
  }
  SUBCASE("proportional share up to one item on random instances") {
    RatRng rng(507);
    for (int trial = 0; trial < 60; ++trial) {
      const int m = rng.uniform(1, 8);
      AdditiveValuation v = rng.valuation(m, 9, 4);
      if (v.total() == 0) continue;
      Rat b = rng.positive_rational(9, 10);
      while (b >= 1) b /= 2;
      Rat max_item = 0;
      for (const Rat& x : v.item_values) max_item = std::max(max_item, x);
      const Rat worst = exhaustive_adversary_value(
          v, b, bid_your_value_strategy(v, b));
      CHECK(worst >= b * v.total() - max_item);
    }
  }
}

TEST_CASE("k2 table strategy") {
  SUBCASE("table rows answer item values exactly") {
    // Value 10/72 with a thin tail: TPS at one half stays untruncated, so
    // the internal normalization is the identity and the round-1 bid reads
    // straight off the table.
    std::vector<Rat> values{make_rat(10, 72)};
    for (int i = 0; i < 62; ++i) values.push_back(make_rat(1, 72));
    AdditiveValuation v{values};
    REQUIRE(tps(v, make_rat(1, 2)) == make_rat(1, 2));
    Strategy table = k2_table_strategy(v, make_rat(1, 2));
    GameState st = fresh_state(v, make_rat(1, 2));
    CHECK(table(st, 0).bid == make_rat(9, 72));

    std::vector<Rat> values2{make_rat(27, 144)};  // 13.5/72
    for (int i = 0; i < 117; ++i) values2.push_back(make_rat(1, 144));
    AdditiveValuation v2{values2};
    REQUIRE(tps(v2, make_rat(1, 2)) == make_rat(1, 2));
    Strategy table2 = k2_table_strategy(v2, make_rat(1, 2));
    GameState st2 = fresh_state(v2, make_rat(1, 2));
    CHECK(table2(st2, 0).bid == make_rat(12, 72));
  }
  SUBCASE("the large-eighth-item pre-check fires and is necessary") {
    const Rat e = make_rat(1, 24);
    std::vector<Rat> values{(14 + e) / 72, (10 - e) / 72};
    for (int i = 0; i < 6; ++i) values.push_back(make_rat(8, 72));
    AdditiveValuation v{values};
    const Rat b = make_rat(1, 3) + e / 72;
    const Rat target = tps(v, make_rat(1, 2)) / 2;
    CHECK(target == make_rat(1, 4));

    GameState st = fresh_state(v, b);
    CHECK(k2_table_strategy(v, b, true)(st, 0).bid == make_rat(1, 9));

    CHECK(exhaustive_adversary_value(v, b, k2_table_strategy(v, b, true)) >=
          target);
    CHECK(exhaustive_adversary_value(v, b, k2_table_strategy(v, b, false)) <
          target);
  }
  SUBCASE("entitlement precondition") {
    AdditiveValuation v = vals({1});
    CHECK_THROWS_AS(k2_table_strategy(v, make_rat(1, 4)),
                    std::invalid_argument);
  }
}

TEST_CASE("safe strategy") {
  SUBCASE("above one half it inherits the optimal guarantee") {
    RatRng rng(508);
    for (int trial = 0; trial < 15; ++trial) {
      const int m = rng.uniform(1, 5);
      AdditiveValuation v = rng.valuation(m, 9, 4);
      const Rat b = make_rat(3, 5);
      CHECK(2 * exhaustive_adversary_value(v, b, safe_strategy(v, b)) >=
            v.total());
    }
  }
  SUBCASE("half of rounded TPS across a sample of regimes") {
    RatRng rng(509);
    for (const Rat& b : {make_rat(3, 10), make_rat(1, 3), make_rat(2, 5),
                         make_rat(1, 2), make_rat(3, 5)}) {
      for (int trial = 0; trial < 25; ++trial) {
        const int m = rng.uniform(1, 5);
        AdditiveValuation v = rng.valuation(m, 9, 4);
        const Rat target = tps(v, unit_upper_bound(b)) / 2;
        CHECK(exhaustive_adversary_value(v, b, safe_strategy(v, b)) >=
              target);
      }
    }
  }
}

TEST_CASE("approximately optimal strategy") {
  const Rat eps = make_rat(1, 10);

  SUBCASE("coarse valuations collapse to exact optimal play") {
    AdditiveValuation v = vals({make_rat(30, 35), make_rat(1, 35),
                                make_rat(1, 35), make_rat(1, 35),
                                make_rat(1, 35), make_rat(1, 35)});
    const Rat b = make_rat(51, 100);
    BidSolver solver(v);
    const Rat exact = solver.guaranteed(1, b).value;
    const Rat achieved = exhaustive_adversary_value(
        v, b, approx_optimal_strategy(v, b, eps));
    CHECK(achieved >= exact - eps * v.total());
    CHECK(achieved == exact);  // every item is above delta: no equalization
  }
  SUBCASE("tail equalization keeps the additive guarantee") {
    AdditiveValuation v = vals({Rat(50), Rat(1), Rat(1), Rat(1), Rat(1),
                                Rat(1)});
    for (const Rat& b : {make_rat(2, 5), make_rat(51, 100)}) {
      BidSolver solver(v);
      const Rat exact = solver.guaranteed(1, b).value;
      const Rat achieved = exhaustive_adversary_value(
          v, b, approx_optimal_strategy(v, b, eps));
      CHECK(achieved >= exact - eps * v.total());
    }
  }
  SUBCASE("small items trigger plain bid-your-value") {
    const Rat wide_eps = make_rat(1, 2);
    AdditiveValuation v{std::vector<Rat>(10, make_rat(1, 10))};
    const Rat b = make_rat(1, 3);
    BidSolver solver(v);
    const Rat exact = solver.guaranteed(1, b).value;
    const Rat achieved = exhaustive_adversary_value(
        v, b, approx_optimal_strategy(v, b, wide_eps));
    CHECK(achieved >= exact - wide_eps * v.total());
    CHECK(achieved >= b * v.total() - (wide_eps / 4) * v.total());
  }
}

TEST_CASE("exhaustive adversary oracle") {
  SUBCASE("always bidding zero forfeits everything") {
    AdditiveValuation v = vals({3, 2, 1});
    CHECK(exhaustive_adversary_value(v, make_rat(1, 2), constant_bid(0)) == 0);
  }
  SUBCASE("grid-monotone single item game") {
    AdditiveValuation v = vals({1});
    CHECK(best_monotone_grid_value(v, make_rat(3, 5), 5) == 1);
    CHECK(best_monotone_grid_value(v, make_rat(2, 5), 5) == 0);
  }
}
