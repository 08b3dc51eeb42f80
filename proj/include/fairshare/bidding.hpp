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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "fairshare/instance.hpp"

namespace fairshare {

// ---------------------------------------------------------------------------
// Game engine
// ---------------------------------------------------------------------------

struct RoundRecord {
  int round;              // 1-based
  std::vector<Rat> bids;  // one per agent
  int winner;
  int item;
  Rat payment;
};

// Public round state of the bidding game. Budgets and the full history are
// visible to every strategy; strategies that want a pessimistic view (own
// bids and win/lose bits only) simply ignore the rest.
struct GameState {
  int item_count = 0;
  std::vector<int> remaining;  // item ids still on the table
  std::vector<Rat> budgets;    // per agent
  int round = 1;               // 1..m
  std::vector<RoundRecord> history;
};

struct BidAction {
  Rat bid;
  int pick;  // item to take if the round is won
};

// A pluggable bid+pick policy: pure function of the visible state, the
// agent's own valuation and initial entitlement being bound at construction.
using Strategy = std::function<BidAction(const GameState&, int self)>;

class InvalidStrategyAction : public std::runtime_error {
 public:
  explicit InvalidStrategyAction(const std::string& what)
      : std::runtime_error(what) {}
};

struct TieBreak {
  enum class Mode { LowestIndex, SeededPermutation };
  Mode mode = Mode::LowestIndex;
  std::uint64_t seed = 0;
};

struct GameResult {
  Allocation allocation;
  std::vector<RoundRecord> history;
};

// Runs the m-round bidding game: every agent bids, the highest bid wins
// (ties per rule), the winner pays her bid and picks an item.
GameResult run_game(const Instance& inst,
                    const std::vector<Strategy>& strategies,
                    TieBreak tiebreak = {});

// ---------------------------------------------------------------------------
// Exact two-player solver
// ---------------------------------------------------------------------------

// A bundle value under the tie-free associated valuation: exact value plus
// an infinitesimal perturbation key ordered lexicographically. Keys add
// like integers (disjoint bundles have disjoint key bits).
struct PerturbedValue {
  Rat value;
  std::int64_t key = 0;

  friend bool operator==(const PerturbedValue& a, const PerturbedValue& b) {
    return a.value == b.value && a.key == b.key;
  }
  friend bool operator<(const PerturbedValue& a, const PerturbedValue& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.key < b.key;
  }
  friend bool operator<=(const PerturbedValue& a, const PerturbedValue& b) {
    return a == b || a < b;
  }
  PerturbedValue operator+(const PerturbedValue& o) const {
    return {value + o.value, key + o.key};
  }
  PerturbedValue operator-(const PerturbedValue& o) const {
    return {value - o.value, key - o.key};
  }
};

// Piecewise-constant map from budget fraction to game value: value(f) is
// values[i] on (breakpoints[i], breakpoints[i+1]], values[0] applies at
// f = 0 as well (it is the empty-bundle value 0).
struct StepFunction {
  std::vector<Rat> breakpoints;
  std::vector<Rat> values;

  Rat at(const Rat& f) const;
};

struct ThresholdEntry {
  ItemMask bundle;  // over original item ids
  Rat value;        // exact bundle value under v
  Rat threshold;    // T(rank): guaranteed iff fraction > threshold
};

// All 2^m bundle ranks of the associated order, with their thresholds.
struct ThresholdVector {
  std::vector<ThresholdEntry> entries;  // ascending rank (entries[0] empty)
};

// Backward-induction solver for the two-player bidding game in which the
// agent bids first, the adversary sees the bid and either matches it
// (winning, ties to the adversary) or declines, and items are consumed in
// descending order of the associated valuation. State is compressed to
// (round, fraction of remaining budget); thresholds are exact rationals.
class BidSolver {
 public:
  // Items are solved in associated-value descending order. Throws
  // ResourceCapError when the item count exceeds `item_cap`.
  explicit BidSolver(const AdditiveValuation& v, int item_cap = 12);

  int item_count() const { return m_; }
  const OrderedValuation& ordered() const { return ordered_; }

  // Max-min value of the suffix game starting at round r (1-based; items of
  // rank r..m remain) when the agent holds fraction f of the remaining
  // budget total.
  PerturbedValue guaranteed(int r, const Rat& f) const;

  // A bid (normalized to remaining budget total 1) attaining guaranteed(r,f):
  // the smallest attaining bid when one exists, otherwise the midpoint of
  // the lowest attaining interval (the interval is open on the left).
  Rat canonical_bid(int r, const Rat& f) const;

  // Full-game threshold vector (round 1) and per-round value functions.
  ThresholdVector threshold_vector() const;
  StepFunction value_function(int r) const;
  std::vector<StepFunction> round_value_functions() const;

 private:
  struct Entry {
    PerturbedValue value;
    Rat threshold;     // achieve iff f > threshold (rank-1: f >= 0)
    ItemMask bundle;   // over ranks r..m, bit (rank-1)
  };

  // Threshold for reaching at least `target` from round r.
  // Returns nullopt when unreachable.
  std::optional<Rat> threshold_at_least(int r,
                                        const PerturbedValue& target) const;

  int m_;
  OrderedValuation ordered_;
  std::vector<PerturbedValue> item_pv_;       // by rank, 1-based at index 0
  std::vector<std::vector<Entry>> rounds_;    // rounds_[r-1], ascending value
};

// Convenience wrapper: thresholds plus per-round value functions.
struct TwoPlayerSolution {
  ThresholdVector thresholds;
  std::vector<StepFunction> round_values;
};

TwoPlayerSolution solve_two_player(const AdditiveValuation& v,
                                   int item_cap = 12);

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

// Worst-case-optimal play: each round solves the remaining two-player game
// at the current budget fraction (opponent budget bounded pessimistically
// by own lost bids) and places the canonical maximin bid.
Strategy optimal_strategy(const AdditiveValuation& v, const Rat& b,
                          int item_cap = 14);

// Bid the value (scaled by 1/v(M)) of the best remaining item, capped by
// the remaining budget.
Strategy bid_your_value_strategy(const AdditiveValuation& v, const Rat& b);

// The lookahead table strategy for entitlements in (1/3, 1/2]: item values
// x/72 are answered with bids f(x)/72, with all-in exceptions when the
// table bid is unaffordable or when winning reaches the half-TPS target,
// an all-items-large pre-check that bids 1/9 on the first eight rounds,
// and a bid-your-value endgame after an unaffordable loss.
// `lookahead_precheck` exists so tests can demonstrate that dropping the
// pre-check loses the guarantee.
Strategy k2_table_strategy(const AdditiveValuation& v, const Rat& b,
                           bool lookahead_precheck = true);

// Composite strategy guaranteeing value >= tps(v, hat(b)) / 2 against any
// opponent behavior: switches to worst-case-optimal play whenever its own
// budget exceeds the pessimistic bound on everyone else's, plays the table
// strategy in the k = 2 regime and a modified bid-your-value in the k >= 3
// regime.
Strategy safe_strategy(const AdditiveValuation& v, const Rat& b,
                       int item_cap = 14);

// Polynomial-time approximation: if every item is small, bid your value;
// otherwise solve the instance with its small-item tail equalized and play
// that optimal strategy over the large-item prefix, then bid your value.
// Guarantees the optimal value minus eps * v(M).
Strategy approx_optimal_strategy(const AdditiveValuation& v, const Rat& b,
                                 const Rat& eps, int item_cap = 14);

// ---------------------------------------------------------------------------
// Verification oracles
// ---------------------------------------------------------------------------

// Worst-case value of `strategy` over every adversary take/leave bit
// sequence in the two-player abstraction (items consumed in descending
// associated order; taking requires adversary budget >= the agent's bid).
Rat exhaustive_adversary_value(const AdditiveValuation& v, const Rat& b,
                               const Strategy& strategy, int item_cap = 20);

// Best value any monotone (non-increasing bids) strategy on a grid of
// multiples of 1/grid_denominator can guarantee against the take/leave
// adversary. Exact DP; the grid restriction only weakens the agent.
Rat best_monotone_grid_value(const AdditiveValuation& v, const Rat& b,
                             long grid_denominator);

}  // namespace fairshare
