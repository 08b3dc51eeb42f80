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

#include "fairshare/bidding.hpp"

#include <algorithm>
#include <cassert>
#include <random>

#include "fairshare/shares.hpp"

namespace fairshare {

// ---------------------------------------------------------------------------
// Game engine
// ---------------------------------------------------------------------------

GameResult run_game(const Instance& inst,
                    const std::vector<Strategy>& strategies,
                    TieBreak tiebreak) {
  const int n = inst.agent_count();
  const int m = inst.item_count;
  if (static_cast<int>(strategies.size()) != n) {
    throw std::invalid_argument("run_game: one strategy per agent required");
  }

  std::vector<int> priority(n);
  for (int i = 0; i < n; ++i) priority[i] = i;
  if (tiebreak.mode == TieBreak::Mode::SeededPermutation) {
    std::mt19937_64 gen(tiebreak.seed);
    for (int i = n - 1; i > 0; --i) {
      std::swap(priority[i], priority[gen() % (i + 1)]);
    }
  }
  std::vector<int> rank_of(n);
  for (int i = 0; i < n; ++i) rank_of[priority[i]] = i;

  GameState st;
  st.item_count = m;
  for (int j = 0; j < m; ++j) st.remaining.push_back(j);
  for (const Agent& a : inst.agents) st.budgets.push_back(a.entitlement);

  GameResult result;
  result.allocation.bundles.assign(n, {});

  for (st.round = 1; st.round <= m; ++st.round) {
    std::vector<BidAction> actions(n);
    for (int i = 0; i < n; ++i) {
      actions[i] = strategies[i](st, i);
      if (actions[i].bid < 0 || actions[i].bid > st.budgets[i]) {
        throw InvalidStrategyAction(
            "agent " + std::to_string(i) + " bid " +
            rat_to_string(actions[i].bid) + " outside [0, budget]");
      }
    }
    int winner = -1;
    for (int i = 0; i < n; ++i) {
      if (winner == -1 || actions[i].bid > actions[winner].bid ||
          (actions[i].bid == actions[winner].bid &&
           rank_of[i] < rank_of[winner])) {
        winner = i;
      }
    }
    const int item = actions[winner].pick;
    if (std::find(st.remaining.begin(), st.remaining.end(), item) ==
        st.remaining.end()) {
      throw InvalidStrategyAction("agent " + std::to_string(winner) +
                                  " picked unavailable item " +
                                  std::to_string(item));
    }

    RoundRecord rec;
    rec.round = st.round;
    for (int i = 0; i < n; ++i) rec.bids.push_back(actions[i].bid);
    rec.winner = winner;
    rec.item = item;
    rec.payment = actions[winner].bid;
    st.budgets[winner] -= rec.payment;
    st.remaining.erase(
        std::find(st.remaining.begin(), st.remaining.end(), item));
    result.allocation.bundles[winner].push_back(item);
    st.history.push_back(std::move(rec));
  }
  result.history = st.history;
  result.allocation.validate(m);
  return result;
}

// ---------------------------------------------------------------------------
// Two-player solver
// ---------------------------------------------------------------------------

Rat StepFunction::at(const Rat& f) const {
  // values[i] applies on (breakpoints[i], breakpoints[i+1]]; values[0]
  // extends down to f = 0.
  std::size_t lo = 0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i] < f) lo = i; else break;
  }
  return values[lo];
}

BidSolver::BidSolver(const AdditiveValuation& v, int item_cap)
    : m_(v.size()) {
  if (m_ > item_cap) {
    throw ResourceCapError("two-player solver: item count " +
                           std::to_string(m_) + " exceeds cap " +
                           std::to_string(item_cap));
  }
  if (m_ > 62) throw ResourceCapError("two-player solver: mask overflow");
  ordered_ = order_items(v);
  item_pv_.resize(m_);
  for (int r = 0; r < m_; ++r) {
    item_pv_[r] = {v.item_values[ordered_.order[r]],
                   std::int64_t{1} << (m_ - 1 - r)};
  }

  rounds_.assign(m_ + 1, {});
  rounds_[m_].push_back(Entry{PerturbedValue{Rat(0), 0}, Rat(0), 0});

  for (int r = m_; r >= 1; --r) {
    const PerturbedValue c = item_pv_[r - 1];
    const ItemMask item_bit = ItemMask{1} << (r - 1);
    std::vector<Entry> table;
    table.reserve(rounds_[r].size() * 2);
    for (const Entry& e : rounds_[r]) {
      table.push_back(Entry{e.value, Rat(0), e.bundle});
      table.push_back(Entry{e.value + c, Rat(0), e.bundle | item_bit});
    }
    std::sort(table.begin(), table.end(),
              [](const Entry& a, const Entry& b) { return a.value < b.value; });

    const PerturbedValue zero{Rat(0), 0};
    for (std::size_t i = 1; i < table.size(); ++i) {
      Entry& entry = table[i];
      const PerturbedValue& x = entry.value;

      // Win branch: pay q, continue at (f-q)/(1-q); needs value x - c.
      std::optional<Rat> win_threshold;  // nullopt = any continuation works
      const PerturbedValue deficit = x - c;
      if (zero < deficit) {
        auto t = threshold_at_least(r + 1, deficit);
        if (!t) {
          throw std::logic_error("solver: win-branch deficit unreachable");
        }
        win_threshold = *t;
      }
      // Loss branch: adversary pays q, continue at f/(1-q); needs value x.
      std::optional<Rat> loss_threshold = threshold_at_least(r + 1, x);

      // Threshold when the adversary can match (bid at most 1-f): the agent
      // needs a bid strictly above the loss bound and strictly below the
      // win bound.
      std::optional<Rat> match_thr;
      if (loss_threshold) {
        const Rat& tl = *loss_threshold;
        if (!win_threshold) {
          match_thr = Rat(tl / (1 + tl));
        } else {
          const Rat& tw = *win_threshold;
          const Rat cross = tl / (1 + tl - tw);
          match_thr = std::max(tw, cross);
        }
      }
      // Threshold when the agent overbids the adversary's whole budget.
      Rat overbid_thr(1, 2);
      if (win_threshold) overbid_thr = Rat(1) / (2 - *win_threshold);

      entry.threshold =
          match_thr ? std::min(*match_thr, overbid_thr) : overbid_thr;
      if (entry.threshold <= table[i - 1].threshold) {
        throw std::logic_error("solver: thresholds not strictly increasing");
      }
    }
    rounds_[r - 1] = std::move(table);
  }
}

std::optional<Rat> BidSolver::threshold_at_least(
    int r, const PerturbedValue& target) const {
  const std::vector<Entry>& table = rounds_[r - 1];
  auto it = std::lower_bound(
      table.begin(), table.end(), target,
      [](const Entry& e, const PerturbedValue& t) { return e.value < t; });
  if (it == table.end()) return std::nullopt;
  return it->threshold;
}

PerturbedValue BidSolver::guaranteed(int r, const Rat& f) const {
  const std::vector<Entry>& table = rounds_[r - 1];
  auto it = std::partition_point(
      table.begin(), table.end(),
      [&](const Entry& e) { return e.threshold < f; });
  if (it == table.begin()) return table.front().value;
  return std::prev(it)->value;
}

Rat BidSolver::canonical_bid(int r, const Rat& f) const {
  const PerturbedValue zero{Rat(0), 0};
  const PerturbedValue target = guaranteed(r, f);
  if (target == zero) return 0;

  const PerturbedValue c = item_pv_[r - 1];
  // Upper bound from the win branch: q < (f - tw)/(1 - tw), or unbounded.
  std::optional<Rat> upper;
  const PerturbedValue deficit = target - c;
  if (zero < deficit) {
    const Rat tw = *threshold_at_least(r + 1, deficit);
    upper = (f - tw) / (1 - tw);
  }
  // Lower bound from the loss branch: q > 1 - f/tl, or branch impossible.
  std::optional<Rat> lower;
  bool loss_possible = false;
  if (auto tl = threshold_at_least(r + 1, target)) {
    loss_possible = true;
    lower = 1 - f / *tl;
  }

  const Rat complement = 1 - f;
  const Rat cap = std::min(f, complement);
  if (loss_possible) {
    const Rat lo = *lower;
    const Rat hi = upper ? std::min(*upper, cap) : cap;
    const bool hi_closed = !upper || cap < *upper;  // q = cap is attainable
    if (lo < 0 && (0 < hi || (hi == 0 && hi_closed))) return 0;
    if (lo < hi) return (lo + hi) / 2;
  }
  // Overbid interval (1-f, min(upper, f)].
  if (f > complement) {
    const Rat hi = upper ? std::min(*upper, f) : f;
    if (complement < hi) return (complement + hi) / 2;
  }
  throw std::logic_error("canonical_bid: no attaining bid found");
}

ThresholdVector BidSolver::threshold_vector() const {
  ThresholdVector tv;
  for (const Entry& e : rounds_[0]) {
    ItemMask original = 0;
    for (int r = 0; r < m_; ++r) {
      if (e.bundle >> r & 1) original |= ItemMask{1} << ordered_.order[r];
    }
    tv.entries.push_back(ThresholdEntry{original, e.value.value, e.threshold});
  }
  return tv;
}

StepFunction BidSolver::value_function(int r) const {
  StepFunction sf;
  for (const Entry& e : rounds_[r - 1]) {
    sf.breakpoints.push_back(e.threshold);
    sf.values.push_back(e.value.value);
  }
  return sf;
}

std::vector<StepFunction> BidSolver::round_value_functions() const {
  std::vector<StepFunction> out;
  for (int r = 1; r <= m_; ++r) out.push_back(value_function(r));
  return out;
}

TwoPlayerSolution solve_two_player(const AdditiveValuation& v, int item_cap) {
  BidSolver solver(v, item_cap);
  return TwoPlayerSolution{solver.threshold_vector(),
                           solver.round_value_functions()};
}

// ---------------------------------------------------------------------------
// Strategy helpers
// ---------------------------------------------------------------------------

namespace {

// Pessimistic upper bound on everyone else's remaining budget: start from
// 1 - b and charge every lost round at the agent's own bid.
Rat pessimistic_opponent_budget(const GameState& st, int self, const Rat& b) {
  Rat bound = 1 - b;
  for (const RoundRecord& rec : st.history) {
    if (rec.winner != self) bound -= rec.bids[self];
  }
  return bound;
}

Rat own_value_won(const GameState& st, int self, const AdditiveValuation& v) {
  Rat sum = 0;
  for (const RoundRecord& rec : st.history) {
    if (rec.winner == self) sum += v.item_values[rec.item];
  }
  return sum;
}

struct RankTable {
  std::vector<int> rank_of;  // item id -> rank (0-based)

  explicit RankTable(const OrderedValuation& ov) {
    rank_of.assign(ov.order.size(), 0);
    for (std::size_t r = 0; r < ov.order.size(); ++r) rank_of[ov.order[r]] = r;
  }

  int best(const std::vector<int>& remaining) const {
    int best_item = -1;
    for (int j : remaining) {
      if (best_item == -1 || rank_of[j] < rank_of[best_item]) best_item = j;
    }
    return best_item;
  }
};

// Shared memo of sub-game solvers keyed by the remaining item set.
struct SolverCache {
  const AdditiveValuation full;
  const int item_cap;
  std::map<std::vector<int>, std::shared_ptr<BidSolver>> solved;

  SolverCache(AdditiveValuation v, int cap) : full(std::move(v)), item_cap(cap) {}

  BidSolver& for_items(std::vector<int> remaining) {
    std::sort(remaining.begin(), remaining.end());
    auto it = solved.find(remaining);
    if (it != solved.end()) return *it->second;
    AdditiveValuation sub;
    for (int j : remaining) sub.item_values.push_back(full.item_values[j]);
    auto solver = std::make_shared<BidSolver>(sub, item_cap);
    return *solved.emplace(std::move(remaining), std::move(solver))
                .first->second;
  }
};

Rat maximin_bid(SolverCache& cache, const GameState& st, const Rat& beta,
                const Rat& opponent_bound) {
  const Rat total = beta + opponent_bound;
  if (total <= 0) return 0;
  BidSolver& solver = cache.for_items(st.remaining);
  const Rat f = beta / total;
  return solver.canonical_bid(1, f) * total;
}

}  // namespace

Strategy optimal_strategy(const AdditiveValuation& v, const Rat& b,
                          int item_cap) {
  auto cache = std::make_shared<SolverCache>(v, item_cap);
  auto ranks = std::make_shared<RankTable>(order_items(v));
  return [cache, ranks, v, b](const GameState& st, int self) -> BidAction {
    const Rat beta = st.budgets[self];
    const Rat bound = pessimistic_opponent_budget(st, self, b);
    BidAction act;
    act.bid = maximin_bid(*cache, st, beta, bound);
    act.pick = ranks->best(st.remaining);
    return act;
  };
}

Strategy bid_your_value_strategy(const AdditiveValuation& v, const Rat& b) {
  auto ranks = std::make_shared<RankTable>(order_items(v));
  const Rat total = v.total();
  (void)b;
  return [ranks, v, total](const GameState& st, int self) -> BidAction {
    BidAction act;
    act.pick = ranks->best(st.remaining);
    if (total == 0) {
      act.bid = 0;
      return act;
    }
    const Rat u = v.item_values[act.pick] / total;
    act.bid = std::min(st.budgets[self], u);
    return act;
  };
}

namespace {

// Lookahead table: item of value x/72 is answered with a bid of f(x)/72.
Rat table_bid(const Rat& x) {
  if (x < 8) return x / 72;
  if (x < 9) return make_rat(8, 72);
  if (x < 13) return (x - 1) / 72;
  if (x < 14) return make_rat(12, 72);
  return (x - 2) / 72;  // 14 <= x < 18
}

// Composite machine behind k2_table_strategy and safe_strategy. All modes
// share the worst-case-optimal switch: once the agent's budget exceeds the
// pessimistic bound on everyone else's, she plays the exact subgame solver
// for the rest of the game.
struct SafeMachine {
  AdditiveValuation v;
  Rat b;
  int k = 1;
  Rat tau;        // tps(v, 1/k)
  Rat sigma;      // 1/(k*tau); item value u maps to money sigma*u
  Rat target;     // sigma-scaled goal: 1/(2k)
  bool eight_mode = false;
  std::shared_ptr<SolverCache> cache;
  std::shared_ptr<RankTable> ranks;

  SafeMachine(const AdditiveValuation& valuation, const Rat& entitlement,
              int item_cap)
      : v(valuation), b(entitlement) {
    cache = std::make_shared<SolverCache>(v, item_cap);
    ranks = std::make_shared<RankTable>(order_items(v));
    k = unit_upper_bound_k(b);
    tau = tps(v, Rat(1, k));
    if (tau > 0) {
      sigma = Rat(1, k) / tau;
      target = Rat(1, 2 * k);
      if (k == 2 && v.size() >= 8) {
        // Eighth most valuable item; if it is still large, flat 1/9 bids on
        // the first eight rounds already secure the goal.
        OrderedValuation ov = order_items(v);
        const Rat eighth = sigma * v.item_values[ov.order[7]];
        eight_mode = eighth >= Rat(1, 12);
      }
    }
  }

  enum class Mode { Optimal, Table, Byv };

  struct Snapshot {
    Rat beta;
    Rat bound;
    Rat won_sigma;
    int wins = 0;
    bool optimal_sticky = false;
    bool byv_sticky = false;
  };

  // The bid the machine places from a given snapshot; `round` is 1-based.
  Rat decide(const Snapshot& s, int round, const std::vector<int>& remaining,
             const GameState& st, bool* unaffordable_all_in) const {
    if (unaffordable_all_in) *unaffordable_all_in = false;
    if (tau == 0) return 0;
    if (s.optimal_sticky || s.beta > s.bound) {
      return maximin_bid(*cache, st, s.beta, s.bound);
    }
    const int best = ranks->best(remaining);
    const Rat u = sigma * v.item_values[best];
    // Winning the best remaining item reaches the goal: stake everything.
    if (s.won_sigma + u >= target) return s.beta;
    if (k == 2) {
      if (eight_mode && round <= 8) return std::min(s.beta, Rat(1, 9));
      if (s.byv_sticky) return std::min(s.beta, u);
      const Rat bid = table_bid(72 * u);
      if (bid > s.beta) {
        if (unaffordable_all_in) *unaffordable_all_in = true;
        return s.beta;
      }
      return bid;
    }
    // k >= 3: full budget while items exceed it, a flat discounted bid on
    // large items, plain bid-your-value below that.
    if (u > s.beta) return s.beta;
    if (u >= Rat(1, 2 * (k + 1))) return std::min(s.beta, Rat(1, 2 * (k + 1)));
    return std::min(s.beta, u);
  }

  BidAction act(const GameState& st, int self) const {
    // Replay own history through the machine to recover the sticky flags.
    Snapshot s;
    s.beta = b;
    s.bound = 1 - b;
    s.won_sigma = 0;

    std::vector<int> remaining(st.item_count);
    for (int j = 0; j < st.item_count; ++j) remaining[j] = j;
    GameState replay;
    replay.item_count = st.item_count;
    replay.remaining = remaining;
    replay.budgets = {s.beta, s.bound};

    int round = 1;
    for (const RoundRecord& rec : st.history) {
      if (!s.optimal_sticky && s.beta > s.bound) s.optimal_sticky = true;
      bool unaffordable = false;
      if (!s.optimal_sticky && !s.byv_sticky) {
        decide(s, round, replay.remaining, replay, &unaffordable);
      }
      if (rec.winner == self) {
        s.beta -= rec.payment;
        s.won_sigma += (tau == 0 ? Rat(0) : sigma * v.item_values[rec.item]);
        ++s.wins;
      } else {
        s.bound -= rec.bids[self];
        if (unaffordable && s.wins >= 1) s.byv_sticky = true;
      }
      replay.remaining.erase(std::find(replay.remaining.begin(),
                                       replay.remaining.end(), rec.item));
      replay.budgets = {s.beta, s.bound};
      replay.history.push_back(rec);
      ++round;
    }
    if (!s.optimal_sticky && s.beta > s.bound) s.optimal_sticky = true;

    BidAction act;
    act.pick = ranks->best(st.remaining);
    act.bid = decide(s, round, st.remaining, st, nullptr);
    return act;
  }
};

}  // namespace

Strategy k2_table_strategy(const AdditiveValuation& v, const Rat& b,
                           bool lookahead_precheck) {
  if (!(b > Rat(1, 3) && b <= Rat(1, 2))) {
    throw std::invalid_argument("k2_table_strategy requires 1/3 < b <= 1/2");
  }
  auto machine = std::make_shared<SafeMachine>(v, b, 14);
  if (!lookahead_precheck) machine->eight_mode = false;
  return [machine](const GameState& st, int self) {
    return machine->act(st, self);
  };
}

Strategy safe_strategy(const AdditiveValuation& v, const Rat& b,
                       int item_cap) {
  auto machine = std::make_shared<SafeMachine>(v, b, item_cap);
  return [machine](const GameState& st, int self) {
    return machine->act(st, self);
  };
}

Strategy approx_optimal_strategy(const AdditiveValuation& v, const Rat& b,
                                 const Rat& eps, int item_cap) {
  if (eps <= 0) throw std::invalid_argument("approx: eps must be positive");
  const Rat total = v.total();
  auto ranks = std::make_shared<RankTable>(order_items(v));
  if (total == 0) {
    return [ranks](const GameState& st, int) -> BidAction {
      return BidAction{Rat(0), ranks->best(st.remaining)};
    };
  }

  const Rat delta = eps / 4;
  OrderedValuation ov = order_items(v);
  const int m = v.size();

  // Largest prefix of items with normalized value above delta.
  int prefix = 0;
  Rat prefix_sum = 0;
  while (prefix < m && v.item_values[ov.order[prefix]] / total > delta) {
    prefix_sum += v.item_values[ov.order[prefix]] / total;
    ++prefix;
  }

  std::shared_ptr<BidSolver> prefix_solver;
  if (prefix > 0) {
    // Equalize the tail: same total, every item at most delta. The tail of
    // the real instance has at most m - prefix items, so this stays small.
    AdditiveValuation approx_v;
    for (int r = 0; r < prefix; ++r) {
      approx_v.item_values.push_back(v.item_values[ov.order[r]] / total);
    }
    const Rat rest = 1 - prefix_sum;
    if (rest > 0) {
      const long tail = to_long(rat_ceil(rest / delta));
      for (long i = 0; i < tail; ++i) {
        approx_v.item_values.push_back(rest / tail);
      }
    }
    prefix_solver = std::make_shared<BidSolver>(approx_v, item_cap);
  }

  return [ranks, v, b, prefix, prefix_solver](const GameState& st,
                                              int self) -> BidAction {
    BidAction act;
    act.pick = ranks->best(st.remaining);
    const Rat beta = st.budgets[self];
    const Rat bound = pessimistic_opponent_budget(st, self, b);
    const int round = static_cast<int>(st.history.size()) + 1;
    if (round <= prefix) {
      const Rat total_budget = beta + bound;
      if (total_budget <= 0) {
        act.bid = 0;
        return act;
      }
      act.bid =
          prefix_solver->canonical_bid(round, beta / total_budget) *
          total_budget;
      return act;
    }
    // Tail phase: bid your value with budgets and remaining values rescaled
    // to sum to 1.
    Rat remaining_value = 0;
    for (int j : st.remaining) remaining_value += v.item_values[j];
    if (remaining_value == 0) {
      act.bid = 0;
      return act;
    }
    const Rat scaled_bid =
        v.item_values[act.pick] / remaining_value * (beta + bound);
    act.bid = std::min(beta, scaled_bid);
    return act;
  };
}

// ---------------------------------------------------------------------------
// Verification oracles
// ---------------------------------------------------------------------------

namespace {

struct AdversarySearch {
  const AdditiveValuation* v;
  const Strategy* strategy;
  const RankTable* ranks;
  GameState st;

  Rat run() {
    if (st.remaining.empty()) return 0;
    BidAction act = (*strategy)(st, 0);
    if (act.bid < 0 || act.bid > st.budgets[0]) {
      throw InvalidStrategyAction("adversary oracle: bid " +
                                  rat_to_string(act.bid) +
                                  " outside [0, budget]");
    }
    const int item = ranks->best(st.remaining);
    if (act.pick != item) {
      throw InvalidStrategyAction(
          "adversary oracle: strategies must pick the top-ranked item");
    }
    const auto pos =
        std::find(st.remaining.begin(), st.remaining.end(), item);
    const std::size_t idx = pos - st.remaining.begin();

    // Branch 1: adversary declines, agent wins and pays.
    st.remaining.erase(st.remaining.begin() + idx);
    RoundRecord rec{st.round, {act.bid, Rat(0)}, 0, item, act.bid};
    st.history.push_back(rec);
    st.budgets[0] -= act.bid;
    ++st.round;
    Rat best = v->item_values[item] + run();
    --st.round;
    st.budgets[0] += act.bid;
    st.history.pop_back();

    // Branch 2: adversary matches and takes, paying the agent's bid.
    if (st.budgets[1] >= act.bid) {
      RoundRecord take{st.round, {act.bid, act.bid}, 1, item, act.bid};
      st.history.push_back(take);
      st.budgets[1] -= act.bid;
      ++st.round;
      best = std::min(best, run());
      --st.round;
      st.budgets[1] += act.bid;
      st.history.pop_back();
    }
    st.remaining.insert(st.remaining.begin() + idx, item);
    return best;
  }
};

}  // namespace

Rat exhaustive_adversary_value(const AdditiveValuation& v, const Rat& b,
                               const Strategy& strategy, int item_cap) {
  const int m = v.size();
  if (m > item_cap) {
    throw ResourceCapError("exhaustive adversary: item count exceeds cap");
  }
  RankTable ranks(order_items(v));
  AdversarySearch search;
  search.v = &v;
  search.strategy = &strategy;
  search.ranks = &ranks;
  search.st.item_count = m;
  for (int j = 0; j < m; ++j) search.st.remaining.push_back(j);
  search.st.budgets = {b, 1 - b};
  search.st.round = 1;
  return search.run();
}

Rat best_monotone_grid_value(const AdditiveValuation& v, const Rat& b,
                             long grid_denominator) {
  const int m = v.size();
  OrderedValuation ov = order_items(v);
  std::vector<Rat> w(m);
  for (int r = 0; r < m; ++r) w[r] = v.item_values[ov.order[r]];

  const long D = grid_denominator;
  const long agent_cap = to_long(rat_floor(b * D));
  const Rat adversary_budget = 1 - b;
  const long adv_cap = to_long(rat_floor(adversary_budget * D));

  const long last_states = agent_cap + 1;
  const long sa_states = agent_cap + 1;
  const long sv_states = adv_cap + 1;
  const std::size_t state_count = static_cast<std::size_t>(m + 1) *
                                  sa_states * sv_states * last_states;
  std::vector<std::optional<Rat>> memo(state_count);
  auto index = [&](int r, long sa, long sv, long last) {
    return ((static_cast<std::size_t>(r) * sa_states + sa) * sv_states + sv) *
               last_states +
           last;
  };

  std::function<Rat(int, long, long, long)> rec = [&](int r, long sa, long sv,
                                                      long last) -> Rat {
    if (r == m) return 0;
    auto& slot = memo[index(r, sa, sv, last)];
    if (slot) return *slot;
    Rat best(-1);
    const long q_max = std::min(last, agent_cap - sa);
    for (long q = 0; q <= q_max; ++q) {
      Rat value = w[r] + rec(r + 1, sa + q, sv, q);
      if (make_rat(sv + q, D) <= adversary_budget) {
        value = std::min(value, rec(r + 1, sa, sv + q, q));
      }
      best = std::max(best, value);
    }
    slot = best;
    return best;
  };
  return rec(0, 0, 0, agent_cap);
}

}  // namespace fairshare
