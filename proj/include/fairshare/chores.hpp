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
#include <vector>

#include "fairshare/instance.hpp"

namespace fairshare {

// Reverse picking sequence: pi[r-1] is the agent who picks when r chores
// remain, so execution starts at pi[m-1] and ends at pi[0]. Satisfies the
// spreading property: an agent with responsibility b <= 1/k appears at most
// j times among the first j*k entries.
struct PickingSequence {
  std::vector<int> pi;

  int rounds() const { return static_cast<int>(pi.size()); }
  bool satisfies_spreading(const std::vector<Rat>& responsibilities) const;
};

// How the next picker is chosen among agents with positive debt.
enum class DebtSelectionRule {
  MaxDebt,     // maximum debt, lowest index on ties (default)
  LowestIndex  // lowest-indexed agent with positive debt
};

PickingSequence build_picking_sequence(
    const std::vector<Rat>& responsibilities, int m,
    DebtSelectionRule rule = DebtSelectionRule::MaxDebt);

// Deterministic chore assignment realizing the RRR share: execute the
// picking sequence in reverse, each pick taking the agent's cheapest
// remaining chore (ties: lowest item id).
Allocation assign_rrr(const Instance& inst,
                      DebtSelectionRule rule = DebtSelectionRule::MaxDebt);

// Fractional subagent-coupon matching (doubly stochastic square matrix).
struct CouponMatching {
  int main_coupons = 0;            // m
  int aux_coupons = 0;             // t
  std::vector<int> subagent_owner;  // row -> agent id
  std::vector<std::vector<Rat>> fractions;  // row x coupon
};

CouponMatching build_coupon_matching(const std::vector<Rat>& responsibilities,
                                     int m);

struct WeightedMatching {
  Rat weight;
  std::vector<int> coupon_of_row;  // row -> matched coupon column
};

// Birkhoff-von Neumann peeling: repeatedly extract a perfect matching on
// the positive-fraction bipartite graph, weight it by the minimum matched
// fraction, subtract, and continue. At most edge-count rounds; weights sum
// to 1 exactly.
std::vector<WeightedMatching> bvn_decompose(const CouponMatching& matching);

struct RandomizedAssignment {
  struct Outcome {
    Rat weight;
    Allocation allocation;
  };
  std::vector<Outcome> outcomes;

  // Exact marginal probability that (1-based) coupon r goes to agent i, as
  // realized by the decomposition; empty unless produced by assign_bobw.
  std::vector<std::vector<Rat>> coupon_marginals;  // coupon x agent

  // Draws one outcome with a seeded 64-bit generator: a uniform draw in
  // [0,1) (as the exact rational draw/2^64) mapped through the cumulative
  // weights.
  const Outcome& sample(std::uint64_t seed) const;
};

// Best-of-both-worlds randomized assignment: coupons allocated fractionally
// by responsibility, split over subagents, BvN-decomposed; each matching
// induces a deterministic assignment where the holder of coupon r picks her
// cheapest remaining chore when r chores remain.
RandomizedAssignment assign_bobw(const Instance& inst);

}  // namespace fairshare
