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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fairshare/instance.hpp"

namespace fairshare {

// Visits all n^m complete allocations in a fixed odometer order. Throws
// ResourceCapError if n^m exceeds `cap`. The callback returns false to stop
// early.
void enumerate_allocations(int agents, int items,
                           const std::function<bool(const std::vector<int>&)>& visit,
                           double cap = 1e7);

struct FeasibilityResult {
  bool feasible;
  std::optional<Allocation> witness;  // set when feasible
};

// Searches for an allocation meeting per-agent share values: goods need
// v_i(S_i) >= share_i, chores need c_i(S_i) <= share_i.
FeasibilityResult check_feasibility(const Instance& inst,
                                    const std::vector<Rat>& shares,
                                    double cap = 1e7);

// Explicit table valuation over at most ~20 items; used only by tiny
// non-additive oracles and fixtures.
struct TableValuation {
  int item_count = 0;
  std::vector<Rat> table;  // indexed by bundle mask

  const Rat& value_of(ItemMask bundle) const { return table[bundle]; }
};

// A catalog instance together with the check its certificate must pass.
struct Fixture {
  std::string name;
  std::string summary;
  std::optional<Instance> instance;          // absent for non-additive pair
  std::vector<TableValuation> table_pair;    // the non-additive observation
  std::function<bool()> certify;
};

// Known fixture names:
//   goods-tightness-lb-n3, goods-tightness-lb-n4, chores-2domination-lb,
//   chores-3half-lb, chores-bobw-lb, nonmonotone, nonmonotone-entitled,
//   myopic-pair, lookahead, nonadditive-zero-share, sylvester-tight-n3
Fixture fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace fairshare
