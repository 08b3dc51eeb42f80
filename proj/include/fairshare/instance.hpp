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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "fairshare/rational.hpp"

namespace fairshare {

enum class Kind { Goods, Chores };

inline const char* kind_name(Kind k) {
  return k == Kind::Goods ? "goods" : "chores";
}

// Bundles are stored as bitmasks over item ids (bit j = item j). Item counts
// in mask-based code paths are capped well below 64 by resource guards.
using ItemMask = std::uint64_t;

// Additive valuation over goods (values) or chores (costs). Entries are
// non-negative; item ids are 0-based.
struct AdditiveValuation {
  std::vector<Rat> item_values;

  int size() const { return static_cast<int>(item_values.size()); }

  Rat total() const {
    Rat sum = 0;
    for (const Rat& v : item_values) sum += v;
    return sum;
  }

  Rat value_of(ItemMask bundle) const {
    Rat sum = 0;
    for (int j = 0; j < size(); ++j) {
      if (bundle >> j & 1) sum += item_values[j];
    }
    return sum;
  }

  Rat value_of(const std::vector<int>& bundle) const {
    Rat sum = 0;
    for (int j : bundle) sum += item_values[j];
    return sum;
  }
};

// Item ids sorted by non-increasing value, ties broken by ascending id.
// The induced strict bundle order treats a rank-r item as carrying an
// infinitesimal bonus of 2^(-r); bundles compare by (exact value, bonus).
struct OrderedValuation {
  AdditiveValuation base;
  std::vector<int> order;  // order[r] = item id of rank r+1

  int size() const { return base.size(); }

  // Bitmask keyed by rank: rank r (1-based) contributes bit (m - r), so a
  // larger key means a larger total perturbation.
  ItemMask perturbation_key(ItemMask bundle) const;
};

OrderedValuation order_items(const AdditiveValuation& v);

// Strict total order on bundles under the perturbed valuation. A strict
// value gap always decides; value ties fall through to the perturbation key.
std::strong_ordering compare_bundles(const OrderedValuation& v, ItemMask lhs,
                                     ItemMask rhs);

struct Agent {
  std::string name;
  AdditiveValuation valuation;
  Rat entitlement;  // responsibility, for chores
};

// A full allocation problem. Entitlements sum to exactly 1 and every
// valuation covers all item_count items.
struct Instance {
  Kind kind = Kind::Goods;
  int item_count = 0;
  std::vector<Agent> agents;

  int agent_count() const { return static_cast<int>(agents.size()); }
  const AdditiveValuation& valuation(int i) const {
    return agents[i].valuation;
  }
  const Rat& entitlement(int i) const { return agents[i].entitlement; }

  // Throws ParseError on any violated invariant.
  void validate() const;
};

// n disjoint bundles covering all of [m].
struct Allocation {
  std::vector<std::vector<int>> bundles;

  int agent_count() const { return static_cast<int>(bundles.size()); }
  void validate(int item_count) const;
};

Instance parse_instance(const std::string& json_text);
std::string serialize_instance(const Instance& inst);

}  // namespace fairshare
