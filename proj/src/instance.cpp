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

#include "fairshare/instance.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

namespace fairshare {

OrderedValuation order_items(const AdditiveValuation& v) {
  OrderedValuation ov;
  ov.base = v;
  ov.order.resize(v.item_values.size());
  std::iota(ov.order.begin(), ov.order.end(), 0);
  std::stable_sort(ov.order.begin(), ov.order.end(), [&](int a, int b) {
    if (v.item_values[a] != v.item_values[b]) {
      return v.item_values[a] > v.item_values[b];
    }
    return a < b;
  });
  return ov;
}

ItemMask OrderedValuation::perturbation_key(ItemMask bundle) const {
  const int m = size();
  ItemMask key = 0;
  for (int r = 0; r < m; ++r) {
    if (bundle >> order[r] & 1) key |= ItemMask{1} << (m - 1 - r);
  }
  return key;
}

std::strong_ordering compare_bundles(const OrderedValuation& v, ItemMask lhs,
                                     ItemMask rhs) {
  if (lhs == rhs) return std::strong_ordering::equal;
  const Rat lv = v.base.value_of(lhs);
  const Rat rv = v.base.value_of(rhs);
  if (lv != rv) return lv < rv ? std::strong_ordering::less
                               : std::strong_ordering::greater;
  const ItemMask lk = v.perturbation_key(lhs);
  const ItemMask rk = v.perturbation_key(rhs);
  return lk < rk ? std::strong_ordering::less : std::strong_ordering::greater;
}

void Instance::validate() const {
  if (agents.empty()) throw ParseError("instance has no agents");
  if (item_count < 0) throw ParseError("negative item count");
  Rat sum = 0;
  for (const Agent& a : agents) {
    if (a.valuation.size() != item_count) {
      throw ParseError("valuation of agent '" + a.name + "' has " +
                       std::to_string(a.valuation.size()) + " entries, expected " +
                       std::to_string(item_count));
    }
    for (const Rat& x : a.valuation.item_values) {
      if (x < 0) {
        throw ParseError("negative item value for agent '" + a.name + "'");
      }
    }
    if (a.entitlement <= 0 || a.entitlement > 1) {
      throw ParseError("entitlement of agent '" + a.name +
                       "' outside (0,1]: " + rat_to_string(a.entitlement));
    }
    sum += a.entitlement;
  }
  if (sum != 1) {
    throw ParseError("entitlement sum " + rat_to_string(sum) + " != 1");
  }
}

void Allocation::validate(int item_count) const {
  std::vector<int> seen(item_count, 0);
  for (const auto& bundle : bundles) {
    for (int j : bundle) {
      if (j < 0 || j >= item_count) {
        throw std::logic_error("allocation refers to unknown item " +
                               std::to_string(j));
      }
      if (seen[j]++) {
        throw std::logic_error("item " + std::to_string(j) +
                               " allocated twice");
      }
    }
  }
  for (int j = 0; j < item_count; ++j) {
    if (!seen[j]) {
      throw std::logic_error("item " + std::to_string(j) + " unallocated");
    }
  }
}

namespace {

Rat rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return make_rat(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected rational (int or string), got " + j.dump());
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("kind")) throw ParseError("missing \"kind\"");
  const std::string kind = j["kind"].get<std::string>();

  Instance inst;
  if (kind == "goods") {
    inst.kind = Kind::Goods;
  } else if (kind == "chores") {
    inst.kind = Kind::Chores;
  } else {
    throw ParseError("unknown kind '" + kind + "'");
  }
  if (!j.contains("items")) throw ParseError("missing \"items\"");
  inst.item_count = j["items"].get<int>();
  if (!j.contains("agents") || !j["agents"].is_array()) {
    throw ParseError("missing \"agents\" array");
  }
  int idx = 0;
  for (const auto& ja : j["agents"]) {
    Agent a;
    a.name = ja.contains("name") ? ja["name"].get<std::string>()
                                 : "agent" + std::to_string(idx);
    if (!ja.contains("b")) throw ParseError("agent missing \"b\"");
    a.entitlement = rational_from_json(ja["b"]);
    if (!ja.contains("v") || !ja["v"].is_array()) {
      throw ParseError("agent missing \"v\" array");
    }
    for (const auto& jv : ja["v"]) {
      a.valuation.item_values.push_back(rational_from_json(jv));
    }
    inst.agents.push_back(std::move(a));
    ++idx;
  }
  inst.validate();
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  nlohmann::json j;
  j["kind"] = kind_name(inst.kind);
  j["items"] = inst.item_count;
  j["agents"] = nlohmann::json::array();
  for (const Agent& a : inst.agents) {
    nlohmann::json ja;
    ja["name"] = a.name;
    ja["b"] = rat_to_string(a.entitlement);
    ja["v"] = nlohmann::json::array();
    for (const Rat& v : a.valuation.item_values) {
      ja["v"].push_back(rat_to_string(v));
    }
    j["agents"].push_back(std::move(ja));
  }
  return j.dump(2);
}

}  // namespace fairshare
