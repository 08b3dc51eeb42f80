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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairshare/bidding.hpp"
#include "fairshare/chores.hpp"
#include "fairshare/goods_exante.hpp"
#include "fairshare/instance.hpp"
#include "fairshare/oracles.hpp"
#include "fairshare/personalized.hpp"
#include "fairshare/shares.hpp"

namespace {

using nlohmann::json;
using namespace fairshare;

constexpr int kExitUsage = 1;
constexpr int kExitVerificationFailed = 2;
constexpr int kExitResourceCap = 3;

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

json rat_json(const Rat& r) { return rat_to_string(r); }

json allocation_json(const Allocation& alloc) {
  json out = json::array();
  for (const auto& bundle : alloc.bundles) {
    auto sorted = bundle;
    std::sort(sorted.begin(), sorted.end());
    out.push_back(sorted);
  }
  return out;
}

json mask_json(ItemMask mask, int m) {
  json out = json::array();
  for (int j = 0; j < m; ++j) {
    if (mask >> j & 1) out.push_back(j);
  }
  return out;
}

json history_json(const std::vector<RoundRecord>& history) {
  json out = json::array();
  for (const RoundRecord& rec : history) {
    json jr;
    jr["round"] = rec.round;
    jr["bids"] = json::array();
    for (const Rat& bid : rec.bids) jr["bids"].push_back(rat_json(bid));
    jr["winner"] = rec.winner;
    jr["item"] = rec.item;
    jr["payment"] = rat_json(rec.payment);
    out.push_back(std::move(jr));
  }
  return out;
}

Strategy make_strategy(const std::string& name, const AdditiveValuation& v,
                       const Rat& b, const Rat& eps) {
  if (name == "safe") return safe_strategy(v, b);
  if (name == "optimal") return optimal_strategy(v, b);
  if (name == "bid-your-value") return bid_your_value_strategy(v, b);
  if (name == "k2-table") return k2_table_strategy(v, b);
  if (name == "approx-optimal") return approx_optimal_strategy(v, b, eps);
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

int cmd_share(const std::string& path, const std::string& kind_name,
              int agent, int k_override, double cap) {
  Instance inst = load_instance(path);
  if (agent < 0 || agent >= inst.agent_count()) {
    throw std::invalid_argument("agent index out of range");
  }
  auto kind = share_kind_from_name(kind_name);
  if (!kind) throw std::invalid_argument("unknown share kind '" + kind_name + "'");
  const AdditiveValuation& v = inst.valuation(agent);
  const Rat& b = inst.entitlement(agent);

  json out;
  out["kind"] = kind_name;
  out["agent"] = agent;
  switch (*kind) {
    case ShareKind::PS:
      out["value"] = rat_json(proportional_share(v, b));
      break;
    case ShareKind::MES:  // equals PS for additive valuations
      out["value"] = rat_json(proportional_share(v, b));
      break;
    case ShareKind::MMS: {
      const int k = k_override > 0
                        ? k_override
                        : (inst.kind == Kind::Goods
                               ? unit_upper_bound_k(b)
                               : unit_lower_bound_k(b) + 1);
      MmsResult r = mms_partition(v, k, inst.kind, cap);
      out["k"] = k;
      out["value"] = rat_json(r.value);
      out["witness"] = allocation_json(Allocation{r.partition});
      break;
    }
    case ShareKind::TPS:
      out["value"] = rat_json(tps(v, b));
      break;
    case ShareKind::RRR:
      out["value"] = rat_json(rrr_share(v, b));
      break;
    case ShareKind::MMS_HAT: {
      MmsResult r = mms_partition(v, unit_upper_bound_k(b), Kind::Goods, cap);
      out["value"] = rat_json(r.value);
      out["witness"] = allocation_json(Allocation{r.partition});
      break;
    }
    case ShareKind::PS_HAT:
      out["value"] = rat_json(ps_hat(v, b));
      break;
    case ShareKind::TPS_HAT:
      out["value"] = rat_json(tps_hat(v, b));
      break;
    case ShareKind::MMS_BAR: {
      MmsResult r =
          mms_partition(v, unit_lower_bound_k(b) + 1, Kind::Chores, cap);
      out["value"] = rat_json(r.value);
      out["witness"] = allocation_json(Allocation{r.partition});
      break;
    }
    case ShareKind::PS_BAR:
      out["value"] = rat_json(ps_bar(v, b));
      break;
    case ShareKind::PERSONALIZED:
      throw std::invalid_argument("use the 'personalized' subcommand");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_personalized(const std::string& path, int anchor, double cap) {
  Instance inst = load_instance(path);
  if (anchor < 0 || anchor >= inst.agent_count()) {
    throw std::invalid_argument("anchor index out of range");
  }
  PersonalizedContext ctx = make_personalized_context(
      inst.kind, inst.valuation(anchor), inst.entitlement(anchor), cap);
  json out;
  out["anchor"] = anchor;
  out["k"] = ctx.k;
  out["rounded_share"] = rat_json(ctx.equal_split_share);
  out["shares"] = json::array();
  for (int j = 0; j < inst.agent_count(); ++j) {
    json row;
    row["agent"] = j;
    row["representatives"] = representative_count(ctx, inst.entitlement(j));
    row["mms"] = rat_json(
        personalized_mms(ctx, inst.valuation(j), inst.entitlement(j)));
    row["ps"] = rat_json(personalized_ps(inst.kind, ctx.k, inst.valuation(j),
                                         inst.entitlement(j)));
    out["shares"].push_back(std::move(row));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_allocate_goods(const std::string& path) {
  Instance inst = load_instance(path);
  if (inst.kind != Kind::Goods) {
    throw std::invalid_argument("allocate-goods expects a goods instance");
  }
  std::vector<Strategy> strategies;
  for (const Agent& a : inst.agents) {
    strategies.push_back(safe_strategy(a.valuation, a.entitlement));
  }
  GameResult result = run_game(inst, strategies);
  json out;
  out["allocation"] = allocation_json(result.allocation);
  out["guarantees"] = json::array();
  for (int i = 0; i < inst.agent_count(); ++i) {
    json row;
    row["agent"] = i;
    row["value"] = rat_json(
        inst.valuation(i).value_of(result.allocation.bundles[i]));
    row["half_tps_hat"] =
        rat_json(tps_hat(inst.valuation(i), inst.entitlement(i)) / 2);
    out["guarantees"].push_back(std::move(row));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_assign_chores(const std::string& path, bool bobw, bool has_seed,
                      std::uint64_t seed) {
  Instance inst = load_instance(path);
  if (!bobw) {
    Allocation alloc = assign_rrr(inst);
    json out;
    out["assignment"] = allocation_json(alloc);
    out["rrr"] = json::array();
    for (int i = 0; i < inst.agent_count(); ++i) {
      json row;
      row["agent"] = i;
      row["cost"] = rat_json(inst.valuation(i).value_of(alloc.bundles[i]));
      row["rrr"] =
          rat_json(rrr_share(inst.valuation(i), inst.entitlement(i)));
      out["rrr"].push_back(std::move(row));
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  RandomizedAssignment ra = assign_bobw(inst);
  if (has_seed) {
    const auto& outcome = ra.sample(seed);
    json out;
    out["seed"] = seed;
    out["weight"] = rat_json(outcome.weight);
    out["assignment"] = allocation_json(outcome.allocation);
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  json out;
  out["outcomes"] = json::array();
  for (const auto& o : ra.outcomes) {
    json jo;
    jo["weight"] = rat_json(o.weight);
    jo["assignment"] = allocation_json(o.allocation);
    out["outcomes"].push_back(std::move(jo));
  }
  out["coupon_marginals"] = json::array();
  for (const auto& row : ra.coupon_marginals) {
    json jr = json::array();
    for (const Rat& x : row) jr.push_back(rat_json(x));
    out["coupon_marginals"].push_back(std::move(jr));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_exante_goods(const std::string& path, int terms) {
  Instance inst = load_instance(path);
  RandomizedAssignment ra = exante_grand_bundle_lottery(inst, terms);
  json out;
  out["lottery"] = json::array();
  for (const auto& o : ra.outcomes) {
    json jo;
    jo["weight"] = rat_json(o.weight);
    jo["assignment"] = allocation_json(o.allocation);
    out["lottery"].push_back(std::move(jo));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_bid_solve(const std::string& path, int agent, int cap) {
  Instance inst = load_instance(path);
  if (agent < 0 || agent >= inst.agent_count()) {
    throw std::invalid_argument("agent index out of range");
  }
  BidSolver solver(inst.valuation(agent), cap);
  json out;
  out["agent"] = agent;
  out["thresholds"] = json::array();
  ThresholdVector tv = solver.threshold_vector();
  for (std::size_t rank = 0; rank < tv.entries.size(); ++rank) {
    json row;
    row["rank"] = rank + 1;
    row["bundle"] = mask_json(tv.entries[rank].bundle, inst.item_count);
    row["value"] = rat_json(tv.entries[rank].value);
    row["threshold"] = rat_json(tv.entries[rank].threshold);
    out["thresholds"].push_back(std::move(row));
  }
  StepFunction v1 = solver.value_function(1);
  json sf;
  sf["breakpoints"] = json::array();
  sf["values"] = json::array();
  for (std::size_t i = 0; i < v1.breakpoints.size(); ++i) {
    sf["breakpoints"].push_back(rat_json(v1.breakpoints[i]));
    sf["values"].push_back(rat_json(v1.values[i]));
  }
  out["value_function"] = std::move(sf);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_bid_play(const std::string& path, const std::string& strategy_list,
                 const std::string& tiebreak_name, std::uint64_t seed,
                 const std::string& eps_text) {
  Instance inst = load_instance(path);
  if (inst.kind != Kind::Goods) {
    throw std::invalid_argument("bid-play expects a goods instance");
  }
  std::vector<std::string> names;
  std::stringstream ss(strategy_list);
  std::string token;
  while (std::getline(ss, token, ',')) names.push_back(token);
  if (static_cast<int>(names.size()) != inst.agent_count()) {
    throw std::invalid_argument("need one strategy per agent");
  }
  const Rat eps = parse_rational(eps_text);
  std::vector<Strategy> strategies;
  for (int i = 0; i < inst.agent_count(); ++i) {
    strategies.push_back(make_strategy(names[i], inst.valuation(i),
                                       inst.entitlement(i), eps));
  }
  TieBreak tiebreak;
  if (tiebreak_name == "index") {
    tiebreak.mode = TieBreak::Mode::LowestIndex;
  } else if (tiebreak_name == "random") {
    tiebreak.mode = TieBreak::Mode::SeededPermutation;
    tiebreak.seed = seed;
  } else {
    throw std::invalid_argument("tiebreak must be 'index' or 'random'");
  }
  GameResult result = run_game(inst, strategies, tiebreak);
  json out;
  out["allocation"] = allocation_json(result.allocation);
  out["trace"] = history_json(result.history);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_verify_fixture(const std::string& name) {
  Fixture fx = fixture(name);
  const bool ok = fx.certify();
  json out;
  out["fixture"] = name;
  out["summary"] = fx.summary;
  out["certified"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : kExitVerificationFailed;
}

int cmd_verify_share(const std::string& path, const std::string& kind_name,
                     const std::string& rho_text, double cap) {
  Instance inst = load_instance(path);
  const Rat rho = parse_rational(rho_text);
  std::vector<Rat> shares;
  for (const Agent& a : inst.agents) {
    Rat s;
    if (kind_name == "ps") {
      s = proportional_share(a.valuation, a.entitlement);
    } else if (kind_name == "tps-hat") {
      s = tps_hat(a.valuation, a.entitlement);
    } else if (kind_name == "mms-hat") {
      s = mms_hat(a.valuation, a.entitlement, cap);
    } else if (kind_name == "mms-bar") {
      s = mms_bar(a.valuation, a.entitlement, cap);
    } else if (kind_name == "rrr") {
      s = rrr_share(a.valuation, a.entitlement);
    } else {
      throw std::invalid_argument("unsupported share kind for verify");
    }
    shares.push_back(rho * s);
  }
  FeasibilityResult res = check_feasibility(inst, shares, cap);
  json out;
  out["share"] = kind_name;
  out["rho"] = rho_text;
  out["feasible"] = res.feasible;
  if (res.witness) out["witness"] = allocation_json(*res.witness);
  std::cout << out.dump(2) << "\n";
  return res.feasible ? 0 : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"share-based fair division toolkit"};
  app.require_subcommand(1);

  double cap = 1e7;
  app.add_option("--cap", cap, "enumeration / solver state cap");

  std::string path, kind_name, strategy_list = "safe,safe";
  std::string tiebreak_name = "index", rho_text = "1", eps_text = "1/10";
  std::string fixture_name;
  int agent = 0, anchor = 0, k_override = 0, terms = 8, solver_cap = 12;
  std::uint64_t seed = 0;
  bool bobw = false;

  auto* share = app.add_subcommand("share", "evaluate a share function");
  share->add_option("instance", path)->required();
  share->add_option("--kind", kind_name)->required();
  share->add_option("--agent", agent);
  share->add_option("--k", k_override);

  auto* personalized =
      app.add_subcommand("personalized", "anchored personalized shares");
  personalized->add_option("instance", path)->required();
  personalized->add_option("--anchor", anchor);

  auto* allocate = app.add_subcommand(
      "allocate-goods", "run the bidding game with all-safe strategies");
  allocate->add_option("instance", path)->required();

  auto* chores = app.add_subcommand("assign-chores", "picking-sequence chores");
  chores->add_option("instance", path)->required();
  chores->add_flag("--bobw", bobw, "randomized best-of-both-worlds output");
  auto* seed_opt = chores->add_option("--seed", seed, "sample one outcome");

  auto* exante = app.add_subcommand("exante-goods", "grand-bundle lottery");
  exante->add_option("instance", path)->required();
  exante->add_option("--sylvester-terms", terms);

  auto* solve = app.add_subcommand("bid-solve", "two-player threshold vector");
  solve->add_option("instance", path)->required();
  solve->add_option("--agent", agent);
  solve->add_option("--solver-cap", solver_cap);

  auto* play = app.add_subcommand("bid-play", "full bidding game trace");
  play->add_option("instance", path)->required();
  play->add_option("--strategies", strategy_list);
  play->add_option("--tiebreak", tiebreak_name);
  play->add_option("--seed", seed);
  play->add_option("--epsilon", eps_text);

  auto* verify = app.add_subcommand("verify", "fixture / share verification");
  verify->add_option("instance", path);
  verify->add_option("--fixture", fixture_name);
  verify->add_option("--share", kind_name);
  verify->add_option("--rho", rho_text);

  auto* fixtures = app.add_subcommand("fixtures", "list fixture names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (share->parsed()) return cmd_share(path, kind_name, agent, k_override, cap);
    if (personalized->parsed()) return cmd_personalized(path, anchor, cap);
    if (allocate->parsed()) return cmd_allocate_goods(path);
    if (chores->parsed()) {
      return cmd_assign_chores(path, bobw, seed_opt->count() > 0, seed);
    }
    if (exante->parsed()) return cmd_exante_goods(path, terms);
    if (solve->parsed()) return cmd_bid_solve(path, agent, solver_cap);
    if (play->parsed()) {
      return cmd_bid_play(path, strategy_list, tiebreak_name, seed, eps_text);
    }
    if (verify->parsed()) {
      if (!fixture_name.empty()) return cmd_verify_fixture(fixture_name);
      if (path.empty() || kind_name.empty()) {
        throw std::invalid_argument(
            "verify needs --fixture or an instance with --share");
      }
      return cmd_verify_share(path, kind_name, rho_text, cap);
    }
    if (fixtures->parsed()) {
      nlohmann::json out = fairshare::fixture_names();
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
