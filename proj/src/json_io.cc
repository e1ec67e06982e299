// Copyright 2026 The Minibal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "minibal/json_io.h"

#include <fstream>
#include <sstream>

#include "minibal/error.h"

namespace minibal {

using nlohmann::json;

namespace {

template <typename T>
void ReadIfPresent(const json& j, const char* key, T* out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) {
    *out = it->get<T>();
  }
}

template <typename T>
void ReadIfPresent(const json& j, const char* key, std::optional<T>* out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) {
    *out = it->get<T>();
  }
}

std::vector<PoolEntry> ParsePool(const json& j) {
  std::vector<PoolEntry> pool;
  for (const json& item : j) {
    if (item.is_number()) {
      pool.push_back(PoolEntry{item.get<double>(), 0});
      continue;
    }
    const double quality = item.at("quality").get<double>();
    if (auto seeds = item.find("seeds"); seeds != item.end()) {
      for (const json& s : *seeds) {
        pool.push_back(PoolEntry{quality, s.get<std::uint64_t>()});
      }
    } else {
      pool.push_back(
          PoolEntry{quality, item.value("seed", std::uint64_t{0})});
    }
  }
  return pool;
}

json PoolJson(const std::vector<PoolEntry>& pool) {
  json out = json::array();
  for (const PoolEntry& e : pool) {
    out.push_back({{"quality", e.quality}, {"seed", e.seed}});
  }
  return out;
}

}  // namespace

void to_json(json& j, const Budget& budget) {
  if (budget.kind == Budget::Kind::kIterations) {
    j = static_cast<std::int64_t>(budget.amount);
  } else {
    j = budget.ToString();
  }
}

void from_json(const json& j, Budget& budget) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    budget = Budget::Iterations(j.get<std::int64_t>());
  } else if (j.is_string()) {
    budget = ParseBudget(j.get<std::string>());
  } else {
    throw Error(ErrorCode::kInvalidConfig, "bad budget " + j.dump());
  }
}

void to_json(json& j, const EvalProfile& profile) {
  j = {{"game", profile.game},
       {"quality", profile.quality},
       {"seed", profile.seed},
       {"id", profile.id}};
}

void from_json(const json& j, EvalProfile& profile) {
  ReadIfPresent(j, "game", &profile.game);
  ReadIfPresent(j, "quality", &profile.quality);
  ReadIfPresent(j, "seed", &profile.seed);
  ReadIfPresent(j, "id", &profile.id);
}

void to_json(json& j, const AgentSpec& spec) {
  j = {{"id", spec.id},
       {"kind", AgentKindName(spec.kind)},
       {"budget", spec.budget},
       {"seed", spec.seed}};
  if (spec.evaluator) j["evaluator"] = *spec.evaluator;
  if (spec.depth_bound) j["depth_bound_d"] = *spec.depth_bound;
  if (spec.kind == AgentKind::kMcts) {
    j["exploration_c"] = spec.exploration_c;
  } else {
    j["reuse_table"] = spec.reuse_table;
  }
}

void from_json(const json& j, AgentSpec& spec) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kInvalidAgentSpec, "agent spec must be an object");
  }
  ReadIfPresent(j, "id", &spec.id);
  spec.kind = ParseAgentKind(j.at("kind").get<std::string>());
  ReadIfPresent(j, "evaluator", &spec.evaluator);
  ReadIfPresent(j, "budget", &spec.budget);
  ReadIfPresent(j, "seed", &spec.seed);
  ReadIfPresent(j, "depth_bound_d", &spec.depth_bound);
  ReadIfPresent(j, "exploration_c", &spec.exploration_c);
  ReadIfPresent(j, "reuse_table", &spec.reuse_table);
}

void to_json(json& j, const MatchRecord& r) {
  j = {{"index", r.index},
       {"game", r.game},
       {"agent_a", r.agent_a},
       {"agent_b", r.agent_b},
       {"first_mover", r.first_mover},
       {"moves", r.moves},
       {"terminal_state", r.terminal_state},
       {"b", r.b},
       {"score", r.score},
       {"plies", r.plies},
       {"seeds",
        {{"match", r.seeds.match},
         {"agent_a", r.seeds.agent_a},
         {"agent_b", r.seeds.agent_b}}},
       {"variant", r.variant},
       {"budget", r.budget},
       {"error", r.error ? json(*r.error) : json(nullptr)}};
}

void from_json(const json& j, MatchRecord& r) {
  ReadIfPresent(j, "index", &r.index);
  j.at("game").get_to(r.game);
  j.at("agent_a").get_to(r.agent_a);
  j.at("agent_b").get_to(r.agent_b);
  ReadIfPresent(j, "first_mover", &r.first_mover);
  ReadIfPresent(j, "moves", &r.moves);
  ReadIfPresent(j, "terminal_state", &r.terminal_state);
  ReadIfPresent(j, "b", &r.b);
  ReadIfPresent(j, "score", &r.score);
  ReadIfPresent(j, "plies", &r.plies);
  if (auto s = j.find("seeds"); s != j.end()) {
    ReadIfPresent(*s, "match", &r.seeds.match);
    ReadIfPresent(*s, "agent_a", &r.seeds.agent_a);
    ReadIfPresent(*s, "agent_b", &r.seeds.agent_b);
  }
  ReadIfPresent(j, "variant", &r.variant);
  ReadIfPresent(j, "budget", &r.budget);
  ReadIfPresent(j, "error", &r.error);
}

void to_json(json& j, const TournamentConfig& c) {
  std::vector<std::string> variants;
  for (Variant v : c.variants) variants.emplace_back(VariantName(v));
  j = {{"games", c.games},
       {"strong_pool", PoolJson(c.strong_pool)},
       {"weak_pool", PoolJson(c.weak_pool)},
       {"variants", variants},
       {"budgets", c.budgets},
       {"seats", c.seats},
       {"master_seed", c.master_seed},
       {"workers", c.workers},
       {"output_dir", c.output_dir},
       {"opponent", c.opponent == OpponentKind::kMcts ? "mcts" : "pool"},
       {"opponent_budget",
        c.opponent_budget ? json(*c.opponent_budget) : json("same")},
       {"mcts", {{"exploration_c", c.mcts_exploration_c}}},
       {"repeats", c.repeats}};
  if (c.depth_bound) j["depth_bound_d"] = *c.depth_bound;
}

void from_json(const json& j, TournamentConfig& c) {
  j.at("games").get_to(c.games);
  c.strong_pool = ParsePool(j.at("strong_pool"));
  if (auto it = j.find("weak_pool"); it != j.end()) {
    c.weak_pool = ParsePool(*it);
  }
  c.variants.clear();
  for (const json& v : j.at("variants")) {
    c.variants.push_back(ParseVariant(v.get<std::string>()));
  }
  j.at("budgets").get_to(c.budgets);
  ReadIfPresent(j, "seats", &c.seats);
  ReadIfPresent(j, "master_seed", &c.master_seed);
  ReadIfPresent(j, "workers", &c.workers);
  ReadIfPresent(j, "output_dir", &c.output_dir);
  if (auto it = j.find("opponent"); it != j.end()) {
    const std::string name = it->get<std::string>();
    if (name == "pool") {
      c.opponent = OpponentKind::kPool;
    } else if (name == "mcts") {
      c.opponent = OpponentKind::kMcts;
    } else {
      throw Error(ErrorCode::kInvalidConfig, "unknown opponent '" + name + "'");
    }
  }
  if (auto it = j.find("opponent_budget"); it != j.end()) {
    if (*it == "same") {
      c.opponent_budget.reset();
    } else {
      c.opponent_budget = it->get<Budget>();
    }
  }
  if (auto it = j.find("mcts"); it != j.end()) {
    ReadIfPresent(*it, "exploration_c", &c.mcts_exploration_c);
    // A fixed MCTS budget inside the mcts block overrides opponent_budget.
    if (auto b = it->find("budget"); b != it->end()) {
      c.opponent_budget = b->get<Budget>();
    }
  }
  ReadIfPresent(j, "repeats", &c.repeats);
  ReadIfPresent(j, "depth_bound_d", &c.depth_bound);
}

TournamentConfig LoadTournamentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  TournamentConfig config;
  try {
    config = json::parse(in).get<TournamentConfig>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
  ValidateTournament(config);
  return config;
}

}  // namespace minibal
