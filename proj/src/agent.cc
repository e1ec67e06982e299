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

#include "minibal/agent.h"

#include <chrono>

#include "minibal/error.h"

namespace minibal {

std::string_view AgentKindName(AgentKind kind) {
  switch (kind) {
    case AgentKind::kUbfmMinimax: return "UBFM-Minimax";
    case AgentKind::kUbfmMinibalN: return "UBFM-MinibalN";
    case AgentKind::kUbfmMinibalP: return "UBFM-MinibalP";
    case AgentKind::kUbfmMinibalPSolvedWin: return "UBFM-MinibalPSolvedWin";
    case AgentKind::kMcts: return "MCTS";
  }
  return "Unknown";
}

AgentKind ParseAgentKind(std::string_view name) {
  for (AgentKind k :
       {AgentKind::kUbfmMinimax, AgentKind::kUbfmMinibalN,
        AgentKind::kUbfmMinibalP, AgentKind::kUbfmMinibalPSolvedWin,
        AgentKind::kMcts}) {
    if (name == AgentKindName(k)) return k;
  }
  if (name == "mcts") return AgentKind::kMcts;
  throw Error(ErrorCode::kInvalidAgentSpec,
              "unknown agent kind '" + std::string(name) + "'");
}

AgentKind KindForVariant(Variant variant) {
  switch (variant) {
    case Variant::kMinimax: return AgentKind::kUbfmMinimax;
    case Variant::kMinibalN: return AgentKind::kUbfmMinibalN;
    case Variant::kMinibalP: return AgentKind::kUbfmMinibalP;
    case Variant::kMinibalPSolvedWin: return AgentKind::kUbfmMinibalPSolvedWin;
  }
  return AgentKind::kUbfmMinimax;
}

Variant VariantForKind(AgentKind kind) {
  switch (kind) {
    case AgentKind::kUbfmMinimax: return Variant::kMinimax;
    case AgentKind::kUbfmMinibalN: return Variant::kMinibalN;
    case AgentKind::kUbfmMinibalP: return Variant::kMinibalP;
    case AgentKind::kUbfmMinibalPSolvedWin: return Variant::kMinibalPSolvedWin;
    case AgentKind::kMcts: break;
  }
  throw Error(ErrorCode::kInvalidAgentSpec, "MCTS has no search variant");
}

void ValidateAgentSpec(const AgentSpec& spec) {
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::kInvalidAgentSpec,
                 "agent '" + spec.id + "': " + why);
  };
  if (spec.kind == AgentKind::kMcts) {
    if (spec.evaluator) throw fail("MCTS takes no evaluator");
    if (spec.depth_bound) throw fail("MCTS takes no depth bound");
    if (!(spec.exploration_c >= 0.0)) {
      throw fail("exploration_c must be >= 0");
    }
    return;
  }
  if (!spec.evaluator) throw fail("UBFM agents need an evaluator");
  if (spec.depth_bound && spec.kind != AgentKind::kUbfmMinibalPSolvedWin) {
    throw fail("depth_bound_d is only valid for UBFM-MinibalPSolvedWin");
  }
  if (spec.depth_bound && *spec.depth_bound < 0) {
    throw fail("depth_bound_d must be >= 0");
  }
  if (!(spec.evaluator->quality >= 0.0 && spec.evaluator->quality <= 1.0)) {
    throw fail("evaluator quality must lie in [0, 1]");
  }
}

namespace {

SearchConfig ConfigFor(const AgentSpec& spec) {
  ValidateAgentSpec(spec);
  if (spec.kind == AgentKind::kMcts) {
    throw Error(ErrorCode::kInvalidAgentSpec,
                "agent '" + spec.id + "' is not a UBFM agent");
  }
  SearchConfig config;
  config.variant = VariantForKind(spec.kind);
  config.depth_bound = spec.depth_bound;
  config.budget = spec.budget;
  config.evaluator = *spec.evaluator;
  config.seed = spec.seed;
  return config;
}

}  // namespace

UbfmAgent::UbfmAgent(std::shared_ptr<const Game> game, AgentSpec spec)
    : spec_(std::move(spec)), search_(std::move(game), ConfigFor(spec_)) {}

Action UbfmAgent::Choose(const GameState& state) {
  if (!spec_.reuse_table) table_.Clear();
  result_ = search_.Search(state, &table_);
  summary_ = SearchSummary{result_.root_entry.v, result_.root_entry.c,
                           result_.root_entry.r, result_.iterations,
                           result_.elapsed};
  return result_.chosen;
}

MctsAgent::MctsAgent(std::shared_ptr<const Game> game, AgentSpec spec)
    : game_(std::move(game)), spec_(std::move(spec)), rng_(spec_.seed) {
  ValidateAgentSpec(spec_);
  if (spec_.kind != AgentKind::kMcts) {
    throw Error(ErrorCode::kInvalidAgentSpec,
                "agent '" + spec_.id + "' is not an MCTS agent");
  }
  config_.budget = spec_.budget;
  config_.exploration_c = spec_.exploration_c;
}

Action MctsAgent::Choose(const GameState& state) {
  const auto start = std::chrono::steady_clock::now();
  const MctsResult result = MctsSearch(*game_, state, config_, rng_);
  summary_ = SearchSummary{result.root_mean, 0, false, result.iterations,
                           std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count()};
  return result.chosen;
}

std::unique_ptr<Agent> MakeAgent(std::shared_ptr<const Game> game,
                                 const AgentSpec& spec) {
  if (spec.kind == AgentKind::kMcts) {
    return std::make_unique<MctsAgent>(std::move(game), spec);
  }
  return std::make_unique<UbfmAgent>(std::move(game), spec);
}

}  // namespace minibal
