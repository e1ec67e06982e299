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

#ifndef MINIBAL_AGENT_H_
#define MINIBAL_AGENT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "minibal/evaluator.h"
#include "minibal/game.h"
#include "minibal/mcts.h"
#include "minibal/search.h"

namespace minibal {

enum class AgentKind {
  kUbfmMinimax,
  kUbfmMinibalN,
  kUbfmMinibalP,
  kUbfmMinibalPSolvedWin,
  kMcts,
};

// "UBFM-Minimax", "UBFM-MinibalN", "UBFM-MinibalP", "UBFM-MinibalPSolvedWin",
// "MCTS".
std::string_view AgentKindName(AgentKind kind);
AgentKind ParseAgentKind(std::string_view name);
AgentKind KindForVariant(Variant variant);
Variant VariantForKind(AgentKind kind);  // kind must be a UBFM kind

struct AgentSpec {
  std::string id;
  AgentKind kind = AgentKind::kUbfmMinimax;
  std::optional<EvalProfile> evaluator;  // UBFM kinds only
  Budget budget = Budget::Iterations(200);
  std::uint64_t seed = 0;
  std::optional<int> depth_bound;  // UBFM-MinibalPSolvedWin only
  double exploration_c = std::sqrt(2.0);  // MCTS only
  bool reuse_table = true;                // UBFM only
};

// Throws kInvalidAgentSpec when the spec breaks the kind's field rules.
void ValidateAgentSpec(const AgentSpec& spec);

// What an agent reports about its most recent decision.
struct SearchSummary {
  double root_v = 0.0;
  int root_c = 0;
  bool root_r = false;
  std::int64_t iterations = 0;
  double elapsed = 0.0;
};

class Agent {
 public:
  virtual ~Agent() = default;

  // Chooses a legal action for the player to move in `state`.
  virtual Action Choose(const GameState& state) = 0;
  virtual const SearchSummary& last_summary() const = 0;
  virtual const AgentSpec& spec() const = 0;
};

class UbfmAgent final : public Agent {
 public:
  UbfmAgent(std::shared_ptr<const Game> game, AgentSpec spec);

  Action Choose(const GameState& state) override;
  const SearchSummary& last_summary() const override { return summary_; }
  const AgentSpec& spec() const override { return spec_; }

  const SearchResult& last_result() const { return result_; }
  const TranspositionTable& table() const { return table_; }
  const UbfmSearch& search() const { return search_; }

 private:
  AgentSpec spec_;
  UbfmSearch search_;
  TranspositionTable table_;
  SearchResult result_;
  SearchSummary summary_;
};

class MctsAgent final : public Agent {
 public:
  MctsAgent(std::shared_ptr<const Game> game, AgentSpec spec);

  Action Choose(const GameState& state) override;
  const SearchSummary& last_summary() const override { return summary_; }
  const AgentSpec& spec() const override { return spec_; }

 private:
  std::shared_ptr<const Game> game_;
  AgentSpec spec_;
  MctsConfig config_;
  std::mt19937_64 rng_;
  SearchSummary summary_;
};

std::unique_ptr<Agent> MakeAgent(std::shared_ptr<const Game> game,
                                 const AgentSpec& spec);

}  // namespace minibal

#endif  // MINIBAL_AGENT_H_
