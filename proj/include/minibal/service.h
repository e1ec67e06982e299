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

// Session-based human-versus-agent play, independent of the transport.

#ifndef MINIBAL_SERVICE_H_
#define MINIBAL_SERVICE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "minibal/agent.h"
#include "minibal/game.h"

namespace minibal {

enum class SessionStatus { kHumanToMove, kAgentToMove, kFinished };

std::string_view SessionStatusName(SessionStatus status);

struct BudgetCaps {
  std::int64_t max_iterations = 50000;
  double max_seconds = 2.0;
};

// Clamps a budget to the caps. Throws kInvalidAgentSpec for an empty one.
Budget CapBudget(const Budget& budget, const BudgetCaps& caps);

struct SessionResult {
  int b = 0;
  double score = 0.0;
};

class Session {
 public:
  Session(std::string id, std::shared_ptr<const Game> game, AgentSpec agent,
          Player human_seat, std::uint64_t seed);

  const std::string& id() const { return id_; }
  const Game& game() const { return *game_; }
  const GameState& state() const { return state_; }
  const AgentSpec& agent_spec() const { return spec_; }
  Player human_seat() const { return human_seat_; }
  const std::vector<std::string>& history() const { return history_; }
  SessionStatus status() const { return status_; }
  const std::optional<SessionResult>& result() const { return result_; }
  std::uint64_t seed() const { return seed_; }

  // Requires HumanToMove. Throws kWrongTurn or kIllegalMove.
  void ApplyHumanMove(std::string_view action);

  // Requires AgentToMove and no computation in flight; marks one in flight
  // and returns the state to search from. Throws kWrongTurn.
  GameState BeginAgentMove();
  // Runs the agent's search; only the caller of BeginAgentMove may call it.
  Action ComputeAgentMove(const GameState& state);
  // Applies the computed action and clears the in-flight mark.
  void FinishAgentMove(Action action);
  void AbortAgentMove();

  const SearchSummary& last_summary() const { return agent_->last_summary(); }

  // id, rules, state, board, to_move, agent, human_seat, history, status,
  // legal_actions, result.
  nlohmann::json View() const;

  std::mutex& mutex() { return mutex_; }

 private:
  void Advance(Action action);

  std::string id_;
  std::shared_ptr<const Game> game_;
  AgentSpec spec_;
  std::unique_ptr<Agent> agent_;
  Player human_seat_;
  std::uint64_t seed_;
  GameState state_;
  std::vector<std::string> history_;
  SessionStatus status_ = SessionStatus::kHumanToMove;
  std::optional<SessionResult> result_;
  bool in_flight_ = false;
  std::mutex mutex_;
};

// Thread-safe in-memory session store. Operations on one session are
// serialized; searches of different sessions run concurrently.
class SessionStore {
 public:
  explicit SessionStore(BudgetCaps caps = {},
                        std::uint64_t id_seed = std::random_device{}());

  // Request {game, agent, human_seat, seed}. Throws kUnknownGame,
  // kInvalidAgentSpec or kParseError.
  nlohmann::json Create(const nlohmann::json& request);
  nlohmann::json Get(const std::string& id);
  nlohmann::json Move(const std::string& id, const nlohmann::json& request);
  // {action, session, summary}.
  nlohmann::json AgentMove(const std::string& id);
  nlohmann::json Games() const;

  // Writes {sessions: [...]} with enough to replay each session.
  void Snapshot(const std::string& path);
  // Restores sessions written by Snapshot; returns how many were loaded.
  std::size_t Load(const std::string& path);

  std::size_t size();
  const BudgetCaps& caps() const { return caps_; }

 private:
  std::shared_ptr<Session> Find(const std::string& id);
  std::string NewId();
  AgentSpec ParseAgent(const nlohmann::json& j, const Game& game,
                       std::uint64_t seed) const;

  BudgetCaps caps_;
  std::mutex mutex_;
  std::mt19937_64 id_rng_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace minibal

#endif  // MINIBAL_SERVICE_H_
