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

#include "minibal/service.h"

#include <cassert>
#include <cstdio>
#include <fstream>

#include "minibal/error.h"
#include "minibal/json_io.h"

namespace minibal {

using nlohmann::json;

std::string_view SessionStatusName(SessionStatus status) {
  switch (status) {
    case SessionStatus::kHumanToMove: return "HumanToMove";
    case SessionStatus::kAgentToMove: return "AgentToMove";
    case SessionStatus::kFinished: return "Finished";
  }
  return "Unknown";
}

Budget CapBudget(const Budget& budget, const BudgetCaps& caps) {
  if (budget.empty()) {
    throw Error(ErrorCode::kInvalidAgentSpec,
                "agent budget must be positive, got " + budget.ToString());
  }
  if (budget.kind == Budget::Kind::kIterations) {
    return Budget::Iterations(std::min<std::int64_t>(
        static_cast<std::int64_t>(budget.amount), caps.max_iterations));
  }
  return Budget::Seconds(std::min(budget.amount, caps.max_seconds));
}

Session::Session(std::string id, std::shared_ptr<const Game> game,
                 AgentSpec agent, Player human_seat, std::uint64_t seed)
    : id_(std::move(id)),
      game_(std::move(game)),
      spec_(std::move(agent)),
      agent_(MakeAgent(game_, spec_)),
      human_seat_(human_seat),
      seed_(seed),
      state_(game_->InitialState()) {
  status_ = state_.to_move == human_seat_ ? SessionStatus::kHumanToMove
                                          : SessionStatus::kAgentToMove;
}

void Session::Advance(Action action) {
  history_.push_back(game_->ActionToString(action));
  state_ = game_->Apply(state_, action);
  if (game_->IsTerminal(state_)) {
    status_ = SessionStatus::kFinished;
    result_ = SessionResult{game_->BinaryOutcome(state_, human_seat_),
                            game_->TerminalScore(state_, human_seat_)};
  } else {
    status_ = state_.to_move == human_seat_ ? SessionStatus::kHumanToMove
                                            : SessionStatus::kAgentToMove;
  }
#ifndef NDEBUG
  GameState replay = game_->InitialState();
  for (const std::string& a : history_) {
    replay = game_->Apply(replay, game_->ParseAction(a));
  }
  assert(replay == state_);
#endif
}

void Session::ApplyHumanMove(std::string_view text) {
  if (status_ != SessionStatus::kHumanToMove) {
    throw Error(ErrorCode::kWrongTurn,
                "it is not the human's turn (status " +
                    std::string(SessionStatusName(status_)) + ")");
  }
  Action action;
  try {
    action = game_->ParseAction(text);
  } catch (const Error&) {
    action = Action{};
  }
  if (action.index < 0 || !game_->IsLegal(state_, action)) {
    throw Error(ErrorCode::kIllegalMove,
                "illegal move '" + std::string(text) + "'");
  }
  Advance(action);
}

GameState Session::BeginAgentMove() {
  if (status_ != SessionStatus::kAgentToMove || in_flight_) {
    throw Error(ErrorCode::kWrongTurn,
                in_flight_ ? std::string("an agent move is already running")
                           : "it is not the agent's turn (status " +
                                 std::string(SessionStatusName(status_)) +
                                 ")");
  }
  in_flight_ = true;
  return state_;
}

Action Session::ComputeAgentMove(const GameState& state) {
  return agent_->Choose(state);
}

void Session::FinishAgentMove(Action action) {
  in_flight_ = false;
  Advance(action);
}

void Session::AbortAgentMove() { in_flight_ = false; }

json Session::View() const {
  const std::string text = game_->Serialize(state_);
  json board = json::array();
  const std::string grid = text.substr(0, text.find(' '));
  std::size_t start = 0;
  while (true) {
    const std::size_t end = grid.find('/', start);
    board.push_back(grid.substr(start, end == std::string::npos
                                           ? std::string::npos
                                           : end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  json legal = json::array();
  if (status_ == SessionStatus::kHumanToMove) {
    legal = game_->ActionStrings(game_->LegalActions(state_));
  }
  json view = {{"id", id_},
               {"rules", game_->name()},
               {"state", text},
               {"board", board},
               {"to_move", PlayerName(state_.to_move)},
               {"agent", spec_},
               {"human_seat", PlayerName(human_seat_)},
               {"history", history_},
               {"status", SessionStatusName(status_)},
               {"legal_actions", legal},
               {"result", nullptr}};
  if (result_) view["result"] = {{"b", result_->b}, {"score", result_->score}};
  return view;
}

SessionStore::SessionStore(BudgetCaps caps, std::uint64_t id_seed)
    : caps_(caps), id_rng_(id_seed) {}

std::string SessionStore::NewId() {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(id_rng_()));
  return buf;
}

std::shared_ptr<Session> SessionStore::Find(const std::string& id) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::kUnknownSession, "unknown session '" + id + "'");
  }
  return it->second;
}

AgentSpec SessionStore::ParseAgent(const json& j, const Game& game,
                                   std::uint64_t seed) const {
  AgentSpec spec;
  try {
    if (j.is_string()) {
      spec.kind = ParseAgentKind(j.get<std::string>());
    } else {
      spec = j.get<AgentSpec>();
      if (!j.contains("seed")) spec.seed = seed;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidAgentSpec,
                std::string("bad agent spec: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidAgentSpec, e.what());
  }
  if (spec.id.empty()) spec.id = "agent";
  if (spec.kind != AgentKind::kMcts) {
    // The evaluator defaults to the plain heuristic of the session's game.
    if (!spec.evaluator) spec.evaluator = EvalProfile{};
    if (spec.evaluator->game.empty()) spec.evaluator->game = game.name();
    if (spec.evaluator->id.empty()) spec.evaluator->id = spec.id;
    if (spec.evaluator->game != game.name()) {
      throw Error(ErrorCode::kInvalidAgentSpec,
                  "evaluator is for '" + spec.evaluator->game +
                      "', session plays '" + game.name() + "'");
    }
  }
  spec.budget = CapBudget(spec.budget, caps_);
  ValidateAgentSpec(spec);
  return spec;
}

json SessionStore::Create(const json& request) {
  if (!request.is_object()) {
    throw Error(ErrorCode::kParseError, "request body must be an object");
  }
  if (!request.contains("game") || !request["game"].is_string()) {
    throw Error(ErrorCode::kUnknownGame, "missing game");
  }
  auto game = MakeGame(request["game"].get<std::string>());
  std::uint64_t seed = 0;
  if (auto it = request.find("seed"); it != request.end() && !it->is_null()) {
    if (!it->is_number_integer() && !it->is_number_unsigned()) {
      throw Error(ErrorCode::kParseError, "seed must be an integer");
    }
    seed = it->get<std::uint64_t>();
  }
  Player human = Player::kFirst;
  if (auto it = request.find("human_seat"); it != request.end()) {
    if (!it->is_string()) {
      throw Error(ErrorCode::kParseError, "human_seat must be a string");
    }
    human = ParsePlayer(it->get<std::string>());
  }
  if (!request.contains("agent")) {
    throw Error(ErrorCode::kInvalidAgentSpec, "missing agent");
  }
  AgentSpec spec = ParseAgent(request["agent"], *game, seed);

  std::lock_guard<std::mutex> lock(mutex_);
  std::string id = NewId();
  while (sessions_.contains(id)) id = NewId();
  auto session =
      std::make_shared<Session>(id, std::move(game), spec, human, seed);
  sessions_.emplace(id, session);
  std::lock_guard<std::mutex> session_lock(session->mutex());
  return session->View();
}

json SessionStore::Get(const std::string& id) {
  auto session = Find(id);
  std::lock_guard<std::mutex> lock(session->mutex());
  return session->View();
}

json SessionStore::Move(const std::string& id, const json& request) {
  auto session = Find(id);
  if (!request.is_object() || !request.contains("action") ||
      !request["action"].is_string()) {
    throw Error(ErrorCode::kParseError, "expected {\"action\": string}");
  }
  std::lock_guard<std::mutex> lock(session->mutex());
  session->ApplyHumanMove(request["action"].get<std::string>());
  return session->View();
}

json SessionStore::AgentMove(const std::string& id) {
  auto session = Find(id);
  GameState state;
  {
    std::lock_guard<std::mutex> lock(session->mutex());
    state = session->BeginAgentMove();
  }
  // The search runs without the session lock so reads stay responsive.
  Action action;
  try {
    action = session->ComputeAgentMove(state);
  } catch (...) {
    std::lock_guard<std::mutex> lock(session->mutex());
    session->AbortAgentMove();
    throw;
  }
  std::lock_guard<std::mutex> lock(session->mutex());
  session->FinishAgentMove(action);
  const SearchSummary& s = session->last_summary();
  return {{"action", session->game().ActionToString(action)},
          {"session", session->View()},
          {"summary",
           {{"root_v", s.root_v},
            {"root_c", s.root_c},
            {"root_r", s.root_r},
            {"iterations", s.iterations},
            {"elapsed", s.elapsed}}}};
}

json SessionStore::Games() const {
  json games = json::array();
  for (const std::string& name : KnownGames()) {
    auto game = MakeGame(name);
    games.push_back({{"id", game->name()},
                     {"rows", game->rows()},
                     {"cols", game->cols()},
                     {"initial_state", game->Serialize(game->InitialState())}});
  }
  json kinds = json::array();
  for (AgentKind k :
       {AgentKind::kUbfmMinimax, AgentKind::kUbfmMinibalN,
        AgentKind::kUbfmMinibalP, AgentKind::kUbfmMinibalPSolvedWin,
        AgentKind::kMcts}) {
    kinds.push_back(AgentKindName(k));
  }
  return {{"games", games},
          {"agent_kinds", kinds},
          {"budget_caps",
           {{"max_iterations", caps_.max_iterations},
            {"max_seconds", caps_.max_seconds}}}};
}

std::size_t SessionStore::size() {
  std::lock_guard<std::mutex> lock(mutex_);
  return sessions_.size();
}

void SessionStore::Snapshot(const std::string& path) {
  std::vector<std::shared_ptr<Session>> all;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    for (const auto& [id, s] : sessions_) all.push_back(s);
  }
  json list = json::array();
  for (const auto& s : all) {
    std::lock_guard<std::mutex> lock(s->mutex());
    list.push_back({{"id", s->id()},
                    {"rules", s->game().name()},
                    {"agent", s->agent_spec()},
                    {"human_seat", PlayerName(s->human_seat())},
                    {"seed", s->seed()},
                    {"history", s->history()}});
  }
  std::ofstream out(path, std::ios::trunc);
  out << json{{"sessions", list}}.dump(2) << '\n';
  out.close();
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

std::size_t SessionStore::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
  std::size_t loaded = 0;
  for (const json& item : doc.at("sessions")) {
    auto game = MakeGame(item.at("rules").get<std::string>());
    const AgentSpec spec = item.at("agent").get<AgentSpec>();
    auto session = std::make_shared<Session>(
        item.at("id").get<std::string>(), game, spec,
        ParsePlayer(item.at("human_seat").get<std::string>()),
        item.value("seed", std::uint64_t{0}));
    // Agent moves are re-applied without searching; the agent starts over
    // with an empty table.
    for (const json& move : item.at("history")) {
      const Action action = game->ParseAction(move.get<std::string>());
      if (session->status() == SessionStatus::kHumanToMove) {
        session->ApplyHumanMove(move.get<std::string>());
      } else {
        session->BeginAgentMove();
        session->FinishAgentMove(action);
      }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    sessions_[session->id()] = session;
    ++loaded;
  }
  return loaded;
}

}  // namespace minibal
