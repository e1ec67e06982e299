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

#include "minibal/game.h"

#include <algorithm>
#include <charconv>
#include <random>

#include "minibal/error.h"
#include "minibal/games.h"

namespace minibal {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIllegalAction: return "IllegalAction";
    case ErrorCode::kNotTerminal: return "NotTerminal";
    case ErrorCode::kTerminalState: return "TerminalState";
    case ErrorCode::kNoLegalActions: return "NoLegalActions";
    case ErrorCode::kDuplicateExpansion: return "DuplicateExpansion";
    case ErrorCode::kInvalidBudget: return "InvalidBudget";
    case ErrorCode::kAgentFailure: return "AgentFailure";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kInsufficientSample: return "InsufficientSample";
    case ErrorCode::kUnknownGame: return "UnknownGame";
    case ErrorCode::kInvalidAgentSpec: return "InvalidAgentSpec";
    case ErrorCode::kIllegalMove: return "IllegalMove";
    case ErrorCode::kWrongTurn: return "WrongTurn";
    case ErrorCode::kUnknownSession: return "UnknownSession";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

std::string_view PlayerName(Player p) {
  return p == Player::kFirst ? "First" : "Second";
}

Player ParsePlayer(std::string_view name) {
  if (name == "First" || name == "first" || name == "X") return Player::kFirst;
  if (name == "Second" || name == "second" || name == "O") {
    return Player::kSecond;
  }
  throw Error(ErrorCode::kParseError,
              "unknown player '" + std::string(name) + "'");
}

namespace {

// Fixed so that table keys are reproducible across runs and platforms
// (mt19937_64 output is fully specified by the standard).
constexpr std::uint64_t kZobristSeed = 0x5A0B81575EEDULL;

struct ZobristCodes {
  std::array<std::array<std::uint64_t, 2>, kMaxCells> piece;
  std::uint64_t second_to_move;

  ZobristCodes() {
    std::mt19937_64 rng(kZobristSeed);
    for (auto& cell : piece) {
      cell[0] = rng();
      cell[1] = rng();
    }
    second_to_move = rng();
  }
};

const ZobristCodes& Codes() {
  static const ZobristCodes codes;
  return codes;
}

}  // namespace

ActionList Game::LegalActions(const GameState& state) const {
  ActionList out;
  LegalActions(state, &out);
  return out;
}

bool Game::IsLegal(const GameState& state, Action action) const {
  ActionList legal;
  LegalActions(state, &legal);
  return std::find(legal.begin(), legal.end(), action) != legal.end();
}

GameState Game::Apply(const GameState& state, Action action) const {
  if (!IsLegal(state, action)) {
    throw Error(ErrorCode::kIllegalAction,
                "illegal action " + std::to_string(action.index) + " in " +
                    Serialize(state));
  }
  return DoApply(state, action);
}

bool Game::IsTerminal(const GameState& state) const {
  return state.status != Status::kOngoing;
}

void Game::FinishPly(GameState* state) const {
  state->to_move = Opponent(state->to_move);
  ++state->move_count;
  if (state->status == Status::kOngoing &&
      state->move_count >= std::min(max_plies(), kEngineMaxPlies)) {
    state->status = Status::kDraw;
  }
}

int Game::BinaryOutcome(const GameState& state, Player perspective) const {
  switch (state.status) {
    case Status::kOngoing:
      throw Error(ErrorCode::kNotTerminal,
                  "binary outcome of a non-terminal state");
    case Status::kDraw:
      return 0;
    case Status::kFirstWins:
      return perspective == Player::kFirst ? 1 : -1;
    case Status::kSecondWins:
      return perspective == Player::kSecond ? 1 : -1;
  }
  return 0;
}

double Game::TerminalScore(const GameState& state, Player perspective) const {
  const int b = BinaryOutcome(state, perspective);
  if (b == 0) return 0.0;
  if (score_kind() == ScoreKind::kBinaryWithDepthHeuristic) {
    const double t = static_cast<double>(state.move_count) / max_plies();
    return b * (1.0 - kDepthLambda * std::min(t, 1.0));
  }
  const std::int8_t own = PieceOf(perspective);
  const std::int8_t theirs = PieceOf(Opponent(perspective));
  int margin = 0;
  for (int i = 0; i < num_cells(); ++i) {
    if (state.cells[i] == own) ++margin;
    if (state.cells[i] == theirs) --margin;
  }
  if (margin * b <= 0) margin = b;
  return static_cast<double>(margin) / num_cells();
}

std::uint64_t Game::StateKey(const GameState& state) const {
  const ZobristCodes& codes = Codes();
  std::uint64_t key = 0;
  const int n = num_cells();
  for (int i = 0; i < n; ++i) {
    const std::int8_t piece = state.cells[i];
    if (piece != kEmpty) key ^= codes.piece[i][piece - 1];
  }
  if (state.to_move == Player::kSecond) key ^= codes.second_to_move;
  return key;
}

std::string Game::Serialize(const GameState& state) const {
  std::string out;
  out.reserve(num_cells() + rows() + 2);
  for (int r = 0; r < rows(); ++r) {
    if (r > 0) out.push_back('/');
    for (int c = 0; c < cols(); ++c) {
      switch (state.cells[r * cols() + c]) {
        case 1: out.push_back('X'); break;
        case 2: out.push_back('O'); break;
        default: out.push_back('.'); break;
      }
    }
  }
  out += state.to_move == Player::kFirst ? " X" : " O";
  return out;
}

GameState Game::Parse(std::string_view text) const {
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::kParseError,
                 "cannot parse " + name() + " board '" + std::string(text) +
                     "': " + why);
  };
  const auto space = text.rfind(' ');
  if (space == std::string_view::npos) throw fail("missing side to move");
  const std::string_view side = text.substr(space + 1);
  const std::string_view board = text.substr(0, space);

  GameState state;
  if (side == "X") {
    state.to_move = Player::kFirst;
  } else if (side == "O") {
    state.to_move = Player::kSecond;
  } else {
    throw fail("side to move must be X or O");
  }

  int row = 0;
  int col = 0;
  for (char ch : board) {
    if (ch == '/') {
      if (col != cols()) throw fail("short row");
      ++row;
      col = 0;
      continue;
    }
    if (row >= rows() || col >= cols()) throw fail("board too large");
    std::int8_t piece;
    switch (ch) {
      case '.': piece = kEmpty; break;
      case 'X': piece = 1; break;
      case 'O': piece = 2; break;
      default: throw fail(std::string("bad cell '") + ch + "'");
    }
    state.cells[row * cols() + col] = piece;
    ++col;
  }
  if (row != rows() - 1 || col != cols()) throw fail("wrong dimensions");

  state.move_count = static_cast<std::int16_t>(InferMoveCount(state));
  state.status = ComputeStatus(state);
  if (state.status == Status::kOngoing &&
      state.move_count >= std::min(max_plies(), kEngineMaxPlies)) {
    state.status = Status::kDraw;
  }
  return state;
}

std::vector<std::string> Game::ActionStrings(const ActionList& actions) const {
  std::vector<std::string> out;
  out.reserve(actions.size());
  for (Action a : actions) out.push_back(ActionToString(a));
  return out;
}

std::shared_ptr<const Game> MakeGame(std::string_view name) {
  if (name == "tictactoe") return std::make_shared<TicTacToe>();
  if (name == "othello6" || name == "othello") {
    return std::make_shared<Othello>();
  }
  if (name == "connect4") return std::make_shared<ConnectFour>(7, 6);
  constexpr std::string_view kPrefix = "connect4-";
  if (name.starts_with(kPrefix)) {
    const std::string_view dims = name.substr(kPrefix.size());
    const auto x = dims.find('x');
    int w = 0;
    int h = 0;
    if (x != std::string_view::npos) {
      auto r1 = std::from_chars(dims.data(), dims.data() + x, w);
      auto r2 = std::from_chars(dims.data() + x + 1, dims.data() + dims.size(),
                                h);
      if (r1.ec == std::errc() && r2.ec == std::errc() &&
          r1.ptr == dims.data() + x && r2.ptr == dims.data() + dims.size() &&
          w >= 4 && h >= 4 && w <= 9 && h <= 7 && w * h <= kMaxCells) {
        return std::make_shared<ConnectFour>(w, h);
      }
    }
  }
  throw Error(ErrorCode::kUnknownGame, "unknown game '" + std::string(name) +
                                           "'");
}

std::vector<std::string> KnownGames() {
  return {"tictactoe", "connect4", "connect4-5x4", "othello6"};
}

}  // namespace minibal
