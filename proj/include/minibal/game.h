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

// Two-player, zero-sum, perfect-information game abstraction.
//
// A Game is an immutable rule set; GameState is a plain value. Every rule
// query is a pure function of its arguments, so one Game instance can be
// shared by any number of threads.

#ifndef MINIBAL_GAME_H_
#define MINIBAL_GAME_H_

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/static_vector.hpp>

namespace minibal {

enum class Player : std::uint8_t { kFirst = 0, kSecond = 1 };

constexpr Player Opponent(Player p) {
  return p == Player::kFirst ? Player::kSecond : Player::kFirst;
}

std::string_view PlayerName(Player p);  // "First" / "Second"
Player ParsePlayer(std::string_view name);

// Compact game-specific action descriptor: a cell index for placement games,
// a column index for Connect-Four, kPassIndex for an Othello pass.
struct Action {
  std::int16_t index = -1;

  friend auto operator<=>(const Action&, const Action&) = default;
};

inline constexpr std::int16_t kPassIndex = 64;
inline constexpr int kMaxCells = 64;
inline constexpr int kMaxActions = kMaxCells + 1;

// Safety net above every game's natural length; a cap hit is a draw.
inline constexpr int kEngineMaxPlies = 400;

using ActionList = boost::container::static_vector<Action, kMaxActions>;

enum class Status : std::uint8_t { kOngoing, kFirstWins, kSecondWins, kDraw };

// Cell contents: 0 empty, 1 first player's piece, 2 second player's piece.
inline constexpr std::int8_t kEmpty = 0;
constexpr std::int8_t PieceOf(Player p) {
  return p == Player::kFirst ? 1 : 2;
}

struct GameState {
  std::array<std::int8_t, kMaxCells> cells{};
  Player to_move = Player::kFirst;
  std::int16_t move_count = 0;
  Status status = Status::kOngoing;

  friend bool operator==(const GameState&, const GameState&) = default;
};

enum class ScoreKind { kBinaryWithDepthHeuristic, kMarginNormalized };

enum class GameKind { kTicTacToe, kConnectFour, kOthello };

class Game {
 public:
  virtual ~Game() = default;

  virtual std::string name() const = 0;
  virtual GameKind kind() const = 0;
  virtual int rows() const = 0;
  virtual int cols() const = 0;
  int num_cells() const { return rows() * cols(); }
  virtual int max_plies() const = 0;
  virtual ScoreKind score_kind() const = 0;

  virtual GameState InitialState() const = 0;

  // Canonical order: ascending action index. Empty iff IsTerminal(state).
  virtual void LegalActions(const GameState& state, ActionList* out) const = 0;
  ActionList LegalActions(const GameState& state) const;
  bool IsLegal(const GameState& state, Action action) const;

  // Throws Error(kIllegalAction) when `action` is not legal in `state`.
  GameState Apply(const GameState& state, Action action) const;
  // Same transition without the legality check; `action` must come from
  // LegalActions(state).
  GameState ApplyUnchecked(const GameState& state, Action action) const {
    return DoApply(state, action);
  }

  bool IsTerminal(const GameState& state) const;

  // +1 win, 0 draw, -1 loss for `perspective`. Throws kNotTerminal.
  int BinaryOutcome(const GameState& state, Player perspective) const;

  // Terminal evaluation in [-1, 1], sign-consistent with BinaryOutcome.
  double TerminalScore(const GameState& state, Player perspective) const;

  // Zobrist key over (cell, piece) and side to move.
  std::uint64_t StateKey(const GameState& state) const;

  // Text notation: rows of ".XO" top to bottom joined by '/', then " X" or
  // " O" for the side to move. X is always the first player.
  std::string Serialize(const GameState& state) const;
  GameState Parse(std::string_view text) const;

  virtual std::string ActionToString(Action action) const = 0;
  virtual Action ParseAction(std::string_view text) const = 0;

  std::vector<std::string> ActionStrings(const ActionList& actions) const;

 protected:
  // Precondition: action is legal. Must flip to_move, bump move_count and set
  // status (including the max_plies cutoff via FinishPly).
  virtual GameState DoApply(const GameState& state, Action action) const = 0;
  // Recomputes status from scratch; used for parsed positions.
  virtual Status ComputeStatus(const GameState& state) const = 0;
  // Number of plies implied by a parsed board.
  virtual int InferMoveCount(const GameState& state) const = 0;

  void FinishPly(GameState* state) const;
};

// Depth-heuristic constant: a win at ply t scores 1 - kDepthLambda * t / T.
inline constexpr double kDepthLambda = 0.5;

// Builds a rule set by identifier: "tictactoe", "connect4" (7x6),
// "connect4-WxH", "othello6". Throws Error(kUnknownGame).
std::shared_ptr<const Game> MakeGame(std::string_view name);
std::vector<std::string> KnownGames();

}  // namespace minibal

#endif  // MINIBAL_GAME_H_
