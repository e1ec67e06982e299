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

#ifndef MINIBAL_GAMES_H_
#define MINIBAL_GAMES_H_

#include <array>
#include <string>

#include "minibal/game.h"

namespace minibal {

// 3x3 noughts and crosses. Cells are indexed row-major from the top-left.
// Actions are written "a1".."c3" (column letter, row number from the top).
class TicTacToe final : public Game {
 public:
  std::string name() const override { return "tictactoe"; }
  GameKind kind() const override { return GameKind::kTicTacToe; }
  int rows() const override { return 3; }
  int cols() const override { return 3; }
  int max_plies() const override { return 9; }
  ScoreKind score_kind() const override {
    return ScoreKind::kBinaryWithDepthHeuristic;
  }

  GameState InitialState() const override { return GameState{}; }
  void LegalActions(const GameState& state, ActionList* out) const override;
  std::string ActionToString(Action action) const override;
  Action ParseAction(std::string_view text) const override;

  static const std::array<std::array<int, 3>, 8>& Lines();

 protected:
  GameState DoApply(const GameState& state, Action action) const override;
  Status ComputeStatus(const GameState& state) const override;
  int InferMoveCount(const GameState& state) const override;
};

// Gravity four-in-a-row on a width x height board. Row 0 is the top row;
// actions are columns, written "c1".."cW" (1-based).
class ConnectFour final : public Game {
 public:
  ConnectFour(int width, int height);

  std::string name() const override;
  GameKind kind() const override { return GameKind::kConnectFour; }
  int rows() const override { return height_; }
  int cols() const override { return width_; }
  int max_plies() const override { return width_ * height_; }
  ScoreKind score_kind() const override {
    return ScoreKind::kBinaryWithDepthHeuristic;
  }

  GameState InitialState() const override { return GameState{}; }
  void LegalActions(const GameState& state, ActionList* out) const override;
  std::string ActionToString(Action action) const override;
  Action ParseAction(std::string_view text) const override;

  // Every horizontal, vertical and diagonal run of four cells.
  const std::vector<std::array<int, 4>>& Windows() const { return windows_; }

 protected:
  GameState DoApply(const GameState& state, Action action) const override;
  Status ComputeStatus(const GameState& state) const override;
  int InferMoveCount(const GameState& state) const override;

 private:
  bool CompletesFour(const GameState& state, int cell) const;

  int width_;
  int height_;
  std::vector<std::array<int, 4>> windows_;
};

// Othello on 6x6. X (first player) is Black. A player without a flipping
// placement must pass ("pass"); the game ends when neither side can place.
class Othello final : public Game {
 public:
  static constexpr int kSize = 6;

  std::string name() const override { return "othello6"; }
  GameKind kind() const override { return GameKind::kOthello; }
  int rows() const override { return kSize; }
  int cols() const override { return kSize; }
  // Passes never come in pairs, so no game exceeds two plies per placement.
  int max_plies() const override { return 2 * (kSize * kSize - 4); }
  ScoreKind score_kind() const override { return ScoreKind::kMarginNormalized; }

  GameState InitialState() const override;
  void LegalActions(const GameState& state, ActionList* out) const override;
  std::string ActionToString(Action action) const override;
  Action ParseAction(std::string_view text) const override;

  // Placements available to `player` regardless of whose turn it is.
  int CountPlacements(const GameState& state, Player player) const;
  // Bitmask (bit = cell) of discs flipped by `player` placing at `cell`.
  std::uint64_t FlipsFor(const GameState& state, Player player, int cell) const;

 protected:
  GameState DoApply(const GameState& state, Action action) const override;
  Status ComputeStatus(const GameState& state) const override;
  int InferMoveCount(const GameState& state) const override;

 private:
  bool HasPlacement(const GameState& state, Player player) const;
  Status FinalCount(const GameState& state) const;
};

}  // namespace minibal

#endif  // MINIBAL_GAMES_H_
