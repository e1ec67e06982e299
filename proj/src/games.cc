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

#include "minibal/games.h"

#include <charconv>

#include "minibal/error.h"

namespace minibal {
namespace {

Status WinnerStatus(std::int8_t piece) {
  return piece == 1 ? Status::kFirstWins : Status::kSecondWins;
}

int CountPieces(const GameState& state, int num_cells) {
  int n = 0;
  for (int i = 0; i < num_cells; ++i) n += state.cells[i] != kEmpty;
  return n;
}

std::string PlacementToString(Action action, int cols) {
  const int r = action.index / cols;
  const int c = action.index % cols;
  return {static_cast<char>('a' + c), static_cast<char>('1' + r)};
}

// Returns -1 when `text` is not a well-formed placement on the board.
int ParsePlacement(std::string_view text, int rows, int cols) {
  if (text.size() != 2) return -1;
  const int c = text[0] - 'a';
  const int r = text[1] - '1';
  if (c < 0 || c >= cols || r < 0 || r >= rows) return -1;
  return r * cols + c;
}

Error BadAction(const Game& game, std::string_view text) {
  return Error(ErrorCode::kParseError, "cannot parse " + game.name() +
                                           " action '" + std::string(text) +
                                           "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// TicTacToe

const std::array<std::array<int, 3>, 8>& TicTacToe::Lines() {
  static const std::array<std::array<int, 3>, 8> kLines = {{
      {0, 1, 2}, {3, 4, 5}, {6, 7, 8},  // rows
      {0, 3, 6}, {1, 4, 7}, {2, 5, 8},  // columns
      {0, 4, 8}, {2, 4, 6},             // diagonals
  }};
  return kLines;
}

void TicTacToe::LegalActions(const GameState& state, ActionList* out) const {
  out->clear();
  if (IsTerminal(state)) return;
  for (std::int16_t i = 0; i < 9; ++i) {
    if (state.cells[i] == kEmpty) out->push_back(Action{i});
  }
}

GameState TicTacToe::DoApply(const GameState& state, Action action) const {
  GameState next = state;
  next.cells[action.index] = PieceOf(state.to_move);
  next.status = ComputeStatus(next);
  FinishPly(&next);
  return next;
}

Status TicTacToe::ComputeStatus(const GameState& state) const {
  for (const auto& line : Lines()) {
    const std::int8_t p = state.cells[line[0]];
    if (p != kEmpty && p == state.cells[line[1]] && p == state.cells[line[2]]) {
      return WinnerStatus(p);
    }
  }
  return CountPieces(state, 9) == 9 ? Status::kDraw : Status::kOngoing;
}

int TicTacToe::InferMoveCount(const GameState& state) const {
  return CountPieces(state, 9);
}

std::string TicTacToe::ActionToString(Action action) const {
  return PlacementToString(action, 3);
}

Action TicTacToe::ParseAction(std::string_view text) const {
  const int cell = ParsePlacement(text, 3, 3);
  if (cell < 0) throw BadAction(*this, text);
  return Action{static_cast<std::int16_t>(cell)};
}

// ---------------------------------------------------------------------------
// ConnectFour

ConnectFour::ConnectFour(int width, int height)
    : width_(width), height_(height) {
  constexpr int kDirs[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      for (const auto& d : kDirs) {
        const int r_end = r + 3 * d[0];
        const int c_end = c + 3 * d[1];
        if (r_end < 0 || r_end >= height_ || c_end < 0 || c_end >= width_) {
          continue;
        }
        std::array<int, 4> window;
        for (int k = 0; k < 4; ++k) {
          window[k] = (r + k * d[0]) * width_ + (c + k * d[1]);
        }
        windows_.push_back(window);
      }
    }
  }
}

std::string ConnectFour::name() const {
  if (width_ == 7 && height_ == 6) return "connect4";
  return "connect4-" + std::to_string(width_) + "x" + std::to_string(height_);
}

void ConnectFour::LegalActions(const GameState& state, ActionList* out) const {
  out->clear();
  if (IsTerminal(state)) return;
  for (std::int16_t c = 0; c < width_; ++c) {
    if (state.cells[c] == kEmpty) out->push_back(Action{c});
  }
}

bool ConnectFour::CompletesFour(const GameState& state, int cell) const {
  const std::int8_t p = state.cells[cell];
  const int r0 = cell / width_;
  const int c0 = cell % width_;
  constexpr int kDirs[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
  for (const auto& d : kDirs) {
    int run = 1;
    for (int sign : {1, -1}) {
      int r = r0 + sign * d[0];
      int c = c0 + sign * d[1];
      while (r >= 0 && r < height_ && c >= 0 && c < width_ &&
             state.cells[r * width_ + c] == p) {
        ++run;
        r += sign * d[0];
        c += sign * d[1];
      }
    }
    if (run >= 4) return true;
  }
  return false;
}

GameState ConnectFour::DoApply(const GameState& state, Action action) const {
  GameState next = state;
  int row = height_ - 1;
  while (next.cells[row * width_ + action.index] != kEmpty) --row;
  const int cell = row * width_ + action.index;
  next.cells[cell] = PieceOf(state.to_move);
  if (CompletesFour(next, cell)) {
    next.status = WinnerStatus(next.cells[cell]);
  } else if (state.move_count + 1 >= width_ * height_) {
    next.status = Status::kDraw;
  }
  FinishPly(&next);
  return next;
}

Status ConnectFour::ComputeStatus(const GameState& state) const {
  for (const auto& w : windows_) {
    const std::int8_t p = state.cells[w[0]];
    if (p != kEmpty && p == state.cells[w[1]] && p == state.cells[w[2]] &&
        p == state.cells[w[3]]) {
      return WinnerStatus(p);
    }
  }
  return CountPieces(state, width_ * height_) == width_ * height_
             ? Status::kDraw
             : Status::kOngoing;
}

int ConnectFour::InferMoveCount(const GameState& state) const {
  return CountPieces(state, width_ * height_);
}

std::string ConnectFour::ActionToString(Action action) const {
  return "c" + std::to_string(action.index + 1);
}

Action ConnectFour::ParseAction(std::string_view text) const {
  int col = 0;
  if (text.size() >= 2 && text[0] == 'c') {
    auto [ptr, ec] = std::from_chars(text.data() + 1,
                                     text.data() + text.size(), col);
    if (ec == std::errc() && ptr == text.data() + text.size() && col >= 1 &&
        col <= width_) {
      return Action{static_cast<std::int16_t>(col - 1)};
    }
  }
  throw BadAction(*this, text);
}

// ---------------------------------------------------------------------------
// Othello

namespace {
constexpr int kOthelloDirs[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                    {0, 1},   {1, -1}, {1, 0},  {1, 1}};
}  // namespace

GameState Othello::InitialState() const {
  GameState state;
  const int lo = kSize / 2 - 1;
  const int hi = kSize / 2;
  state.cells[lo * kSize + lo] = 2;
  state.cells[hi * kSize + hi] = 2;
  state.cells[lo * kSize + hi] = 1;
  state.cells[hi * kSize + lo] = 1;
  return state;
}

std::uint64_t Othello::FlipsFor(const GameState& state, Player player,
                                int cell) const {
  if (state.cells[cell] != kEmpty) return 0;
  const std::int8_t own = PieceOf(player);
  const std::int8_t theirs = PieceOf(Opponent(player));
  const int r0 = cell / kSize;
  const int c0 = cell % kSize;
  std::uint64_t flips = 0;
  for (const auto& d : kOthelloDirs) {
    std::uint64_t ray = 0;
    int r = r0 + d[0];
    int c = c0 + d[1];
    while (r >= 0 && r < kSize && c >= 0 && c < kSize &&
           state.cells[r * kSize + c] == theirs) {
      ray |= std::uint64_t{1} << (r * kSize + c);
      r += d[0];
      c += d[1];
    }
    if (ray != 0 && r >= 0 && r < kSize && c >= 0 && c < kSize &&
        state.cells[r * kSize + c] == own) {
      flips |= ray;
    }
  }
  return flips;
}

bool Othello::HasPlacement(const GameState& state, Player player) const {
  for (int i = 0; i < kSize * kSize; ++i) {
    if (FlipsFor(state, player, i) != 0) return true;
  }
  return false;
}

int Othello::CountPlacements(const GameState& state, Player player) const {
  int n = 0;
  for (int i = 0; i < kSize * kSize; ++i) n += FlipsFor(state, player, i) != 0;
  return n;
}

Status Othello::FinalCount(const GameState& state) const {
  int margin = 0;
  for (int i = 0; i < kSize * kSize; ++i) {
    if (state.cells[i] == 1) ++margin;
    if (state.cells[i] == 2) --margin;
  }
  if (margin > 0) return Status::kFirstWins;
  if (margin < 0) return Status::kSecondWins;
  return Status::kDraw;
}

void Othello::LegalActions(const GameState& state, ActionList* out) const {
  out->clear();
  if (IsTerminal(state)) return;
  for (std::int16_t i = 0; i < kSize * kSize; ++i) {
    if (FlipsFor(state, state.to_move, i) != 0) out->push_back(Action{i});
  }
  if (out->empty()) out->push_back(Action{kPassIndex});
}

GameState Othello::DoApply(const GameState& state, Action action) const {
  GameState next = state;
  if (action.index != kPassIndex) {
    const std::uint64_t flips = FlipsFor(state, state.to_move, action.index);
    const std::int8_t own = PieceOf(state.to_move);
    next.cells[action.index] = own;
    for (int i = 0; i < kSize * kSize; ++i) {
      if (flips & (std::uint64_t{1} << i)) next.cells[i] = own;
    }
    next.status = ComputeStatus(next);
  }
  FinishPly(&next);
  return next;
}

Status Othello::ComputeStatus(const GameState& state) const {
  if (HasPlacement(state, Player::kFirst) ||
      HasPlacement(state, Player::kSecond)) {
    return Status::kOngoing;
  }
  return FinalCount(state);
}

int Othello::InferMoveCount(const GameState& state) const {
  return CountPieces(state, kSize * kSize) - 4;
}

std::string Othello::ActionToString(Action action) const {
  if (action.index == kPassIndex) return "pass";
  return PlacementToString(action, kSize);
}

Action Othello::ParseAction(std::string_view text) const {
  if (text == "pass") return Action{kPassIndex};
  const int cell = ParsePlacement(text, kSize, kSize);
  if (cell < 0) throw BadAction(*this, text);
  return Action{static_cast<std::int16_t>(cell)};
}

}  // namespace minibal
