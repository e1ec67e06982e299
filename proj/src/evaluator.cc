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

#include "minibal/evaluator.h"

#include <algorithm>
#include <cmath>

#include "minibal/error.h"
#include "minibal/games.h"

namespace minibal {
namespace {

// Connect-Four window weights for two and three pieces with the rest empty.
constexpr double kTwoWeight = 1.0;
constexpr double kThreeWeight = 4.0;
constexpr double kConnectFourScale = 0.1;

constexpr double kOthelloDiscWeight = 0.6;
constexpr double kOthelloMobilityWeight = 0.4;

double TicTacToeHeuristic(const GameState& state, Player perspective) {
  const std::int8_t own = PieceOf(perspective);
  const std::int8_t theirs = PieceOf(Opponent(perspective));
  int open_for = 0;
  int open_against = 0;
  for (const auto& line : TicTacToe::Lines()) {
    bool has_own = false;
    bool has_theirs = false;
    for (int cell : line) {
      has_own |= state.cells[cell] == own;
      has_theirs |= state.cells[cell] == theirs;
    }
    open_for += !has_theirs;
    open_against += !has_own;
  }
  return (open_for - open_against) / 8.0;
}

double ConnectFourHeuristic(const ConnectFour& game, const GameState& state,
                            Player perspective) {
  const std::int8_t own = PieceOf(perspective);
  double sum = 0.0;
  for (const auto& window : game.Windows()) {
    int mine = 0;
    int theirs = 0;
    for (int cell : window) {
      const std::int8_t p = state.cells[cell];
      if (p == own) {
        ++mine;
      } else if (p != kEmpty) {
        ++theirs;
      }
    }
    if (theirs == 0) {
      if (mine == 2) sum += kTwoWeight;
      if (mine == 3) sum += kThreeWeight;
    } else if (mine == 0) {
      if (theirs == 2) sum -= kTwoWeight;
      if (theirs == 3) sum -= kThreeWeight;
    }
  }
  return Squash(kConnectFourScale * sum);
}

double OthelloHeuristic(const Othello& game, const GameState& state,
                        Player perspective) {
  const std::int8_t own = PieceOf(perspective);
  int discs_own = 0;
  int discs_theirs = 0;
  for (int i = 0; i < game.num_cells(); ++i) {
    if (state.cells[i] == own) {
      ++discs_own;
    } else if (state.cells[i] != kEmpty) {
      ++discs_theirs;
    }
  }
  const int mob_own = game.CountPlacements(state, perspective);
  const int mob_theirs = game.CountPlacements(state, Opponent(perspective));
  const double disc = discs_own + discs_theirs == 0
                          ? 0.0
                          : static_cast<double>(discs_own - discs_theirs) /
                                (discs_own + discs_theirs);
  const double mobility = mob_own + mob_theirs == 0
                              ? 0.0
                              : static_cast<double>(mob_own - mob_theirs) /
                                    (mob_own + mob_theirs);
  return kOthelloDiscWeight * disc + kOthelloMobilityWeight * mobility;
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t base,
                         std::initializer_list<std::uint64_t> parts) {
  std::uint64_t x = SplitMix64(base);
  for (std::uint64_t p : parts) x = SplitMix64(x ^ SplitMix64(p + 1));
  return x;
}

double Squash(double x) { return x / (1.0 + std::abs(x)); }

double BaseHeuristic(const Game& game, const GameState& state,
                     Player perspective) {
  if (game.IsTerminal(state)) {
    throw Error(ErrorCode::kTerminalState,
                "heuristic requested for terminal state " +
                    game.Serialize(state));
  }
  switch (game.kind()) {
    case GameKind::kTicTacToe:
      return TicTacToeHeuristic(state, perspective);
    case GameKind::kConnectFour:
      return ConnectFourHeuristic(static_cast<const ConnectFour&>(game), state,
                                  perspective);
    case GameKind::kOthello:
      return OthelloHeuristic(static_cast<const Othello&>(game), state,
                              perspective);
  }
  return 0.0;
}

double NoiseValue(std::uint64_t state_key, std::uint64_t seed) {
  const std::uint64_t bits = SplitMix64(state_key ^ seed);
  // 53 uniform bits onto [0, 1), then onto [-1, 1).
  const double unit = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

double DegradedEval(const Game& game, const EvalProfile& profile,
                    const GameState& state, Player perspective) {
  const double base = BaseHeuristic(game, state, perspective);
  if (profile.quality == 0.0) return base;
  double noise = NoiseValue(game.StateKey(state), profile.seed);
  if (perspective == Player::kSecond) noise = -noise;
  const double blended =
      (1.0 - profile.quality) * base + profile.quality * noise;
  return std::clamp(blended, -1.0, 1.0);
}

double CombinedEval(const Game& game, const EvalProfile& profile,
                    const GameState& state, Player perspective) {
  if (game.IsTerminal(state)) return game.TerminalScore(state, perspective);
  return DegradedEval(game, profile, state, perspective);
}

Evaluator::Evaluator(std::shared_ptr<const Game> game, EvalProfile profile)
    : game_(std::move(game)), profile_(std::move(profile)) {
  if (!(profile_.quality >= 0.0 && profile_.quality <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "evaluator quality must lie in [0, 1], got " +
                    std::to_string(profile_.quality));
  }
}

}  // namespace minibal
