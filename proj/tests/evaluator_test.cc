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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "minibal/evaluator.h"
#include "minibal/game.h"
#include "test_util.h"

namespace minibal {
namespace {

using testing::Play;
using testing::RandomPlayout;
using testing::RandomState;

EvalProfile Profile(const std::string& game, double quality,
                    std::uint64_t seed = 1) {
  return EvalProfile{game, quality, seed, "test"};
}

// Open-line count written out by hand: rows, columns, diagonals.
double OpenLinesOracle(const GameState& s, Player p) {
  static constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8},
                                       {0, 3, 6}, {1, 4, 7}, {2, 5, 8},
                                       {0, 4, 8}, {2, 4, 6}};
  int open_for = 0;
  int open_against = 0;
  for (const auto& line : kLines) {
    int own = 0;
    int theirs = 0;
    for (int cell : line) {
      if (s.cells[cell] == PieceOf(p)) ++own;
      if (s.cells[cell] == PieceOf(Opponent(p))) ++theirs;
    }
    if (theirs == 0) ++open_for;
    if (own == 0) ++open_against;
  }
  return (open_for - open_against) / 8.0;
}

TEST(BaseHeuristic, TicTacToeExamples) {
  auto game = MakeGame("tictactoe");
  EXPECT_EQ(BaseHeuristic(*game, game->InitialState(), Player::kFirst), 0.0);
  const GameState center = Play(*game, {"b2"});
  // All 8 lines stay open for X; the 4 lines avoiding b2 stay open for O.
  EXPECT_EQ(BaseHeuristic(*game, center, Player::kFirst), 0.5);
  EXPECT_EQ(BaseHeuristic(*game, center, Player::kSecond), -0.5);
}

TEST(BaseHeuristic, TicTacToeMatchesLineOracle) {
  auto game = MakeGame("tictactoe");
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    RandomPlayout(*game, rng, [&](const GameState& s) {
      if (game->IsTerminal(s)) return;
      for (Player p : {Player::kFirst, Player::kSecond}) {
        ASSERT_DOUBLE_EQ(BaseHeuristic(*game, s, p), OpenLinesOracle(s, p));
      }
    });
  }
}

TEST(BaseHeuristic, OthelloInitialIsBalanced) {
  auto game = MakeGame("othello6");
  EXPECT_EQ(BaseHeuristic(*game, game->InitialState(), Player::kFirst), 0.0);
}

TEST(BaseHeuristic, TerminalStateIsRejected) {
  auto game = MakeGame("tictactoe");
  const GameState s = Play(*game, {"a1", "a2", "b1", "b2", "c1"});
  EXPECT_ERROR_CODE(BaseHeuristic(*game, s, Player::kFirst),
                    ErrorCode::kTerminalState);
  EXPECT_ERROR_CODE(DegradedEval(*game, Profile("tictactoe", 0.5), s,
                                 Player::kFirst),
                    ErrorCode::kTerminalState);
}

TEST(Squash, BoundedOddMonotone) {
  EXPECT_EQ(Squash(0.0), 0.0);
  EXPECT_DOUBLE_EQ(Squash(1.0), 0.5);
  EXPECT_DOUBLE_EQ(Squash(-3.0), -0.75);
  EXPECT_LT(Squash(1e12), 1.0);
  EXPECT_LT(Squash(2.0), Squash(2.5));
}

TEST(CombinedEval, TerminalAndDrawStates) {
  auto game = MakeGame("tictactoe");
  const EvalProfile profile = Profile("tictactoe", 0.7);
  const GameState win = Play(*game, {"a1", "a2", "b1", "b2", "c1"});
  EXPECT_EQ(CombinedEval(*game, profile, win, Player::kFirst),
            game->TerminalScore(win, Player::kFirst));
  const GameState draw =
      Play(*game, {"b2", "a1", "c1", "a3", "a2", "c2", "b1", "b3", "c3"});
  EXPECT_EQ(CombinedEval(*game, profile, draw, Player::kFirst), 0.0);
  const GameState open = Play(*game, {"b2"});
  EXPECT_EQ(CombinedEval(*game, Profile("tictactoe", 0.0), open,
                         Player::kFirst),
            BaseHeuristic(*game, open, Player::kFirst));
}

TEST(Evaluator, RejectsQualityOutsideUnitInterval) {
  auto game = MakeGame("tictactoe");
  EXPECT_ERROR_CODE(Evaluator(game, Profile("tictactoe", 1.5)),
                    ErrorCode::kInvalidConfig);
  EXPECT_ERROR_CODE(Evaluator(game, Profile("tictactoe", -0.1)),
                    ErrorCode::kInvalidConfig);
}

TEST(DeriveSeed, DistinctPartsGiveDistinctSeeds) {
  EXPECT_EQ(DeriveSeed(1, {2, 3}), DeriveSeed(1, {2, 3}));
  EXPECT_NE(DeriveSeed(1, {2, 3}), DeriveSeed(1, {3, 2}));
  EXPECT_NE(DeriveSeed(1, {0}), DeriveSeed(1, {}));
  EXPECT_NE(DeriveSeed(1, {0}), DeriveSeed(2, {0}));
}

class EvalGames : public ::testing::TestWithParam<std::string> {};

TEST_P(EvalGames, QualityZeroIsBaseHeuristic) {
  auto game = MakeGame(GetParam());
  const EvalProfile profile = Profile(GetParam(), 0.0, 99);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const GameState s = RandomState(*game, rng, 30);
    for (Player p : {Player::kFirst, Player::kSecond}) {
      ASSERT_EQ(DegradedEval(*game, profile, s, p), BaseHeuristic(*game, s, p));
    }
  }
}

TEST_P(EvalGames, PureNoiseIsKeyedAndCentered) {
  auto game = MakeGame(GetParam());
  const EvalProfile profile = Profile(GetParam(), 1.0, 17);
  const EvalProfile twin = profile;
  std::mt19937_64 rng(2);
  double sum = 0.0;
  constexpr int kStates = 10000;
  for (int i = 0; i < kStates; ++i) {
    const GameState s = RandomState(*game, rng, 40);
    const double value = DegradedEval(*game, profile, s, Player::kFirst);
    ASSERT_EQ(value, DegradedEval(*game, profile, s, Player::kFirst));
    ASSERT_EQ(value, DegradedEval(*game, twin, s, Player::kFirst));
    sum += value;
  }
  EXPECT_NEAR(sum / kStates, 0.0, 0.05);
}

TEST_P(EvalGames, RangeAndAntisymmetryFuzz) {
  auto game = MakeGame(GetParam());
  std::mt19937_64 rng(3);
  int checked = 0;
  for (double quality : {0.0, 0.3, 0.8, 1.0}) {
    const EvalProfile profile = Profile(GetParam(), quality, 5);
    while (checked < 10000 * (1 + static_cast<int>(quality * 3))) {
      RandomPlayout(*game, rng, [&](const GameState& s) {
        const double a = CombinedEval(*game, profile, s, Player::kFirst);
        const double b = CombinedEval(*game, profile, s, Player::kSecond);
        ASSERT_GE(a, -1.0);
        ASSERT_LE(a, 1.0);
        ASSERT_EQ(a, -b);
        ++checked;
      });
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Games, EvalGames,
                         ::testing::Values("tictactoe", "connect4",
                                           "othello6"));

}  // namespace
}  // namespace minibal
