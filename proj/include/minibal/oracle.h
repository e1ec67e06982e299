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

// Exhaustive memoized negamax over small games, used as ground truth for
// the search's completion values.

#ifndef MINIBAL_ORACLE_H_
#define MINIBAL_ORACLE_H_

#include <cstdint>
#include <memory>
#include <unordered_map>

#include "minibal/game.h"
#include "minibal/search.h"

namespace minibal {

class NegamaxOracle {
 public:
  // Throws kInvalidConfig when the board has more than kMaxOracleCells
  // cells; larger boards do not fit the exact state encoding.
  explicit NegamaxOracle(std::shared_ptr<const Game> game);

  static constexpr int kMaxOracleCells = 31;

  // Game-theoretic value in {-1, 0, +1} from `perspective`.
  int Value(const GameState& state, Player perspective);

  // Number of distinct states solved so far.
  std::size_t size() const { return memo_.size(); }

  // Exact (collision-free) encoding: two bits per cell plus the mover bit.
  std::uint64_t Encode(const GameState& state) const;

 private:
  // Value for the player to move.
  int Solve(const GameState& state);

  std::shared_ptr<const Game> game_;
  std::unordered_map<std::uint64_t, std::int8_t> memo_;
};

struct TableCheck {
  std::int64_t resolved = 0;     // resolved entries compared
  std::int64_t mismatches = 0;   // c differs from the oracle value
  std::int64_t above_value = 0;  // c exceeds the oracle value
};

// Walks every entry reachable from `root` through the table's edges and
// compares each resolved c with the oracle value for the table's root
// player.
TableCheck CheckTable(const Game& game, const TranspositionTable& table,
                      const GameState& root, NegamaxOracle* oracle);

}  // namespace minibal

#endif  // MINIBAL_ORACLE_H_
