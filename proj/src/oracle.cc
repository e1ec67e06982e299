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

#include "minibal/oracle.h"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "minibal/error.h"

namespace minibal {

NegamaxOracle::NegamaxOracle(std::shared_ptr<const Game> game)
    : game_(std::move(game)) {
  if (game_->num_cells() > kMaxOracleCells) {
    throw Error(ErrorCode::kInvalidConfig,
                "oracle supports at most 31 cells, " + game_->name() +
                    " has " + std::to_string(game_->num_cells()));
  }
}

std::uint64_t NegamaxOracle::Encode(const GameState& state) const {
  std::uint64_t code = state.to_move == Player::kSecond ? 1 : 0;
  for (int i = 0; i < game_->num_cells(); ++i) {
    code |= static_cast<std::uint64_t>(state.cells[i]) << (1 + 2 * i);
  }
  return code;
}

int NegamaxOracle::Value(const GameState& state, Player perspective) {
  const int v = Solve(state);
  return perspective == state.to_move ? v : -v;
}

int NegamaxOracle::Solve(const GameState& state) {
  if (game_->IsTerminal(state)) {
    return game_->BinaryOutcome(state, state.to_move);
  }
  const std::uint64_t code = Encode(state);
  if (auto it = memo_.find(code); it != memo_.end()) return it->second;
  ActionList actions;
  game_->LegalActions(state, &actions);
  int best = -1;
  for (Action a : actions) {
    const GameState child = game_->ApplyUnchecked(state, a);
    const int v = child.to_move == state.to_move ? Solve(child) : -Solve(child);
    best = std::max(best, v);
    if (best == 1) break;
  }
  memo_.emplace(code, static_cast<std::int8_t>(best));
  return best;
}

TableCheck CheckTable(const Game& game, const TranspositionTable& table,
                      const GameState& root, NegamaxOracle* oracle) {
  TableCheck check;
  if (!table.root_player()) return check;
  const Player perspective = *table.root_player();
  std::unordered_set<std::uint64_t> seen{game.StateKey(root)};
  std::deque<GameState> queue{root};
  while (!queue.empty()) {
    const GameState state = queue.front();
    queue.pop_front();
    const NodeEntry* entry = table.Find(game.StateKey(state));
    if (entry == nullptr) continue;
    if (entry->r) {
      ++check.resolved;
      const int value = oracle->Value(state, perspective);
      if (entry->c != value) ++check.mismatches;
      if (entry->c > value) ++check.above_value;
    }
    for (const Edge& edge : entry->edges) {
      if (seen.insert(edge.child).second) {
        queue.push_back(game.ApplyUnchecked(state, edge.action));
      }
    }
  }
  return check;
}

}  // namespace minibal
