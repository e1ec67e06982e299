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

// Plain UCT Monte-Carlo tree search with uniform random playouts and no
// evaluation function.

#ifndef MINIBAL_MCTS_H_
#define MINIBAL_MCTS_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "minibal/game.h"
#include "minibal/search.h"

namespace minibal {

struct MctsConfig {
  Budget budget = Budget::Iterations(200);
  double exploration_c = std::sqrt(2.0);
  // When false an empty budget is an error; when true it yields the first
  // legal action.
  bool allow_empty_budget = false;
};

struct MctsNode {
  Action action;  // edge from the parent
  int parent = -1;
  std::int64_t visits = 0;
  // Sum of playout outcomes from the point of view of the player who chose
  // `action` at the parent.
  double total_reward = 0.0;
  std::vector<int> children;
  ActionList untried;
};

// Node pool; index 0 is the root.
class MctsTree {
 public:
  std::vector<MctsNode>& nodes() { return nodes_; }
  const std::vector<MctsNode>& nodes() const { return nodes_; }
  const MctsNode& root() const { return nodes_.front(); }

  // visits >= sum of child visits and |total_reward| <= visits everywhere.
  bool CheckAccounting() const;

 private:
  std::vector<MctsNode> nodes_;
};

// Child (index into node.children) maximizing
// mean + exploration_c * sqrt(ln(parent visits) / child visits).
// Every child must have at least one visit. Ties go to the first child.
std::size_t UctSelect(const MctsTree& tree, const MctsNode& node,
                      double exploration_c);

struct MctsResult {
  Action chosen;
  std::int64_t iterations = 0;
  std::int64_t root_visits = 0;
  double root_mean = 0.0;  // mean reward of the chosen child
};

// Most-visited root action (ties: smallest action). Throws kNoLegalActions
// on a terminal root and kInvalidBudget on an empty budget unless allowed.
MctsResult MctsSearch(const Game& game, const GameState& root,
                      const MctsConfig& config, std::mt19937_64& rng,
                      MctsTree* tree_out = nullptr);

Action MctsSearch(const Game& game, const GameState& root,
                  const MctsConfig& config, std::uint64_t seed);

}  // namespace minibal

#endif  // MINIBAL_MCTS_H_
