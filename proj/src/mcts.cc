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

#include "minibal/mcts.h"

#include <cassert>
#include <chrono>
#include <limits>

#include "minibal/error.h"

namespace minibal {

bool MctsTree::CheckAccounting() const {
  for (const MctsNode& node : nodes_) {
    std::int64_t child_visits = 0;
    for (int c : node.children) child_visits += nodes_[c].visits;
    if (child_visits > node.visits) return false;
    if (std::abs(node.total_reward) > static_cast<double>(node.visits) + 1e-9) {
      return false;
    }
  }
  return true;
}

std::size_t UctSelect(const MctsTree& tree, const MctsNode& node,
                      double exploration_c) {
  const double log_parent = std::log(static_cast<double>(node.visits));
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const MctsNode& child = tree.nodes()[node.children[i]];
    const double n = static_cast<double>(child.visits);
    const double score =
        child.total_reward / n + exploration_c * std::sqrt(log_parent / n);
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

namespace {

// Uniform random playout; the result is from `perspective`'s point of view.
// The ply cap is enforced by the rules (a cap hit is a draw).
double Playout(const Game& game, GameState state, Player perspective,
               std::mt19937_64& rng) {
  ActionList actions;
  while (!game.IsTerminal(state)) {
    game.LegalActions(state, &actions);
    std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
    state = game.ApplyUnchecked(state, actions[pick(rng)]);
  }
  return game.BinaryOutcome(state, perspective);
}

}  // namespace

MctsResult MctsSearch(const Game& game, const GameState& root,
                      const MctsConfig& config, std::mt19937_64& rng,
                      MctsTree* tree_out) {
  if (game.IsTerminal(root)) {
    throw Error(ErrorCode::kNoLegalActions,
                "MCTS from terminal state " + game.Serialize(root));
  }
  ActionList root_actions;
  game.LegalActions(root, &root_actions);
  if (config.budget.empty()) {
    if (config.allow_empty_budget) return MctsResult{root_actions.front()};
    throw Error(ErrorCode::kInvalidBudget,
                "MCTS budget must be positive, got " +
                    config.budget.ToString());
  }

  MctsTree local;
  MctsTree& tree = tree_out != nullptr ? *tree_out : local;
  auto& nodes = tree.nodes();
  nodes.clear();
  nodes.push_back(MctsNode{});
  nodes[0].untried = root_actions;

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(config.budget.amount));
  const bool by_iterations = config.budget.kind == Budget::Kind::kIterations;
  const auto limit = static_cast<std::int64_t>(config.budget.amount);

  MctsResult result;
  std::vector<int> path;
  while (by_iterations ? result.iterations < limit : Clock::now() < deadline) {
    // Selection.
    int current = 0;
    GameState state = root;
    path.assign(1, 0);
    while (nodes[current].untried.empty() && !nodes[current].children.empty()) {
      const std::size_t i = UctSelect(tree, nodes[current],
                                      config.exploration_c);
      current = nodes[current].children[i];
      state = game.ApplyUnchecked(state, nodes[current].action);
      path.push_back(current);
    }
    // Expansion.
    if (!nodes[current].untried.empty()) {
      auto& untried = nodes[current].untried;
      std::uniform_int_distribution<std::size_t> pick(0, untried.size() - 1);
      const std::size_t k = pick(rng);
      const Action action = untried[k];
      untried.erase(untried.begin() + static_cast<std::ptrdiff_t>(k));
      GameState next = game.ApplyUnchecked(state, action);
      MctsNode child;
      child.action = action;
      child.parent = current;
      game.LegalActions(next, &child.untried);
      nodes.push_back(std::move(child));
      const int index = static_cast<int>(nodes.size()) - 1;
      nodes[current].children.push_back(index);
      current = index;
      path.push_back(current);
      state = next;
    }
    // Simulation, scored for the player who moved into `current`; the
    // root's mover is the root player's opponent by this convention.
    const Player mover = Opponent(state.to_move);
    double reward = Playout(game, state, mover, rng);
    // Backpropagation, flipping sign each ply.
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      MctsNode& node = nodes[*it];
      ++node.visits;
      node.total_reward += reward;
      reward = -reward;
    }
    ++result.iterations;
    assert(tree.CheckAccounting());
  }

  const MctsNode& root_node = nodes[0];
  if (root_node.children.empty()) {
    // Only reachable with a wall-clock budget that expired immediately.
    result.chosen = root_actions.front();
    return result;
  }
  int best = root_node.children.front();
  for (int c : root_node.children) {
    const MctsNode& child = nodes[c];
    const MctsNode& incumbent = nodes[best];
    if (child.visits > incumbent.visits ||
        (child.visits == incumbent.visits &&
         child.action < incumbent.action)) {
      best = c;
    }
  }
  result.chosen = nodes[best].action;
  result.root_visits = root_node.visits;
  result.root_mean = nodes[best].total_reward /
                     static_cast<double>(std::max<std::int64_t>(1, nodes[best].visits));
  return result;
}

Action MctsSearch(const Game& game, const GameState& root,
                  const MctsConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return MctsSearch(game, root, config, rng).chosen;
}

}  // namespace minibal
