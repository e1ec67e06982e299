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

// Unbounded best-first minimax with completion, and the balanced-play
// decision rules layered on top of it.
//
// Each state in the transposition table carries a heuristic value v, a
// completion value c in {-1, 0, +1}, a resolution flag r (v and c are exact
// under the variant's rules) and per-action selection counts n. All values
// are stored from the root player's point of view for the lifetime of the
// table, so one table can be reused across all of an agent's moves in a
// match.
//
// A search iteration walks down from the root, at every expanded node
// picking among the unresolved children with the mover's rule, expands the
// first unexpanded state it reaches, and backs (v, c, r) up the path. The
// final move is the mover's rule applied to all root children.

#ifndef MINIBAL_SEARCH_H_
#define MINIBAL_SEARCH_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "minibal/evaluator.h"
#include "minibal/game.h"

namespace minibal {

enum class Variant { kMinimax, kMinibalN, kMinibalP, kMinibalPSolvedWin };

// "Minimax", "MinibalN", "MinibalP", "MinibalPSolvedWin".
std::string_view VariantName(Variant variant);
Variant ParseVariant(std::string_view name);

struct Budget {
  enum class Kind { kIterations, kSeconds };

  Kind kind = Kind::kIterations;
  double amount = 0;

  static Budget Iterations(std::int64_t n) {
    return {Kind::kIterations, static_cast<double>(n)};
  }
  static Budget Seconds(double s) { return {Kind::kSeconds, s}; }

  bool empty() const { return !(amount > 0); }
  std::string ToString() const;  // "200" or "0.5s"
};

// Inverse of Budget::ToString. Throws kInvalidConfig.
Budget ParseBudget(std::string_view text);

// Total order: iteration budgets before wall-clock ones, then by amount.
bool BudgetLess(const Budget& a, const Budget& b);

// Whose turn it is at a node, relative to the table's root player.
enum class Role { kBalanced, kOpponent };

enum class Phase { kDescent, kFinalMove };

// What a decision rule sees of one child.
struct ChildLabel {
  Action action;
  double v = 0.0;
  int c = 0;
  bool r = false;
  int rd = 0;
  std::uint32_t n = 0;
};

using ChildLabels = boost::container::static_vector<ChildLabel, kMaxActions>;

inline std::span<const ChildLabel> AsSpan(const ChildLabels& labels) {
  return {labels.data(), labels.size()};
}

// Decision rules. Each returns an index into `children` (non-empty) and is
// independent of the order of `children`: remaining ties after n go to the
// smallest action.

// Maximizes (c, v), then minimizes n.
std::size_t BestActionMinimax(std::span<const ChildLabel> children);
// Minimizes (c, v), then minimizes n. Used at every opponent node.
std::size_t OpponentBestAction(std::span<const ChildLabel> children);
// Minimizes (|c|, |v|), then n.
std::size_t BestActionMinibalN(std::span<const ChildLabel> children);
// With e = c for resolved decisive children and e = v otherwise: the
// smallest non-negative e if any exists, else the largest e; then n.
std::size_t BestActionMinibalP(std::span<const ChildLabel> children);
// A resolved winning child (within `depth_bound` when set) with the
// smallest resolution depth, ties by action; nullopt when none qualifies.
std::optional<std::size_t> SolvedWinAction(
    std::span<const ChildLabel> children, std::optional<int> depth_bound);

double EffectiveValue(const ChildLabel& child);

std::size_t SelectByRule(std::span<const ChildLabel> children, Variant variant,
                         Role role, std::optional<int> depth_bound);

struct Edge {
  Action action;
  std::uint64_t child = 0;
  std::uint32_t n = 0;
};

struct NodeEntry {
  double v = 0.0;
  std::int8_t c = 0;
  bool r = false;
  std::int16_t rd = 0;
  bool terminal = false;
  bool expanded = false;
  Player to_move = Player::kFirst;
  std::vector<Edge> edges;  // canonical action order once expanded
};

class TranspositionTable {
 public:
  TranspositionTable() = default;

  NodeEntry* Find(std::uint64_t key);
  const NodeEntry* Find(std::uint64_t key) const;
  bool Contains(std::uint64_t key) const { return entries_.contains(key); }
  // Entry references stay valid across later insertions.
  NodeEntry& Insert(std::uint64_t key, NodeEntry entry);

  std::size_t size() const { return entries_.size(); }
  void Clear();

  std::optional<Player> root_player() const { return root_player_; }
  void set_root_player(Player p) { root_player_ = p; }
  std::uint64_t root_key() const { return root_key_; }
  void set_root_key(std::uint64_t key) { root_key_ = key; }

  const std::unordered_map<std::uint64_t, NodeEntry>& entries() const {
    return entries_;
  }

 private:
  std::unordered_map<std::uint64_t, NodeEntry> entries_;
  std::optional<Player> root_player_;
  std::uint64_t root_key_ = 0;
};

struct SearchConfig {
  Variant variant = Variant::kMinimax;
  // Only meaningful with kMinibalPSolvedWin.
  std::optional<int> depth_bound;
  Budget budget = Budget::Iterations(1000);
  EvalProfile evaluator;
  std::uint64_t seed = 0;
};

struct SearchResult {
  Action chosen;
  NodeEntry root_entry;
  std::int64_t iterations = 0;
  double elapsed = 0.0;
  bool resolved_early = false;
};

class UbfmSearch {
 public:
  // Throws kInvalidConfig for an evaluator/game mismatch or a depth bound on
  // a variant other than kMinibalPSolvedWin.
  UbfmSearch(std::shared_ptr<const Game> game, SearchConfig config);

  // Runs descents until the budget is spent or the root is resolved. The
  // table's root player is fixed by the first search that uses it.
  // Throws kNoLegalActions on a terminal root, kInvalidBudget on an empty
  // budget.
  SearchResult Search(const GameState& root, TranspositionTable* table) const;

  // Adds `state` to the table (evaluating it if absent), creates entries for
  // all of its children and backs its own labels up from them. Throws
  // kDuplicateExpansion if the state was already expanded.
  const NodeEntry& ExpandLeaf(const GameState& state,
                              TranspositionTable* table) const;

  // Recomputes (v, c) and (r, rd) of an expanded entry from its children.
  void Backup(NodeEntry* entry, const TranspositionTable& table) const;

  // Index into entry.edges chosen by the mover's rule. In the descent phase
  // only unresolved children are candidates; returns nullopt when there
  // are none.
  std::optional<std::size_t> SelectAction(const NodeEntry& entry,
                                          const TranspositionTable& table,
                                          Phase phase) const;

  Role RoleAt(const NodeEntry& entry, const TranspositionTable& table) const;

  // When set, one line per iteration:
  // iter,path,expanded_key,root_v,root_c,root_r
  void set_trace(std::ostream* trace) { trace_ = trace; }

  const SearchConfig& config() const { return config_; }
  const Game& game() const { return *game_; }

 private:
  void Iterate(const GameState& root, std::int64_t iteration,
               TranspositionTable* table) const;
  void Expand(NodeEntry* entry, const GameState& state,
              TranspositionTable* table) const;
  void BackupResolution(NodeEntry* entry, Role role,
                        std::span<const ChildLabel> children) const;
  void CollectChildren(const NodeEntry& entry, const TranspositionTable& table,
                       ChildLabels* out) const;

  std::shared_ptr<const Game> game_;
  SearchConfig config_;
  Evaluator evaluator_;
  std::ostream* trace_ = nullptr;
};

}  // namespace minibal

#endif  // MINIBAL_SEARCH_H_
