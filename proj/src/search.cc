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

#include "minibal/search.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <tuple>

#include "minibal/error.h"

namespace minibal {

std::string_view VariantName(Variant variant) {
  switch (variant) {
    case Variant::kMinimax: return "Minimax";
    case Variant::kMinibalN: return "MinibalN";
    case Variant::kMinibalP: return "MinibalP";
    case Variant::kMinibalPSolvedWin: return "MinibalPSolvedWin";
  }
  return "Unknown";
}

Variant ParseVariant(std::string_view name) {
  for (Variant v : {Variant::kMinimax, Variant::kMinibalN, Variant::kMinibalP,
                    Variant::kMinibalPSolvedWin}) {
    if (name == VariantName(v)) return v;
  }
  throw Error(ErrorCode::kInvalidConfig,
              "unknown variant '" + std::string(name) + "'");
}

std::string Budget::ToString() const {
  if (kind == Kind::kIterations) {
    return std::to_string(static_cast<std::int64_t>(amount));
  }
  std::ostringstream out;
  out << amount << "s";
  return out.str();
}

Budget ParseBudget(std::string_view text) {
  std::string body(text);
  const bool seconds = !body.empty() && body.back() == 's';
  if (seconds) body.pop_back();
  std::size_t used = 0;
  double amount = 0.0;
  try {
    amount = std::stod(body, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (body.empty() || used != body.size() || !(amount >= 0.0) ||
      (!seconds && amount != std::floor(amount))) {
    throw Error(ErrorCode::kInvalidConfig,
                "bad budget '" + std::string(text) + "'");
  }
  return seconds ? Budget::Seconds(amount)
                 : Budget::Iterations(static_cast<std::int64_t>(amount));
}

bool BudgetLess(const Budget& a, const Budget& b) {
  if (a.kind != b.kind) return a.kind == Budget::Kind::kIterations;
  return a.amount < b.amount;
}

// ---------------------------------------------------------------------------
// Decision rules

namespace {

// Index of the child ranked first by `rank` (smaller tuple wins). Every rank
// ends with (n, action) so the result does not depend on input order.
template <typename Rank>
std::size_t ArgFirst(std::span<const ChildLabel> children, Rank rank) {
  std::size_t best = 0;
  auto best_key = rank(children[0]);
  for (std::size_t i = 1; i < children.size(); ++i) {
    auto key = rank(children[i]);
    if (key < best_key) {
      best = i;
      best_key = key;
    }
  }
  return best;
}

}  // namespace

std::size_t BestActionMinimax(std::span<const ChildLabel> children) {
  return ArgFirst(children, [](const ChildLabel& ch) {
    return std::make_tuple(-ch.c, -ch.v, ch.n, ch.action.index);
  });
}

std::size_t OpponentBestAction(std::span<const ChildLabel> children) {
  return ArgFirst(children, [](const ChildLabel& ch) {
    return std::make_tuple(ch.c, ch.v, ch.n, ch.action.index);
  });
}

std::size_t BestActionMinibalN(std::span<const ChildLabel> children) {
  return ArgFirst(children, [](const ChildLabel& ch) {
    return std::make_tuple(std::abs(ch.c), std::abs(ch.v), ch.n,
                           ch.action.index);
  });
}

double EffectiveValue(const ChildLabel& child) {
  return child.r && child.c != 0 ? static_cast<double>(child.c) : child.v;
}

std::size_t BestActionMinibalP(std::span<const ChildLabel> children) {
  // Lexicographic (e < 0, |e|): the non-negative value nearest zero, else
  // the negative value nearest zero.
  return ArgFirst(children, [](const ChildLabel& ch) {
    const double e = EffectiveValue(ch);
    return std::make_tuple(e < 0 ? 1 : 0, std::abs(e), ch.n, ch.action.index);
  });
}

std::optional<std::size_t> SolvedWinAction(
    std::span<const ChildLabel> children, std::optional<int> depth_bound) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < children.size(); ++i) {
    const ChildLabel& ch = children[i];
    if (!ch.r || ch.c != 1) continue;
    if (depth_bound && ch.rd > *depth_bound) continue;
    if (!best || std::make_pair(ch.rd, ch.action.index) <
                     std::make_pair(children[*best].rd,
                                    children[*best].action.index)) {
      best = i;
    }
  }
  return best;
}

std::size_t SelectByRule(std::span<const ChildLabel> children, Variant variant,
                         Role role, std::optional<int> depth_bound) {
  if (role == Role::kOpponent) return OpponentBestAction(children);
  switch (variant) {
    case Variant::kMinimax:
      return BestActionMinimax(children);
    case Variant::kMinibalN:
      return BestActionMinibalN(children);
    case Variant::kMinibalP:
      return BestActionMinibalP(children);
    case Variant::kMinibalPSolvedWin:
      if (auto win = SolvedWinAction(children, depth_bound)) return *win;
      return BestActionMinibalP(children);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Transposition table

NodeEntry* TranspositionTable::Find(std::uint64_t key) {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

const NodeEntry* TranspositionTable::Find(std::uint64_t key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

NodeEntry& TranspositionTable::Insert(std::uint64_t key, NodeEntry entry) {
  return entries_.insert_or_assign(key, std::move(entry)).first->second;
}

void TranspositionTable::Clear() {
  entries_.clear();
  root_player_.reset();
  root_key_ = 0;
}

// ---------------------------------------------------------------------------
// Search

UbfmSearch::UbfmSearch(std::shared_ptr<const Game> game, SearchConfig config)
    : game_(game), config_(std::move(config)), evaluator_(game, config_.evaluator) {
  if (!config_.evaluator.game.empty() && config_.evaluator.game != game_->name()) {
    throw Error(ErrorCode::kInvalidConfig,
                "evaluator '" + config_.evaluator.id + "' is for game " +
                    config_.evaluator.game + ", not " + game_->name());
  }
  if (config_.depth_bound && config_.variant != Variant::kMinibalPSolvedWin) {
    throw Error(ErrorCode::kInvalidConfig,
                "depth bound is only valid with MinibalPSolvedWin");
  }
  if (config_.depth_bound && *config_.depth_bound < 0) {
    throw Error(ErrorCode::kInvalidConfig, "depth bound must be >= 0");
  }
}

Role UbfmSearch::RoleAt(const NodeEntry& entry,
                        const TranspositionTable& table) const {
  return entry.to_move == table.root_player().value_or(entry.to_move)
             ? Role::kBalanced
             : Role::kOpponent;
}

void UbfmSearch::CollectChildren(const NodeEntry& entry,
                                 const TranspositionTable& table,
                                 ChildLabels* out) const {
  out->clear();
  for (const Edge& edge : entry.edges) {
    const NodeEntry* child = table.Find(edge.child);
    out->push_back(ChildLabel{edge.action, child->v, child->c, child->r,
                              child->rd, edge.n});
  }
}

std::optional<std::size_t> UbfmSearch::SelectAction(
    const NodeEntry& entry, const TranspositionTable& table,
    Phase phase) const {
  ChildLabels all;
  CollectChildren(entry, table, &all);
  if (all.empty()) return std::nullopt;
  const Role role = RoleAt(entry, table);
  if (phase == Phase::kFinalMove) {
    return SelectByRule(AsSpan(all), config_.variant, role, config_.depth_bound);
  }
  ChildLabels open;
  boost::container::static_vector<std::size_t, kMaxActions> index;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!all[i].r) {
      open.push_back(all[i]);
      index.push_back(i);
    }
  }
  if (open.empty()) return std::nullopt;
  return index[SelectByRule(AsSpan(open), config_.variant, role, config_.depth_bound)];
}

void UbfmSearch::BackupResolution(NodeEntry* entry, Role role,
                                  std::span<const ChildLabel> children) const {
  // A trigger child certifies the node on its own; otherwise every child
  // must be resolved.
  auto is_trigger = [&](const ChildLabel& ch) {
    if (!ch.r) return false;
    if (role == Role::kOpponent) return ch.c == -1;
    switch (config_.variant) {
      case Variant::kMinimax:
        return ch.c == 1;
      case Variant::kMinibalN:
      case Variant::kMinibalP:
        return ch.c == 0;
      case Variant::kMinibalPSolvedWin:
        return ch.c == 0 ||
               (ch.c == 1 &&
                (!config_.depth_bound || ch.rd <= *config_.depth_bound));
    }
    return false;
  };

  int trigger_rd = -1;
  bool all_resolved = true;
  int max_rd = 0;
  for (const ChildLabel& ch : children) {
    all_resolved &= ch.r;
    max_rd = std::max(max_rd, ch.rd);
    if (is_trigger(ch) && (trigger_rd < 0 || ch.rd < trigger_rd)) {
      trigger_rd = ch.rd;
    }
  }
  if (trigger_rd >= 0) {
    entry->r = true;
    entry->rd = static_cast<std::int16_t>(1 + trigger_rd);
  } else if (all_resolved) {
    entry->r = true;
    entry->rd = static_cast<std::int16_t>(1 + max_rd);
  } else {
    entry->r = false;
    entry->rd = 0;
  }
}

void UbfmSearch::Backup(NodeEntry* entry,
                        const TranspositionTable& table) const {
  if (entry->terminal || entry->edges.empty()) return;
  ChildLabels children;
  CollectChildren(*entry, table, &children);
  const Role role = RoleAt(*entry, table);
  const std::size_t best =
      SelectByRule(AsSpan(children), config_.variant, role, config_.depth_bound);
  entry->v = children[best].v;
  entry->c = static_cast<std::int8_t>(children[best].c);
  BackupResolution(entry, role, AsSpan(children));
}

void UbfmSearch::Expand(NodeEntry* entry, const GameState& state,
                        TranspositionTable* table) const {
  const Player root_player = *table->root_player();
  ActionList actions;
  game_->LegalActions(state, &actions);
  entry->edges.clear();
  entry->edges.reserve(actions.size());
  for (Action a : actions) {
    const GameState child = game_->ApplyUnchecked(state, a);
    const std::uint64_t key = game_->StateKey(child);
    if (!table->Contains(key)) {
      NodeEntry leaf;
      leaf.to_move = child.to_move;
      leaf.v = evaluator_(child, root_player);
      if (game_->IsTerminal(child)) {
        leaf.terminal = true;
        leaf.c = static_cast<std::int8_t>(
            game_->BinaryOutcome(child, root_player));
        leaf.r = true;
        leaf.rd = 0;
      }
      table->Insert(key, std::move(leaf));
    }
    entry->edges.push_back(Edge{a, key, 0});
  }
  entry->expanded = true;
  Backup(entry, *table);
}

const NodeEntry& UbfmSearch::ExpandLeaf(const GameState& state,
                                        TranspositionTable* table) const {
  if (!table->root_player()) table->set_root_player(state.to_move);
  const Player root_player = *table->root_player();
  const std::uint64_t key = game_->StateKey(state);
  NodeEntry* entry = table->Find(key);
  if (entry != nullptr && (entry->expanded || entry->terminal)) {
    throw Error(ErrorCode::kDuplicateExpansion,
                "state already expanded: " + game_->Serialize(state));
  }
  if (entry == nullptr) {
    NodeEntry fresh;
    fresh.to_move = state.to_move;
    fresh.v = evaluator_(state, root_player);
    if (game_->IsTerminal(state)) {
      fresh.terminal = true;
      fresh.c = static_cast<std::int8_t>(
          game_->BinaryOutcome(state, root_player));
      fresh.r = true;
      fresh.rd = 0;
      return table->Insert(key, std::move(fresh));
    }
    entry = &table->Insert(key, std::move(fresh));
  }
  Expand(entry, state, table);
  return *entry;
}

void UbfmSearch::Iterate(const GameState& root, std::int64_t iteration,
                         TranspositionTable* table) const {
  boost::container::static_vector<NodeEntry*, kEngineMaxPlies + 1> path;
  std::string trace_path;
  GameState state = root;
  NodeEntry* entry = table->Find(table->root_key());
  path.push_back(entry);
  while (entry->expanded && !entry->terminal) {
    const auto pick = SelectAction(*entry, *table, Phase::kDescent);
    // Children may have been resolved through a transposition since this
    // entry was last backed up; the backup below refreshes it.
    if (!pick) break;
    Edge& edge = entry->edges[*pick];
    ++edge.n;
    if (trace_ != nullptr) {
      if (!trace_path.empty()) trace_path.push_back(' ');
      trace_path += game_->ActionToString(edge.action);
    }
    state = game_->ApplyUnchecked(state, edge.action);
    entry = table->Find(edge.child);
    path.push_back(entry);
  }
  std::uint64_t expanded_key = 0;
  if (!entry->expanded && !entry->terminal) {
    expanded_key = game_->StateKey(state);
    Expand(entry, state, table);
  }
  for (auto it = path.rbegin(); it != path.rend(); ++it) Backup(*it, *table);

  if (trace_ != nullptr) {
    const NodeEntry& r = *path.front();
    char key_hex[19];
    std::snprintf(key_hex, sizeof(key_hex), "%016llx",
                  static_cast<unsigned long long>(expanded_key));
    *trace_ << iteration << "," << trace_path << "," << key_hex << "," << r.v
            << "," << static_cast<int>(r.c) << "," << (r.r ? 1 : 0) << "\n";
  }
}

SearchResult UbfmSearch::Search(const GameState& root,
                                TranspositionTable* table) const {
  if (game_->IsTerminal(root)) {
    throw Error(ErrorCode::kNoLegalActions,
                "search from terminal state " + game_->Serialize(root));
  }
  if (config_.budget.empty()) {
    throw Error(ErrorCode::kInvalidBudget,
                "search budget must be positive, got " +
                    config_.budget.ToString());
  }
  if (!table->root_player()) table->set_root_player(root.to_move);
  if (*table->root_player() != root.to_move) {
    throw Error(ErrorCode::kInvalidConfig,
                "table belongs to the other player");
  }

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const std::uint64_t root_key = game_->StateKey(root);
  table->set_root_key(root_key);
  const NodeEntry* root_entry = table->Find(root_key);
  if (root_entry == nullptr || !root_entry->expanded) {
    root_entry = &ExpandLeaf(root, table);
  }

  const bool by_iterations =
      config_.budget.kind == Budget::Kind::kIterations;
  const auto limit_iterations =
      static_cast<std::int64_t>(config_.budget.amount);
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(config_.budget.amount));

  SearchResult result;
  while (!root_entry->r) {
    if (by_iterations ? result.iterations >= limit_iterations
                      : Clock::now() >= deadline) {
      break;
    }
    Iterate(root, result.iterations, table);
    ++result.iterations;
  }
  result.resolved_early =
      root_entry->r &&
      (by_iterations ? result.iterations < limit_iterations
                     : Clock::now() < deadline);

  const auto pick = SelectAction(*root_entry, *table, Phase::kFinalMove);
  result.chosen = root_entry->edges[*pick].action;
  result.root_entry = *root_entry;
  result.elapsed =
      std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace minibal
