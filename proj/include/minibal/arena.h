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

// Matches between agents, strong-vs-weak tournaments and their metrics.

#ifndef MINIBAL_ARENA_H_
#define MINIBAL_ARENA_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minibal/agent.h"
#include "minibal/game.h"
#include "minibal/search.h"

namespace minibal {

struct MatchSeeds {
  std::uint64_t match = 0;
  std::uint64_t agent_a = 0;
  std::uint64_t agent_b = 0;
};

// One finished (or failed) match, seen from agent_a, the evaluated agent.
struct MatchRecord {
  std::int64_t index = 0;  // position in the tournament's job order
  std::string game;
  std::string agent_a;
  std::string agent_b;
  std::string first_mover;  // id of the agent that moved first
  std::vector<std::string> moves;
  std::string terminal_state;
  int b = 0;
  double score = 0.0;
  int plies = 0;
  MatchSeeds seeds;
  std::string variant;  // of agent_a
  std::string budget;   // of agent_a
  std::optional<std::string> error;
};

// Plays agent_a (seated as `seat_a`) against agent_b from the initial state.
// Each agent owns its search state for the whole match. Agent search seeds
// are derived from `seed` and the specs' own seeds. Throws
// kInvalidAgentSpec for equal ids or bad specs and kAgentFailure, naming
// the 1-based move number, when an agent fails to produce a legal move.
MatchRecord PlayMatch(std::shared_ptr<const Game> game, const AgentSpec& a,
                      const AgentSpec& b, Player seat_a, std::uint64_t seed);

// Replays `record.moves` and returns the serialized final state.
std::string ReplayMoves(const Game& game, const MatchRecord& record);

// Metrics. Percentages are in [-100, 100].

// Mean of outcomes times 100. Throws kEmptySample.
double BinaryGain(std::span<const int> outcomes);
// Mean terminal score. Throws kEmptySample.
double ScoreMetric(std::span<const double> scores);
// 1.96 * sample standard deviation / sqrt(n). Throws kInsufficientSample
// for fewer than two samples.
double ConfidenceRadius95(std::span<const double> samples);

struct MetricsSummary {
  std::string variant;
  std::string budget;
  std::string game;  // or "all"
  std::int64_t n_matches = 0;
  std::int64_t n_failed = 0;
  double gain_pct = 0.0;
  double win_pct = 0.0;
  double draw_pct = 0.0;
  double loss_pct = 0.0;
  double score_mean = 0.0;
  std::optional<double> gain_cr95;  // absent below two matches
  std::optional<double> score_cr95;
};

// One summary per (variant, budget, game) cell plus one per (variant,
// budget) over all games. The all-games cell weights each game equally;
// its radius is sqrt(sum of squared per-game radii) / number of games.
// Failed records are counted but excluded from the metrics. Sorted by
// variant, budget, then game with "all" last.
std::vector<MetricsSummary> Summarize(std::span<const MatchRecord> records);

struct PoolEntry {
  double quality = 0.0;
  std::uint64_t seed = 0;
};

enum class OpponentKind { kPool, kMcts };

struct TournamentConfig {
  std::vector<std::string> games;
  std::vector<PoolEntry> strong_pool;
  std::vector<PoolEntry> weak_pool;  // unused against MCTS
  std::vector<Variant> variants;
  std::vector<Budget> budgets;
  std::string seats = "both";  // "both", "first" or "second"
  std::uint64_t master_seed = 0;
  int workers = 1;
  std::string output_dir;

  OpponentKind opponent = OpponentKind::kPool;
  // Budget of the weak Minimax or MCTS opponent; unset means the same
  // budget as the evaluated agent.
  std::optional<Budget> opponent_budget = Budget::Iterations(200);
  double mcts_exploration_c = std::sqrt(2.0);
  int repeats = 1;  // matches per pairing and seat
  std::optional<int> depth_bound;
};

// Throws kInvalidConfig.
void ValidateTournament(const TournamentConfig& config);

struct MatchJob {
  std::int64_t index = 0;
  std::string game;
  AgentSpec agent_a;
  AgentSpec agent_b;
  Player seat_a = Player::kFirst;
  std::uint64_t seed = 0;
};

// Every match of the tournament in its canonical order.
std::vector<MatchJob> PlanTournament(const TournamentConfig& config);

// Runs one job; failures become records with `error` set.
MatchRecord RunJob(const MatchJob& job);

// Runs all jobs on config.workers threads. `on_record` is called from a
// single thread at a time, in job order, as soon as a record and all its
// predecessors are done.
std::vector<MatchRecord> RunTournament(
    const TournamentConfig& config,
    const std::function<void(const MatchRecord&)>& on_record = {});

// Writes summary.csv, curves.csv and failures.csv into `dir`. Output bytes
// depend only on the records. Throws kIoError naming the path.
void EmitReport(std::span<const MatchRecord> records, const std::string& dir);

// Raw records as newline-delimited JSON.
void WriteRecords(std::span<const MatchRecord> records,
                  const std::string& path);
std::vector<MatchRecord> ReadRecords(const std::string& path);

std::string SummaryCsv(std::span<const MetricsSummary> summaries);
std::string CurvesCsv(std::span<const MetricsSummary> summaries);

}  // namespace minibal

#endif  // MINIBAL_ARENA_H_
