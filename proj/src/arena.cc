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

#include "minibal/arena.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "minibal/error.h"
#include "minibal/json_io.h"

namespace minibal {

namespace {

std::string ShortNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

// Enough digits that parsed values keep the metric identities to 1e-12.
std::string CsvNumber(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

std::string CsvNumber(const std::optional<double>& x) {
  return x ? CsvNumber(*x) : std::string();
}

std::string VariantLabel(const AgentSpec& spec) {
  return spec.kind == AgentKind::kMcts
             ? std::string("MCTS")
             : std::string(VariantName(VariantForKind(spec.kind)));
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

}  // namespace

MatchRecord PlayMatch(std::shared_ptr<const Game> game, const AgentSpec& a,
                      const AgentSpec& b, Player seat_a, std::uint64_t seed) {
  if (a.id == b.id) {
    throw Error(ErrorCode::kInvalidAgentSpec,
                "match agents need distinct ids, both are '" + a.id + "'");
  }
  AgentSpec spec_a = a;
  AgentSpec spec_b = b;
  spec_a.seed = DeriveSeed(seed, {0, a.seed});
  spec_b.seed = DeriveSeed(seed, {1, b.seed});
  std::unique_ptr<Agent> agent_a = MakeAgent(game, spec_a);
  std::unique_ptr<Agent> agent_b = MakeAgent(game, spec_b);

  MatchRecord record;
  record.game = game->name();
  record.agent_a = a.id;
  record.agent_b = b.id;
  record.first_mover = seat_a == Player::kFirst ? a.id : b.id;
  record.seeds = MatchSeeds{seed, spec_a.seed, spec_b.seed};
  record.variant = VariantLabel(a);
  record.budget = a.budget.ToString();

  GameState state = game->InitialState();
  while (!game->IsTerminal(state)) {
    const bool a_moves = state.to_move == seat_a;
    Agent& mover = a_moves ? *agent_a : *agent_b;
    const std::string& id = a_moves ? a.id : b.id;
    const int move_number = record.plies + 1;
    Action action;
    try {
      action = mover.Choose(state);
    } catch (const Error& e) {
      throw Error(ErrorCode::kAgentFailure,
                  "agent '" + id + "' failed at move " +
                      std::to_string(move_number) + ": " +
                      std::string(ErrorCodeName(e.code())) + ": " + e.what());
    }
    if (!game->IsLegal(state, action)) {
      throw Error(ErrorCode::kAgentFailure,
                  "agent '" + id + "' played an illegal action at move " +
                      std::to_string(move_number));
    }
    record.moves.push_back(game->ActionToString(action));
    state = game->ApplyUnchecked(state, action);
    ++record.plies;
  }
  record.terminal_state = game->Serialize(state);
  record.b = game->BinaryOutcome(state, seat_a);
  record.score = game->TerminalScore(state, seat_a);
  return record;
}

std::string ReplayMoves(const Game& game, const MatchRecord& record) {
  GameState state = game.InitialState();
  for (const std::string& move : record.moves) {
    state = game.Apply(state, game.ParseAction(move));
  }
  return game.Serialize(state);
}

double BinaryGain(std::span<const int> outcomes) {
  if (outcomes.empty()) {
    throw Error(ErrorCode::kEmptySample, "binary gain of no matches");
  }
  const double sum = std::accumulate(outcomes.begin(), outcomes.end(), 0.0);
  return 100.0 * sum / static_cast<double>(outcomes.size());
}

double ScoreMetric(std::span<const double> scores) {
  if (scores.empty()) {
    throw Error(ErrorCode::kEmptySample, "score of no matches");
  }
  const double sum = std::accumulate(scores.begin(), scores.end(), 0.0);
  return sum / static_cast<double>(scores.size());
}

double ConfidenceRadius95(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw Error(ErrorCode::kInsufficientSample,
                "confidence radius needs at least 2 samples, got " +
                    std::to_string(n));
  }
  const double mean =
      std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

namespace {

struct CellKey {
  std::string variant;
  Budget budget;
  std::string game;

  bool operator<(const CellKey& o) const {
    if (variant != o.variant) return variant < o.variant;
    if (BudgetLess(budget, o.budget)) return true;
    if (BudgetLess(o.budget, budget)) return false;
    return game < o.game;
  }
};

MetricsSummary SummarizeCell(const CellKey& key,
                             const std::vector<const MatchRecord*>& records) {
  MetricsSummary s;
  s.variant = key.variant;
  s.budget = key.budget.ToString();
  s.game = key.game;
  std::vector<int> outcomes;
  std::vector<double> gains;
  std::vector<double> scores;
  std::int64_t wins = 0, draws = 0, losses = 0;
  for (const MatchRecord* r : records) {
    if (r->error) {
      ++s.n_failed;
      continue;
    }
    outcomes.push_back(r->b);
    gains.push_back(100.0 * r->b);
    scores.push_back(r->score);
    wins += r->b > 0;
    draws += r->b == 0;
    losses += r->b < 0;
  }
  s.n_matches = static_cast<std::int64_t>(outcomes.size());
  if (s.n_matches == 0) return s;
  const double n = static_cast<double>(s.n_matches);
  s.gain_pct = BinaryGain(outcomes);
  s.win_pct = 100.0 * wins / n;
  s.draw_pct = 100.0 * draws / n;
  s.loss_pct = 100.0 * losses / n;
  s.score_mean = ScoreMetric(scores);
  if (s.n_matches >= 2) {
    s.gain_cr95 = ConfidenceRadius95(gains);
    s.score_cr95 = ConfidenceRadius95(scores);
  }
  return s;
}

MetricsSummary AllGames(const std::vector<MetricsSummary>& cells) {
  MetricsSummary all;
  all.variant = cells.front().variant;
  all.budget = cells.front().budget;
  all.game = "all";
  double radius_gain = 0.0, radius_score = 0.0;
  bool have_radius = true;
  int games = 0;
  for (const MetricsSummary& c : cells) {
    all.n_failed += c.n_failed;
    if (c.n_matches == 0) continue;
    ++games;
    all.n_matches += c.n_matches;
    all.gain_pct += c.gain_pct;
    all.win_pct += c.win_pct;
    all.draw_pct += c.draw_pct;
    all.loss_pct += c.loss_pct;
    all.score_mean += c.score_mean;
    if (c.gain_cr95 && c.score_cr95) {
      radius_gain += *c.gain_cr95 * *c.gain_cr95;
      radius_score += *c.score_cr95 * *c.score_cr95;
    } else {
      have_radius = false;
    }
  }
  if (games == 0) return all;
  all.gain_pct /= games;
  all.win_pct /= games;
  all.draw_pct /= games;
  all.loss_pct /= games;
  all.score_mean /= games;
  if (have_radius) {
    all.gain_cr95 = std::sqrt(radius_gain) / games;
    all.score_cr95 = std::sqrt(radius_score) / games;
  }
  return all;
}

}  // namespace

std::vector<MetricsSummary> Summarize(std::span<const MatchRecord> records) {
  std::vector<const MatchRecord*> ordered;
  ordered.reserve(records.size());
  for (const MatchRecord& r : records) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const MatchRecord* x, const MatchRecord* y) {
                     return x->index < y->index;
                   });
  std::map<CellKey, std::vector<const MatchRecord*>> cells;
  for (const MatchRecord* r : ordered) {
    cells[CellKey{r->variant, ParseBudget(r->budget), r->game}].push_back(r);
  }

  std::vector<MetricsSummary> out;
  std::vector<MetricsSummary> group;
  auto flush = [&] {
    if (group.empty()) return;
    MetricsSummary all = AllGames(group);
    for (MetricsSummary& s : group) {
      if (s.n_matches > 0) out.push_back(std::move(s));
    }
    if (all.n_matches > 0) out.push_back(std::move(all));
    group.clear();
  };
  for (const auto& [key, list] : cells) {
    if (!group.empty() && (group.front().variant != key.variant ||
                           group.front().budget != key.budget.ToString())) {
      flush();
    }
    group.push_back(SummarizeCell(key, list));
  }
  flush();
  return out;
}

void ValidateTournament(const TournamentConfig& c) {
  auto fail = [](const std::string& why) {
    return Error(ErrorCode::kInvalidConfig, "tournament config: " + why);
  };
  if (c.games.empty()) throw fail("no games");
  for (const std::string& g : c.games) MakeGame(g);
  if (c.strong_pool.empty()) throw fail("empty strong_pool");
  if (c.opponent == OpponentKind::kPool && c.weak_pool.empty()) {
    throw fail("empty weak_pool");
  }
  for (const auto* pool : {&c.strong_pool, &c.weak_pool}) {
    for (const PoolEntry& e : *pool) {
      if (!(e.quality >= 0.0 && e.quality <= 1.0)) {
        throw fail("pool quality " + ShortNumber(e.quality) +
                   " outside [0, 1]");
      }
    }
  }
  if (c.variants.empty()) throw fail("no variants");
  if (c.budgets.empty()) throw fail("no budgets");
  for (const Budget& b : c.budgets) {
    if (b.empty()) throw fail("budget " + b.ToString() + " is empty");
  }
  if (c.opponent_budget && c.opponent_budget->empty()) {
    throw fail("opponent_budget is empty");
  }
  if (c.seats != "both" && c.seats != "first" && c.seats != "second") {
    throw fail("seats must be \"both\", \"first\" or \"second\"");
  }
  if (c.workers < 1) throw fail("workers must be >= 1");
  if (c.repeats < 1) throw fail("repeats must be >= 1");
  if (c.depth_bound && *c.depth_bound < 0) {
    throw fail("depth_bound_d must be >= 0");
  }
  if (!(c.mcts_exploration_c >= 0.0)) {
    throw fail("mcts exploration_c must be >= 0");
  }
}

std::vector<MatchJob> PlanTournament(const TournamentConfig& c) {
  ValidateTournament(c);
  std::vector<Player> seats;
  if (c.seats != "second") seats.push_back(Player::kFirst);
  if (c.seats != "first") seats.push_back(Player::kSecond);
  const bool vs_mcts = c.opponent == OpponentKind::kMcts;
  const std::size_t opponents = vs_mcts ? 1 : c.weak_pool.size();

  std::vector<MatchJob> jobs;
  for (std::size_t gi = 0; gi < c.games.size(); ++gi) {
    const std::string game = MakeGame(c.games[gi])->name();
    for (std::size_t vi = 0; vi < c.variants.size(); ++vi) {
      const Variant variant = c.variants[vi];
      for (std::size_t bi = 0; bi < c.budgets.size(); ++bi) {
        const Budget& budget = c.budgets[bi];
        for (std::size_t si = 0; si < c.strong_pool.size(); ++si) {
          const PoolEntry& strong = c.strong_pool[si];
          AgentSpec a;
          a.kind = KindForVariant(variant);
          a.id = "strong" + std::to_string(si) + ":" +
                 std::string(AgentKindName(a.kind)) + ":q=" +
                 ShortNumber(strong.quality) + ":s=" +
                 std::to_string(strong.seed);
          a.evaluator = EvalProfile{game, strong.quality, strong.seed, a.id};
          a.budget = budget;
          if (variant == Variant::kMinibalPSolvedWin) {
            a.depth_bound = c.depth_bound;
          }
          for (std::size_t wi = 0; wi < opponents; ++wi) {
            AgentSpec b;
            b.budget = c.opponent_budget.value_or(budget);
            if (vs_mcts) {
              b.kind = AgentKind::kMcts;
              b.id = "mcts";
              b.exploration_c = c.mcts_exploration_c;
            } else {
              const PoolEntry& weak = c.weak_pool[wi];
              b.kind = AgentKind::kUbfmMinimax;
              b.id = "weak" + std::to_string(wi) + ":UBFM-Minimax:q=" +
                     ShortNumber(weak.quality) + ":s=" +
                     std::to_string(weak.seed);
              b.evaluator = EvalProfile{game, weak.quality, weak.seed, b.id};
            }
            for (Player seat : seats) {
              for (int rep = 0; rep < c.repeats; ++rep) {
                MatchJob job;
                job.index = static_cast<std::int64_t>(jobs.size());
                job.game = game;
                job.agent_a = a;
                job.agent_b = b;
                job.seat_a = seat;
                job.seed = DeriveSeed(
                    c.master_seed,
                    {gi, vi, bi, si, wi,
                     static_cast<std::uint64_t>(seat == Player::kSecond),
                     static_cast<std::uint64_t>(rep)});
                jobs.push_back(std::move(job));
              }
            }
          }
        }
      }
    }
  }
  return jobs;
}

MatchRecord RunJob(const MatchJob& job) {
  MatchRecord record;
  try {
    record = PlayMatch(MakeGame(job.game), job.agent_a, job.agent_b,
                       job.seat_a, job.seed);
  } catch (const Error& e) {
    record = MatchRecord{};
    record.game = job.game;
    record.agent_a = job.agent_a.id;
    record.agent_b = job.agent_b.id;
    record.first_mover =
        job.seat_a == Player::kFirst ? job.agent_a.id : job.agent_b.id;
    record.seeds.match = job.seed;
    record.variant = VariantLabel(job.agent_a);
    record.budget = job.agent_a.budget.ToString();
    record.error = std::string(ErrorCodeName(e.code())) + ": " + e.what();
  }
  record.index = job.index;
  return record;
}

std::vector<MatchRecord> RunTournament(
    const TournamentConfig& config,
    const std::function<void(const MatchRecord&)>& on_record) {
  const std::vector<MatchJob> jobs = PlanTournament(config);
  std::vector<std::optional<MatchRecord>> done(jobs.size());
  std::atomic<std::size_t> next_job{0};
  std::mutex emit_mutex;
  std::size_t next_emit = 0;

  auto worker = [&] {
    for (std::size_t i = next_job++; i < jobs.size(); i = next_job++) {
      MatchRecord record = RunJob(jobs[i]);
      std::lock_guard<std::mutex> lock(emit_mutex);
      done[i] = std::move(record);
      while (next_emit < done.size() && done[next_emit]) {
        if (on_record) on_record(*done[next_emit]);
        ++next_emit;
      }
    }
  };
  const int threads =
      std::max(1, std::min<int>(config.workers, static_cast<int>(jobs.size())));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  std::vector<MatchRecord> records;
  records.reserve(done.size());
  for (auto& r : done) records.push_back(std::move(*r));
  return records;
}

std::string SummaryCsv(std::span<const MetricsSummary> summaries) {
  std::string out =
      "variant,budget,game,n,gain,cr95_gain,win,draw,loss,score,cr95_score\n";
  for (const MetricsSummary& s : summaries) {
    out += s.variant + "," + s.budget + "," + s.game + "," +
           std::to_string(s.n_matches) + "," + CsvNumber(s.gain_pct) + "," +
           CsvNumber(s.gain_cr95) + "," + CsvNumber(s.win_pct) + "," +
           CsvNumber(s.draw_pct) + "," + CsvNumber(s.loss_pct) + "," +
           CsvNumber(s.score_mean) + "," + CsvNumber(s.score_cr95) + "\n";
  }
  return out;
}

std::string CurvesCsv(std::span<const MetricsSummary> summaries) {
  std::vector<const MetricsSummary*> rows;
  for (const MetricsSummary& s : summaries) rows.push_back(&s);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const MetricsSummary* x, const MetricsSummary* y) {
                     if (x->variant != y->variant) {
                       return x->variant < y->variant;
                     }
                     if (x->game != y->game) {
                       if (x->game == "all" || y->game == "all") {
                         return y->game == "all";
                       }
                       return x->game < y->game;
                     }
                     return BudgetLess(ParseBudget(x->budget),
                                       ParseBudget(y->budget));
                   });
  std::string out = "variant,game,budget,n,gain,cr95_gain,score,cr95_score\n";
  for (const MetricsSummary* s : rows) {
    out += s->variant + "," + s->game + "," + s->budget + "," +
           std::to_string(s->n_matches) + "," + CsvNumber(s->gain_pct) + "," +
           CsvNumber(s->gain_cr95) + "," + CsvNumber(s->score_mean) + "," +
           CsvNumber(s->score_cr95) + "\n";
  }
  return out;
}

void EmitReport(std::span<const MatchRecord> records, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir);
  const std::vector<MetricsSummary> summaries = Summarize(records);
  const std::filesystem::path root(dir);
  WriteFile(root / "summary.csv", SummaryCsv(summaries));
  WriteFile(root / "curves.csv", CurvesCsv(summaries));

  std::vector<const MatchRecord*> failed;
  for (const MatchRecord& r : records) {
    if (r.error) failed.push_back(&r);
  }
  std::stable_sort(failed.begin(), failed.end(),
                   [](const MatchRecord* x, const MatchRecord* y) {
                     return x->index < y->index;
                   });
  std::string text = "index,game,variant,budget,agent_a,agent_b,error\n";
  for (const MatchRecord* r : failed) {
    std::string message = *r->error;
    std::replace(message.begin(), message.end(), ',', ';');
    std::replace(message.begin(), message.end(), '\n', ' ');
    text += std::to_string(r->index) + "," + r->game + "," + r->variant +
            "," + r->budget + "," + r->agent_a + "," + r->agent_b + "," +
            message + "\n";
  }
  WriteFile(root / "failures.csv", text);
}

void WriteRecords(std::span<const MatchRecord> records,
                  const std::string& path) {
  std::string text;
  for (const MatchRecord& r : records) {
    text += nlohmann::json(r).dump();
    text += '\n';
  }
  WriteFile(path, text);
}

std::vector<MatchRecord> ReadRecords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::vector<MatchRecord> records;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      records.push_back(nlohmann::json::parse(line).get<MatchRecord>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError, path + ":" +
                                              std::to_string(line_number) +
                                              ": " + e.what());
    }
  }
  return records;
}

}  // namespace minibal
