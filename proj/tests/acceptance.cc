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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every threshold and run shape is pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minibal/agent.h"
#include "minibal/arena.h"
#include "minibal/oracle.h"
#include "minibal/search.h"

namespace minibal {
namespace {

// Criterion 1.
constexpr int kOracleSearchesPerCell = 13;  // x 4 variants x 2 games = 104
constexpr std::int64_t kOracleIterations = 2000;
constexpr int kOracleMaxOpeningPlies = 5;

// Criterion 2.
constexpr std::int64_t kUnlimited = 1'000'000'000;
constexpr int kRandomGames = 1000;

// Criterion 3.
constexpr double kStrengthGainMin = 40.0;
constexpr int kStrengthWeakSeeds = 100;  // x 2 seats = 200 matches per game
constexpr std::int64_t kStrengthBudget = 1000;

// Criteria 4-6.
constexpr std::int64_t kBalanceBudget = 1000;
constexpr double kBalanceAbsGainMax = 20.0;

// Criteria 7-8.
constexpr std::int64_t kMctsPlayouts = 50;
constexpr int kMctsMinimaxRepeats = 100;  // x 2 seats = 200 per game
constexpr int kMctsRepeats = 50;  // x 2 seats = 100 per game per sweep cell
constexpr double kVeryWeakGainMin = 80.0;

// Criterion 9.
constexpr double kIdentityTolerance = 1e-9;

constexpr std::uint64_t kMasterSeed = 2026;
const std::vector<std::string> kTournamentGames = {"connect4", "othello6"};
const std::vector<std::string> kOracleGames = {"tictactoe", "connect4-5x4"};
const std::vector<Variant> kAllVariants = {
    Variant::kMinimax, Variant::kMinibalN, Variant::kMinibalP,
    Variant::kMinibalPSolvedWin};

struct Verdict {
  int criterion;
  std::string name;
  bool pass;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       since)
      .count();
}

// ---------------------------------------------------------------------------

Verdict OracleSoundness() {
  int searches = 0;
  bool ok = true;
  std::string detail;
  for (Variant variant : kAllVariants) {
    TableCheck total;
    for (const std::string& name : kOracleGames) {
      auto game = MakeGame(name);
      NegamaxOracle oracle(game);
      std::mt19937_64 rng(DeriveSeed(kMasterSeed, {1, static_cast<std::uint64_t>(variant)}));
      for (int i = 0; i < kOracleSearchesPerCell; ++i) {
        GameState root = game->InitialState();
        const int plies = static_cast<int>(rng() % (kOracleMaxOpeningPlies + 1));
        for (int p = 0; p < plies; ++p) {
          const ActionList actions = game->LegalActions(root);
          const GameState next = game->Apply(root, actions[rng() % actions.size()]);
          if (game->IsTerminal(next)) break;
          root = next;
        }
        SearchConfig config;
        config.variant = variant;
        config.budget = Budget::Iterations(kOracleIterations);
        config.evaluator = EvalProfile{name, 0.25 * (i % 4),
                                       static_cast<std::uint64_t>(i), ""};
        UbfmSearch search(game, config);
        TranspositionTable table;
        search.Search(root, &table);
        const TableCheck check = CheckTable(*game, table, root, &oracle);
        total.resolved += check.resolved;
        total.mismatches += check.mismatches;
        total.above_value += check.above_value;
        ++searches;
      }
    }
    std::printf("  %-18s resolved=%lld violations=%lld above_oracle=%lld\n",
                std::string(VariantName(variant)).c_str(),
                static_cast<long long>(total.resolved),
                static_cast<long long>(total.mismatches),
                static_cast<long long>(total.above_value));
    if (total.mismatches != 0) {
      ok = false;
      detail += Format("%s:%lld ", std::string(VariantName(variant)).c_str(),
                       static_cast<long long>(total.mismatches));
    }
  }
  return {1, "oracle soundness", ok && searches >= 100,
          Format("%d searches; violations %s", searches,
                 detail.empty() ? "none" : detail.c_str())};
}

Verdict SolvedGameConvergence() {
  auto game = MakeGame("tictactoe");
  SearchConfig config;
  config.variant = Variant::kMinimax;
  config.budget = Budget::Iterations(kUnlimited);
  config.evaluator = EvalProfile{"tictactoe", 0.0, 0, ""};
  UbfmSearch search(game, config);
  TranspositionTable table;
  const SearchResult root = search.Search(game->InitialState(), &table);
  const bool root_ok = root.root_entry.r && root.root_entry.c == 0;
  std::printf("  root: r=%d c=%d after %lld iterations\n", root.root_entry.r,
              root.root_entry.c, static_cast<long long>(root.iterations));

  int wins = 0, draws = 0, losses = 0;
  std::mt19937_64 rng(DeriveSeed(kMasterSeed, {2}));
  for (int g = 0; g < kRandomGames; ++g) {
    const Player seat = g % 2 == 0 ? Player::kFirst : Player::kSecond;
    AgentSpec spec;
    spec.id = "minimax";
    spec.evaluator = config.evaluator;
    spec.budget = config.budget;
    UbfmAgent agent(game, spec);
    GameState s = game->InitialState();
    while (!game->IsTerminal(s)) {
      if (s.to_move == seat) {
        s = game->Apply(s, agent.Choose(s));
      } else {
        const ActionList actions = game->LegalActions(s);
        s = game->Apply(s, actions[rng() % actions.size()]);
      }
    }
    const int b = game->BinaryOutcome(s, seat);
    wins += b > 0;
    draws += b == 0;
    losses += b < 0;
  }
  std::printf("  vs random: %d wins, %d draws, %d losses\n", wins, draws,
              losses);
  return {2, "solved-game convergence", root_ok && losses == 0,
          Format("root c=%d r=%d; %d games, %d losses", root.root_entry.c,
                 root.root_entry.r, kRandomGames, losses)};
}

// ---------------------------------------------------------------------------

struct Run {
  std::vector<MatchRecord> records;
  std::vector<MetricsSummary> summaries;
};

Run RunAndReport(const TournamentConfig& config, const std::string& label,
                 const std::filesystem::path& out) {
  const auto start = std::chrono::steady_clock::now();
  Run run;
  run.records = RunTournament(config);
  run.summaries = Summarize(run.records);
  const auto dir = out / label;
  EmitReport(run.records, dir.string());
  WriteRecords(run.records, (dir / "records.jsonl").string());
  std::printf("  %s: %zu matches in %.0f s\n", label.c_str(),
              run.records.size(), Seconds(start));
  std::printf("  %-18s %-6s %-9s %5s %8s %7s %8s %7s\n", "variant", "budget",
              "game", "n", "gain", "cr95", "score", "cr95");
  for (const MetricsSummary& s : run.summaries) {
    std::printf("  %-18s %-6s %-9s %5lld %8.2f %7.2f %8.4f %7.4f\n",
                s.variant.c_str(), s.budget.c_str(), s.game.c_str(),
                static_cast<long long>(s.n_matches), s.gain_pct,
                s.gain_cr95.value_or(0.0), s.score_mean,
                s.score_cr95.value_or(0.0));
  }
  return run;
}

const MetricsSummary* Cell(const Run& run, Variant v, const std::string& budget,
                           const std::string& game) {
  for (const MetricsSummary& s : run.summaries) {
    if (s.variant == VariantName(v) && s.budget == budget && s.game == game) {
      return &s;
    }
  }
  return nullptr;
}

int FailedMatches(const Run& run) {
  int failed = 0;
  for (const MatchRecord& r : run.records) failed += r.error.has_value();
  return failed;
}

TournamentConfig BaseConfig(int workers) {
  TournamentConfig config;
  config.games = kTournamentGames;
  config.seats = "both";
  config.master_seed = kMasterSeed;
  config.workers = workers;
  return config;
}

Verdict StrengthPremise(int workers, const std::filesystem::path& out,
                        std::vector<Run>* runs) {
  TournamentConfig config = BaseConfig(workers);
  config.strong_pool = {{0.0, 1}};
  for (int s = 1; s <= kStrengthWeakSeeds; ++s) {
    config.weak_pool.push_back({0.8, static_cast<std::uint64_t>(s)});
  }
  config.variants = {Variant::kMinimax};
  config.budgets = {Budget::Iterations(kStrengthBudget)};
  config.opponent_budget = std::nullopt;  // equal budget
  runs->push_back(RunAndReport(config, "strength", out));
  const Run& run = runs->back();
  bool ok = FailedMatches(run) == 0;
  std::string detail;
  const std::string budget = std::to_string(kStrengthBudget);
  for (const std::string& game : kTournamentGames) {
    const MetricsSummary* c = Cell(run, Variant::kMinimax, budget, game);
    ok = ok && c != nullptr && c->n_matches >= 200 &&
         c->gain_pct >= kStrengthGainMin;
    if (c != nullptr) {
      detail += Format("%s %.1f (n=%lld) ", game.c_str(), c->gain_pct,
                       static_cast<long long>(c->n_matches));
    }
  }
  return {3, "strength premise", ok, detail};
}

std::vector<Verdict> BalanceCriteria(int workers,
                                     const std::filesystem::path& out,
                                     std::vector<Run>* runs) {
  TournamentConfig config = BaseConfig(workers);
  for (double q : {0.0, 0.1, 0.2, 0.3}) {
    for (std::uint64_t seed : {1, 2}) config.strong_pool.push_back({q, seed});
  }
  for (double q : {0.6, 0.7, 0.8, 0.9}) {
    for (std::uint64_t seed : {1, 2}) config.weak_pool.push_back({q, seed});
  }
  config.variants = kAllVariants;
  config.budgets = {Budget::Iterations(kBalanceBudget)};
  config.opponent_budget = Budget::Iterations(kBalanceBudget);
  runs->push_back(RunAndReport(config, "balance", out));
  const Run& run = runs->back();
  const std::string budget = std::to_string(kBalanceBudget);
  auto gain = [&](Variant v, const std::string& game) {
    const MetricsSummary* c = Cell(run, v, budget, game);
    return c == nullptr ? std::nan("") : c->gain_pct;
  };
  auto score = [&](Variant v, const std::string& game) {
    const MetricsSummary* c = Cell(run, v, budget, game);
    return c == nullptr ? std::nan("") : c->score_mean;
  };
  const bool complete = FailedMatches(run) == 0;

  bool order_ok = complete;
  std::string order_detail;
  for (const std::string& game : kTournamentGames) {
    const double mm = gain(Variant::kMinimax, game);
    const double p = gain(Variant::kMinibalP, game);
    const double n = gain(Variant::kMinibalN, game);
    const MetricsSummary* c = Cell(run, Variant::kMinibalP, budget, game);
    order_ok = order_ok && c != nullptr && c->n_matches >= 100 &&
               std::abs(p) < mm && n < p;
    order_detail += Format("%s M=%.1f P=%.1f N=%.1f; ", game.c_str(), mm, p, n);
  }
  const double p_all = gain(Variant::kMinibalP, "all");
  order_ok = order_ok && std::abs(p_all) <= kBalanceAbsGainMax;
  order_detail += Format("all P=%.1f", p_all);

  const double score_p = score(Variant::kMinibalP, "all");
  const double score_m = score(Variant::kMinimax, "all");
  const bool score_ok = complete && std::abs(score_p) < score_m;

  const double sw = gain(Variant::kMinibalPSolvedWin, "all");
  const bool sw_ok = complete && sw > p_all;

  return {
      {4, "balance ordering", order_ok, order_detail},
      {5, "score ordering", score_ok,
       Format("all score P=%.4f M=%.4f", score_p, score_m)},
      {6, "solved-win adjustment", sw_ok,
       Format("all gain SolvedWin=%.1f P=%.1f", sw, p_all)},
  };
}

std::vector<Verdict> VeryWeakCriteria(int workers,
                                      const std::filesystem::path& out,
                                      std::vector<Run>* runs) {
  const std::vector<std::int64_t> sweep = {50, 200, 1000, 5000};
  TournamentConfig config = BaseConfig(workers);
  config.strong_pool = {{0.0, 1}};
  config.opponent = OpponentKind::kMcts;
  config.opponent_budget = Budget::Iterations(kMctsPlayouts);
  config.repeats = kMctsRepeats;

  TournamentConfig minimax = config;
  minimax.variants = {Variant::kMinimax};
  minimax.repeats = kMctsMinimaxRepeats;
  minimax.budgets = {Budget::Iterations(sweep.back())};
  runs->push_back(RunAndReport(minimax, "mcts_minimax", out));
  const Run& mm_run = runs->back();

  TournamentConfig balanced = config;
  balanced.variants = {Variant::kMinibalP};
  for (std::int64_t b : sweep) balanced.budgets.push_back(Budget::Iterations(b));
  runs->push_back(RunAndReport(balanced, "mcts_minibalp", out));
  const Run& p_run = runs->back();

  const std::string top = std::to_string(sweep.back());
  bool c7 = FailedMatches(mm_run) == 0 && FailedMatches(p_run) == 0;
  std::string d7;
  for (const std::string& game : kTournamentGames) {
    const MetricsSummary* m = Cell(mm_run, Variant::kMinimax, top, game);
    const MetricsSummary* p = Cell(p_run, Variant::kMinibalP, top, game);
    c7 = c7 && m != nullptr && p != nullptr && m->n_matches >= 200 &&
         m->gain_pct >= kVeryWeakGainMin;
    if (m != nullptr && p != nullptr) {
      d7 += Format("%s M=%.1f P=%.1f; ", game.c_str(), m->gain_pct, p->gain_pct);
    }
  }
  const MetricsSummary* m_all = Cell(mm_run, Variant::kMinimax, top, "all");
  const MetricsSummary* p_all = Cell(p_run, Variant::kMinibalP, top, "all");
  c7 = c7 && m_all != nullptr && p_all != nullptr &&
       p_all->gain_pct < m_all->gain_pct;
  if (m_all != nullptr && p_all != nullptr) {
    d7 += Format("all M=%.1f P=%.1f", m_all->gain_pct, p_all->gain_pct);
  }

  bool c8 = FailedMatches(p_run) == 0;
  std::string d8;
  const MetricsSummary* prev = nullptr;
  for (std::int64_t b : sweep) {
    const MetricsSummary* c =
        Cell(p_run, Variant::kMinibalP, std::to_string(b), "all");
    if (c == nullptr || !c->gain_cr95) {
      c8 = false;
      continue;
    }
    d8 += Format("%lld:%.1f ", static_cast<long long>(b), c->gain_pct);
    if (prev != nullptr) {
      const double drop = prev->gain_pct - c->gain_pct;
      const double radius = std::hypot(*prev->gain_cr95, *c->gain_cr95);
      if (drop > radius) c8 = false;
    }
    prev = c;
  }
  return {{7, "very-weak opponent", c7, d7},
          {8, "budget-sweep onset", c8, d8}};
}

Verdict MetricIdentities(const std::vector<Run>& runs,
                         const std::filesystem::path& out) {
  bool ok = !runs.empty();
  std::size_t checked = 0;
  std::size_t identical = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (const MetricsSummary& s : runs[i].summaries) {
      ++checked;
      ok = ok &&
           std::abs(s.gain_pct - (s.win_pct - s.loss_pct)) <= kIdentityTolerance &&
           std::abs(s.win_pct + s.draw_pct + s.loss_pct - 100.0) <=
               kIdentityTolerance;
    }
    // Re-emit twice: from memory and from the stored records file.
    const auto a = out / ("rerun_" + std::to_string(i) + "_a");
    const auto b = out / ("rerun_" + std::to_string(i) + "_b");
    EmitReport(runs[i].records, a.string());
    const auto path = out / ("records_" + std::to_string(i) + ".jsonl");
    WriteRecords(runs[i].records, path.string());
    EmitReport(ReadRecords(path.string()), b.string());
    for (const char* file : {"summary.csv", "curves.csv", "failures.csv"}) {
      auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream text;
        text << in.rdbuf();
        return text.str();
      };
      const bool same = slurp(a / file) == slurp(b / file);
      ok = ok && same;
      identical += same;
    }
  }
  return {9, "metric identities", ok,
          Format("%zu summaries checked; %zu/%zu reports byte-identical",
                 checked, identical, 3 * runs.size())};
}

}  // namespace
}  // namespace minibal

int main(int argc, char** argv) {
  using namespace minibal;
  CLI::App app{"Acceptance suite"};
  std::string only;
  std::string out_dir = "acceptance_out";
  int workers = 1;
  app.add_option("--only", only, "Comma-separated criteria to run (default all)");
  app.add_option("--out", out_dir, "Directory for reports");
  app.add_option("--workers", workers, "Tournament worker threads")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::set<int> selected;
  std::stringstream list(only);
  for (std::string item; std::getline(list, item, ',');) {
    if (!item.empty()) selected.insert(std::stoi(item));
  }
  auto wanted = [&](std::initializer_list<int> ids) {
    if (selected.empty()) return true;
    for (int id : ids) {
      if (selected.contains(id)) return true;
    }
    return false;
  };

  const std::filesystem::path out(out_dir);
  std::filesystem::create_directories(out);
  std::vector<Verdict> verdicts;
  std::vector<Run> runs;
  auto stage = [&](const char* title, auto fn) {
    const auto start = std::chrono::steady_clock::now();
    std::printf("== %s\n", title);
    std::fflush(stdout);
    try {
      fn();
    } catch (const std::exception& e) {
      std::printf("  error: %s\n", e.what());
    }
    std::printf("  (%.0f s)\n", Seconds(start));
    std::fflush(stdout);
  };

  if (wanted({1})) {
    stage("criterion 1", [&] { verdicts.push_back(OracleSoundness()); });
  }
  if (wanted({2})) {
    stage("criterion 2", [&] { verdicts.push_back(SolvedGameConvergence()); });
  }
  if (wanted({3, 9})) {
    stage("criterion 3", [&] {
      verdicts.push_back(StrengthPremise(workers, out, &runs));
    });
  }
  if (wanted({4, 5, 6, 9})) {
    stage("criteria 4-6", [&] {
      for (auto& v : BalanceCriteria(workers, out, &runs)) verdicts.push_back(v);
    });
  }
  if (wanted({7, 8, 9})) {
    stage("criteria 7-8", [&] {
      for (auto& v : VeryWeakCriteria(workers, out, &runs)) {
        verdicts.push_back(v);
      }
    });
  }
  if (wanted({9})) {
    stage("criterion 9",
          [&] { verdicts.push_back(MetricIdentities(runs, out)); });
  }

  std::printf("\n");
  bool all = true;
  std::set<int> reported;
  for (const Verdict& v : verdicts) {
    if (!selected.empty() && !selected.contains(v.criterion)) continue;
    reported.insert(v.criterion);
    all = all && v.pass;
    std::printf("%s %d %s: %s\n", v.pass ? "PASS" : "FAIL", v.criterion,
                v.name.c_str(), v.detail.c_str());
  }
  for (int id = 1; id <= 9; ++id) {
    if ((selected.empty() || selected.contains(id)) && !reported.contains(id)) {
      std::printf("FAIL %d: did not complete\n", id);
      all = false;
    }
  }
  return all ? 0 : 1;
}
