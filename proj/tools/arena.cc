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

// Command-line front end: tournaments, reports, oracle checks and local
// play against an agent.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "minibal/agent.h"
#include "minibal/arena.h"
#include "minibal/error.h"
#include "minibal/game.h"
#include "minibal/json_io.h"
#include "minibal/oracle.h"
#include "minibal/search.h"

namespace minibal {
namespace {

void PrintSummaries(const std::vector<MetricsSummary>& summaries) {
  std::printf("%-18s %8s %-14s %6s %9s %8s %7s %7s %7s %8s %8s\n", "variant",
              "budget", "game", "n", "gain", "cr95", "win", "draw", "loss",
              "score", "cr95");
  for (const MetricsSummary& s : summaries) {
    std::printf("%-18s %8s %-14s %6lld %9.2f %8.2f %7.2f %7.2f %7.2f %8.4f "
                "%8.4f\n",
                s.variant.c_str(), s.budget.c_str(), s.game.c_str(),
                static_cast<long long>(s.n_matches), s.gain_pct,
                s.gain_cr95.value_or(0.0), s.win_pct, s.draw_pct, s.loss_pct,
                s.score_mean, s.score_cr95.value_or(0.0));
  }
}

int RunCommand(const std::string& config_path, std::string out_dir,
               int workers) {
  TournamentConfig config = LoadTournamentConfig(config_path);
  if (!out_dir.empty()) config.output_dir = out_dir;
  if (workers > 0) config.workers = workers;
  if (config.output_dir.empty()) config.output_dir = "arena-out";
  std::filesystem::create_directories(config.output_dir);
  const std::string records_path =
      (std::filesystem::path(config.output_dir) / "records.jsonl").string();
  std::ofstream records_out(records_path, std::ios::trunc);
  if (!records_out) {
    throw Error(ErrorCode::kIoError, "cannot write " + records_path);
  }
  const std::size_t total = PlanTournament(config).size();
  std::size_t count = 0;
  const auto records = RunTournament(config, [&](const MatchRecord& r) {
    records_out << nlohmann::json(r).dump() << '\n' << std::flush;
    ++count;
    if (count % 50 == 0 || count == total) {
      std::fprintf(stderr, "\r%zu/%zu matches", count, total);
    }
  });
  std::fprintf(stderr, "\n");
  records_out.close();
  EmitReport(records, config.output_dir);
  PrintSummaries(Summarize(records));
  std::printf("records: %s\n", records_path.c_str());
  return 0;
}

int ReportCommand(const std::string& records_path, std::string out_dir) {
  const auto records = ReadRecords(records_path);
  if (out_dir.empty()) {
    out_dir = std::filesystem::path(records_path).parent_path().string();
    if (out_dir.empty()) out_dir = ".";
  }
  EmitReport(records, out_dir);
  PrintSummaries(Summarize(records));
  return 0;
}

int OracleCommand(const std::string& game_name, int searches,
                  std::int64_t iterations) {
  auto game = MakeGame(game_name);
  NegamaxOracle oracle(game);
  const GameState initial = game->InitialState();
  std::printf("%s: game value for the first player = %+d (%zu states)\n",
              game->name().c_str(), oracle.Value(initial, Player::kFirst),
              oracle.size());
  int failures = 0;
  for (Variant variant : {Variant::kMinimax, Variant::kMinibalN,
                          Variant::kMinibalP, Variant::kMinibalPSolvedWin}) {
    TableCheck total;
    for (int i = 0; i < searches; ++i) {
      std::mt19937_64 rng(DeriveSeed(0, {static_cast<std::uint64_t>(i)}));
      GameState root = initial;
      const int plies = static_cast<int>(rng() % 6);
      for (int p = 0; p < plies && !game->IsTerminal(root); ++p) {
        const ActionList actions = game->LegalActions(root);
        root = game->ApplyUnchecked(root, actions[rng() % actions.size()]);
      }
      if (game->IsTerminal(root)) continue;
      SearchConfig config;
      config.variant = variant;
      config.budget = Budget::Iterations(iterations);
      config.evaluator = EvalProfile{game->name(), 0.25 * (i % 4),
                                     static_cast<std::uint64_t>(i), ""};
      UbfmSearch search(game, config);
      TranspositionTable table;
      search.Search(root, &table);
      const TableCheck check = CheckTable(*game, table, root, &oracle);
      total.resolved += check.resolved;
      total.mismatches += check.mismatches;
      total.above_value += check.above_value;
    }
    std::printf("%-18s resolved=%lld mismatches=%lld above_value=%lld\n",
                std::string(VariantName(variant)).c_str(),
                static_cast<long long>(total.resolved),
                static_cast<long long>(total.mismatches),
                static_cast<long long>(total.above_value));
    failures += total.mismatches > 0;
  }
  return failures == 0 ? 0 : 1;
}

void PrintBoard(const Game& game, const GameState& state) {
  const std::string text = game.Serialize(state);
  const std::string board = text.substr(0, text.find(' '));
  std::size_t start = 0;
  int row = 0;
  while (start <= board.size()) {
    const std::size_t end = board.find('/', start);
    const std::string line = board.substr(
        start, end == std::string::npos ? std::string::npos : end - start);
    std::printf("  %d  ", row + 1);
    for (char c : line) std::printf("%c ", c);
    std::printf("\n");
    ++row;
    if (end == std::string::npos) break;
    start = end + 1;
  }
  std::printf("     ");
  for (int c = 0; c < game.cols(); ++c) std::printf("%c ", 'a' + c);
  std::printf("\n");
}

int PlayCommand(const std::string& game_name, const std::string& kind,
                const std::string& budget, double quality,
                const std::string& seat, std::uint64_t seed) {
  auto game = MakeGame(game_name);
  AgentSpec spec;
  spec.id = "agent";
  spec.kind = ParseAgentKind(kind);
  spec.budget = ParseBudget(budget);
  spec.seed = seed;
  if (spec.kind != AgentKind::kMcts) {
    spec.evaluator = EvalProfile{game->name(), quality, seed, "agent"};
  }
  auto agent = MakeAgent(game, spec);
  const Player human = ParsePlayer(seat);
  GameState state = game->InitialState();
  while (!game->IsTerminal(state)) {
    PrintBoard(*game, state);
    if (state.to_move == human) {
      const ActionList legal = game->LegalActions(state);
      std::string joined;
      for (const std::string& a : game->ActionStrings(legal)) {
        joined += (joined.empty() ? "" : " ") + a;
      }
      std::printf("legal: %s\nyour move> ", joined.c_str());
      std::string input;
      if (!(std::cin >> input)) return 1;
      try {
        state = game->Apply(state, game->ParseAction(input));
      } catch (const Error& e) {
        std::printf("%s\n", e.what());
      }
      continue;
    }
    const Action action = agent->Choose(state);
    const SearchSummary& s = agent->last_summary();
    std::printf("agent plays %s (v=%.3f c=%+d r=%d, %lld iterations)\n",
                game->ActionToString(action).c_str(), s.root_v, s.root_c,
                s.root_r ? 1 : 0, static_cast<long long>(s.iterations));
    state = game->ApplyUnchecked(state, action);
  }
  PrintBoard(*game, state);
  std::printf("result for you: b=%+d score=%.4f\n",
              game->BinaryOutcome(state, human),
              game->TerminalScore(state, human));
  return 0;
}

}  // namespace
}  // namespace minibal

int main(int argc, char** argv) {
  CLI::App app{"Balanced-play search arena"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int workers = 0;
  auto* run = app.add_subcommand("run", "Run a tournament from a JSON config");
  run->add_option("config", config_path, "Tournament config")->required();
  run->add_option("--out", out_dir, "Output directory (overrides config)");
  run->add_option("--workers", workers, "Worker threads (overrides config)");

  std::string records_path, report_dir;
  auto* report = app.add_subcommand("report", "Rebuild reports from records");
  report->add_option("records", records_path, "records.jsonl")->required();
  report->add_option("--out", report_dir, "Output directory");

  std::string oracle_game;
  int searches = 25;
  std::int64_t iterations = 2000;
  auto* oracle = app.add_subcommand(
      "oracle", "Check resolved search values against exhaustive negamax");
  oracle->add_option("game", oracle_game, "Game id")->required();
  oracle->add_option("--searches", searches, "Searches per variant");
  oracle->add_option("--iterations", iterations, "Iterations per search");

  std::string game = "tictactoe", kind = "UBFM-MinibalP", budget = "2000";
  std::string seat = "First";
  double quality = 0.0;
  std::uint64_t seed = 1;
  auto* play = app.add_subcommand("play", "Play against an agent");
  play->add_option("--game", game, "Game id")->capture_default_str();
  play->add_option("--agent", kind, "Agent kind")->capture_default_str();
  play->add_option("--budget", budget, "Iterations, or seconds as 0.5s")
      ->capture_default_str();
  play->add_option("--quality", quality, "Evaluator noise weight")
      ->capture_default_str();
  play->add_option("--seat", seat, "Your seat: First or Second")
      ->capture_default_str();
  play->add_option("--seed", seed, "Agent seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return minibal::RunCommand(config_path, out_dir, workers);
    if (*report) return minibal::ReportCommand(records_path, report_dir);
    if (*oracle) {
      return minibal::OracleCommand(oracle_game, searches, iterations);
    }
    if (*play) {
      return minibal::PlayCommand(game, kind, budget, quality, seat, seed);
    }
  } catch (const minibal::Error& e) {
    std::fprintf(stderr, "error: %s: %s\n",
                 std::string(minibal::ErrorCodeName(e.code())).c_str(),
                 e.what());
    return 2;
  }
  return 0;
}
