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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "minibal/arena.h"
#include "minibal/json_io.h"
#include "test_util.h"

namespace minibal {
namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

std::filesystem::path TempDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("minibal_arena_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

AgentSpec Ubfm(const std::string& id, AgentKind kind, const std::string& game,
               double quality, std::int64_t iterations) {
  AgentSpec spec;
  spec.id = id;
  spec.kind = kind;
  spec.evaluator = EvalProfile{game, quality, 1, id};
  spec.budget = Budget::Iterations(iterations);
  return spec;
}

TEST(Metrics, BinaryGain) {
  EXPECT_DOUBLE_EQ(BinaryGain(std::vector<int>{1, 1, -1, 0}), 25.0);
  EXPECT_EQ(BinaryGain(std::vector<int>{0, 0, 0}), 0.0);
  EXPECT_ERROR_CODE(BinaryGain(std::vector<int>{}), ErrorCode::kEmptySample);
}

TEST(Metrics, Score) {
  EXPECT_EQ(ScoreMetric(std::vector<double>{0.5, -0.5}), 0.0);
  EXPECT_EQ(ScoreMetric(std::vector<double>{0.0, 0.0}), 0.0);
  EXPECT_ERROR_CODE(ScoreMetric(std::vector<double>{}), ErrorCode::kEmptySample);
}

TEST(Metrics, ConfidenceRadius) {
  EXPECT_EQ(ConfidenceRadius95(std::vector<double>{0.3, 0.3, 0.3}), 0.0);
  EXPECT_NEAR(ConfidenceRadius95(std::vector<double>{1.0, -1.0}), 1.96, 1e-12);
  EXPECT_NEAR(ConfidenceRadius95(std::vector<double>{100.0, -100.0}), 196.0,
              1e-9);
  // Doubling a sample by repetition shrinks the radius roughly by sqrt(2).
  std::vector<double> base = {1, -1, 0, 1, 1, -1, 0, 0};
  std::vector<double> twice = base;
  twice.insert(twice.end(), base.begin(), base.end());
  const double ratio = ConfidenceRadius95(base) / ConfidenceRadius95(twice);
  EXPECT_NEAR(ratio, std::sqrt(2.0 * 15.0 / 7.0) / std::sqrt(2.0) * 1.0,
              1e-12);
  EXPECT_ERROR_CODE(ConfidenceRadius95(std::vector<double>{1.0}),
                    ErrorCode::kInsufficientSample);
}

TEST(PlayMatch, PerfectTicTacToeIsADraw) {
  auto game = MakeGame("tictactoe");
  const AgentSpec a =
      Ubfm("a", AgentKind::kUbfmMinimax, "tictactoe", 0.0, 1'000'000);
  const AgentSpec b =
      Ubfm("b", AgentKind::kUbfmMinimax, "tictactoe", 0.0, 1'000'000);
  for (Player seat : {Player::kFirst, Player::kSecond}) {
    for (std::uint64_t seed : {1u, 2u}) {
      const MatchRecord r = PlayMatch(game, a, b, seat, seed);
      EXPECT_EQ(r.b, 0);
      EXPECT_EQ(r.score, 0.0);
      EXPECT_EQ(r.plies, 9);
      EXPECT_EQ(r.first_mover, seat == Player::kFirst ? "a" : "b");
    }
  }
}

TEST(PlayMatch, RecordReplays) {
  auto game = MakeGame("othello6");
  const AgentSpec a = Ubfm("a", AgentKind::kUbfmMinibalP, "othello6", 0.1, 100);
  const AgentSpec b = Ubfm("b", AgentKind::kUbfmMinimax, "othello6", 0.8, 100);
  const MatchRecord r = PlayMatch(game, a, b, Player::kSecond, 5);
  EXPECT_EQ(ReplayMoves(*game, r), r.terminal_state);
  EXPECT_EQ(static_cast<int>(r.moves.size()), r.plies);
  const GameState final_state = game->Parse(r.terminal_state);
  EXPECT_EQ(r.b, game->BinaryOutcome(final_state, Player::kSecond));
  EXPECT_EQ((r.score > 0) - (r.score < 0), r.b);
  EXPECT_EQ(r.variant, "MinibalP");
  EXPECT_EQ(r.budget, "100");
}

TEST(PlayMatch, ZeroBudgetFailsAtFirstMove) {
  auto game = MakeGame("connect4");
  const AgentSpec a = Ubfm("a", AgentKind::kUbfmMinimax, "connect4", 0.0, 0);
  const AgentSpec b = Ubfm("b", AgentKind::kUbfmMinimax, "connect4", 0.0, 10);
  try {
    PlayMatch(game, a, b, Player::kFirst, 1);
    FAIL() << "expected AgentFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAgentFailure);
    EXPECT_NE(std::string(e.what()).find("move 1"), std::string::npos)
        << e.what();
  }
}

TEST(PlayMatch, DistinctIdsRequired) {
  auto game = MakeGame("connect4");
  const AgentSpec a = Ubfm("same", AgentKind::kUbfmMinimax, "connect4", 0, 10);
  EXPECT_ERROR_CODE(PlayMatch(game, a, a, Player::kFirst, 1),
                    ErrorCode::kInvalidAgentSpec);
}

TEST(PlayMatch, IdenticalAgentsShowNoSeatBias) {
  auto game = MakeGame("connect4");
  AgentSpec a;
  a.id = "a";
  a.kind = AgentKind::kMcts;
  a.budget = Budget::Iterations(100);
  AgentSpec b = a;
  b.id = "b";
  std::vector<double> gains;
  for (int i = 0; i < 1000; ++i) {
    const Player seat = i % 2 == 0 ? Player::kFirst : Player::kSecond;
    gains.push_back(100.0 *
                    PlayMatch(game, a, b, seat, static_cast<std::uint64_t>(i)).b);
  }
  double mean = 0.0;
  for (double g : gains) mean += g;
  mean /= static_cast<double>(gains.size());
  EXPECT_LE(std::abs(mean), ConfidenceRadius95(gains));
}

TournamentConfig SmallConfig() {
  TournamentConfig config;
  config.games = {"connect4"};
  config.strong_pool = {{0.0, 1}, {0.1, 1}, {0.2, 1}, {0.3, 1}};
  config.weak_pool = {{0.6, 1}, {0.7, 1}, {0.8, 1}, {0.9, 1}};
  config.variants = {Variant::kMinibalP};
  config.budgets = {Budget::Iterations(30)};
  config.master_seed = 11;
  config.opponent_budget = Budget::Iterations(30);
  return config;
}

TEST(Tournament, PlanShape) {
  TournamentConfig config = SmallConfig();
  const auto jobs = PlanTournament(config);
  EXPECT_EQ(jobs.size(), 32u);
  int first = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    EXPECT_EQ(jobs[i].index, static_cast<std::int64_t>(i));
    EXPECT_NE(jobs[i].agent_a.id, jobs[i].agent_b.id);
    EXPECT_EQ(jobs[i].agent_b.kind, AgentKind::kUbfmMinimax);
    first += jobs[i].seat_a == Player::kFirst;
  }
  EXPECT_EQ(first, 16);
  config.seats = "first";
  EXPECT_EQ(PlanTournament(config).size(), 16u);
  config.opponent = OpponentKind::kMcts;
  config.seats = "both";
  const auto vs_mcts = PlanTournament(config);
  EXPECT_EQ(vs_mcts.size(), 8u);
  EXPECT_EQ(vs_mcts[0].agent_b.kind, AgentKind::kMcts);
}

TEST(Tournament, InvalidConfigs) {
  TournamentConfig config = SmallConfig();
  config.games = {};
  EXPECT_ERROR_CODE(ValidateTournament(config), ErrorCode::kInvalidConfig);
  config = SmallConfig();
  config.seats = "left";
  EXPECT_ERROR_CODE(ValidateTournament(config), ErrorCode::kInvalidConfig);
  config = SmallConfig();
  config.budgets = {Budget::Iterations(0)};
  EXPECT_ERROR_CODE(ValidateTournament(config), ErrorCode::kInvalidConfig);
}

TEST(Tournament, ReproducibleAcrossWorkerCounts) {
  TournamentConfig config = SmallConfig();
  config.workers = 1;
  std::vector<std::int64_t> streamed;
  const auto one = RunTournament(
      config, [&](const MatchRecord& r) { streamed.push_back(r.index); });
  config.workers = 3;
  const auto three = RunTournament(config);
  ASSERT_EQ(one.size(), 32u);
  ASSERT_EQ(three.size(), one.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(nlohmann::json(one[i]), nlohmann::json(three[i]));
    EXPECT_EQ(streamed[i], static_cast<std::int64_t>(i));
  }
}

TEST(Tournament, ReportsAreByteIdentical) {
  TournamentConfig config = SmallConfig();
  config.games = {"connect4", "othello6"};
  config.variants = {Variant::kMinimax, Variant::kMinibalP};
  config.budgets = {Budget::Iterations(20), Budget::Iterations(40)};
  config.strong_pool.resize(2);
  config.weak_pool.resize(2);
  config.workers = 2;
  const auto records = RunTournament(config);
  const auto dir_a = TempDir("a");
  const auto dir_b = TempDir("b");
  EmitReport(records, dir_a.string());
  WriteRecords(records, (dir_a / "records.jsonl").string());
  const auto reread = ReadRecords((dir_a / "records.jsonl").string());
  EmitReport(reread, dir_b.string());
  for (const char* file : {"summary.csv", "curves.csv", "failures.csv"}) {
    EXPECT_EQ(ReadFile(dir_a / file), ReadFile(dir_b / file)) << file;
  }
  const std::string summary = ReadFile(dir_a / "summary.csv");
  EXPECT_EQ(summary.substr(0, summary.find('\n')),
            "variant,budget,game,n,gain,cr95_gain,win,draw,loss,score,"
            "cr95_score");

  const auto summaries = Summarize(records);
  // 2 variants x 2 budgets x (2 games + all).
  ASSERT_EQ(summaries.size(), 12u);
  for (const MetricsSummary& s : summaries) {
    EXPECT_NEAR(s.gain_pct, s.win_pct - s.loss_pct, 1e-9);
    EXPECT_NEAR(s.win_pct + s.draw_pct + s.loss_pct, 100.0, 1e-9);
    EXPECT_GT(s.n_matches, 0);
  }
  EXPECT_EQ(summaries[2].game, "all");
  EXPECT_NEAR(summaries[2].gain_pct,
              (summaries[0].gain_pct + summaries[1].gain_pct) / 2, 1e-12);
  EXPECT_NEAR(*summaries[2].gain_cr95,
              std::hypot(*summaries[0].gain_cr95, *summaries[1].gain_cr95) / 2,
              1e-12);

  // Curves: per variant and game, budgets ascend.
  std::istringstream curves(ReadFile(dir_a / "curves.csv"));
  std::string line;
  std::getline(curves, line);
  EXPECT_EQ(line, "variant,game,budget,n,gain,cr95_gain,score,cr95_score");
  std::vector<std::string> rows;
  while (std::getline(curves, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0].substr(0, rows[0].find(',', rows[0].find(',') + 1) + 3),
            "MinibalP,connect4,20");
  EXPECT_EQ(rows[1].substr(0, rows[1].find(',', rows[1].find(',') + 1) + 3),
            "MinibalP,connect4,40");
}

TEST(Tournament, FailedMatchesAreCountedNotScored) {
  MatchJob bad;
  bad.index = 1;
  bad.game = "connect4";
  // Evaluator built for another game: the agent cannot be constructed.
  bad.agent_a = Ubfm("a", AgentKind::kUbfmMinibalP, "othello6", 0.0, 10);
  bad.agent_b = Ubfm("b", AgentKind::kUbfmMinimax, "connect4", 0.9, 10);
  bad.seed = 3;
  const MatchRecord failed = RunJob(bad);
  ASSERT_TRUE(failed.error.has_value());
  EXPECT_EQ(failed.variant, "MinibalP");

  MatchJob good = bad;
  good.index = 0;
  good.agent_a.evaluator->game = "connect4";
  const MatchRecord ok = RunJob(good);
  ASSERT_FALSE(ok.error.has_value());

  const std::vector<MatchRecord> records = {failed, ok};
  const auto summaries = Summarize(records);
  ASSERT_EQ(summaries.size(), 2u);  // connect4 and all
  EXPECT_EQ(summaries[0].n_matches, 1);
  EXPECT_EQ(summaries[0].n_failed, 1);
  EXPECT_EQ(summaries[0].gain_pct, 100.0 * ok.b);
  EXPECT_FALSE(summaries[0].gain_cr95.has_value());

  const auto dir = TempDir("failed");
  EmitReport(records, dir.string());
  const std::string failures = ReadFile(dir / "failures.csv");
  EXPECT_NE(failures.find("\n1,connect4,MinibalP,10,a,b,"), std::string::npos)
      << failures;
}

TEST(Json, RecordAndConfigRoundTrip) {
  auto game = MakeGame("connect4");
  const MatchRecord r = PlayMatch(
      game, Ubfm("a", AgentKind::kUbfmMinibalPSolvedWin, "connect4", 0.2, 20),
      Ubfm("b", AgentKind::kUbfmMinimax, "connect4", 0.7, 20), Player::kFirst,
      9);
  const nlohmann::json j = r;
  const MatchRecord back = j.get<MatchRecord>();
  EXPECT_EQ(nlohmann::json(back), j);
  EXPECT_EQ(back.score, r.score);

  const nlohmann::json config_json = nlohmann::json::parse(R"({
    "games": ["connect4"],
    "strong_pool": [0.0, {"quality": 0.1, "seed": 4},
                    {"quality": 0.2, "seeds": [1, 2]}],
    "weak_pool": [0.8],
    "variants": ["MinibalP"],
    "budgets": [50, "0.5s"],
    "seats": "both",
    "master_seed": 3,
    "workers": 1,
    "output_dir": "out"
  })");
  const TournamentConfig config = config_json.get<TournamentConfig>();
  EXPECT_EQ(config.strong_pool.size(), 4u);
  EXPECT_EQ(config.strong_pool[1].seed, 4u);
  EXPECT_EQ(config.budgets[1].kind, Budget::Kind::kSeconds);
  EXPECT_EQ(config.budgets[1].amount, 0.5);
  EXPECT_EQ(nlohmann::json(config).get<TournamentConfig>().budgets.size(), 2u);
  EXPECT_NO_THROW(ValidateTournament(config));
}

}  // namespace
}  // namespace minibal
