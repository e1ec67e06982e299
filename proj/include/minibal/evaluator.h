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

// State evaluation with a strength knob.
//
// The base heuristic of each game is blended with deterministic noise keyed
// by the state: quality 0 is the plain heuristic, quality 1 is pure noise.
// All values lie in [-1, 1] and are antisymmetric in the perspective.

#ifndef MINIBAL_EVALUATOR_H_
#define MINIBAL_EVALUATOR_H_

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>

#include "minibal/game.h"

namespace minibal {

struct EvalProfile {
  std::string game;
  double quality = 0.0;  // noise weight in [0, 1]
  std::uint64_t seed = 0;
  std::string id;
};

// One step of the splitmix64 generator; a stateless 64-bit mixer.
std::uint64_t SplitMix64(std::uint64_t x);

// Seed for a sub-stream identified by `parts` under `base`.
std::uint64_t DeriveSeed(std::uint64_t base,
                         std::initializer_list<std::uint64_t> parts);

// Bounded odd squashing map x / (1 + |x|).
double Squash(double x);

// Deterministic heuristic for a non-terminal state. Throws kTerminalState.
double BaseHeuristic(const Game& game, const GameState& state,
                     Player perspective);

// Seeded pseudo-random value in [-1, 1] for the first player; the second
// player sees its negation.
double NoiseValue(std::uint64_t state_key, std::uint64_t seed);

double DegradedEval(const Game& game, const EvalProfile& profile,
                    const GameState& state, Player perspective);

// Terminal score on terminal states, degraded heuristic otherwise.
double CombinedEval(const Game& game, const EvalProfile& profile,
                    const GameState& state, Player perspective);

// Binds a profile to its rule set.
class Evaluator {
 public:
  Evaluator(std::shared_ptr<const Game> game, EvalProfile profile);

  double operator()(const GameState& state, Player perspective) const {
    return CombinedEval(*game_, profile_, state, perspective);
  }

  const Game& game() const { return *game_; }
  const EvalProfile& profile() const { return profile_; }

 private:
  std::shared_ptr<const Game> game_;
  EvalProfile profile_;
};

}  // namespace minibal

#endif  // MINIBAL_EVALUATOR_H_
