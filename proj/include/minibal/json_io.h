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

// JSON forms of the public value types.

#ifndef MINIBAL_JSON_IO_H_
#define MINIBAL_JSON_IO_H_

#include <json.hpp>

#include "minibal/agent.h"
#include "minibal/arena.h"
#include "minibal/evaluator.h"
#include "minibal/search.h"

namespace minibal {

// 200 <-> iterations, "0.5s" <-> seconds. A numeric string is also read as
// an iteration count.
void to_json(nlohmann::json& j, const Budget& budget);
void from_json(const nlohmann::json& j, Budget& budget);

void to_json(nlohmann::json& j, const EvalProfile& profile);
void from_json(const nlohmann::json& j, EvalProfile& profile);

// {id, kind, evaluator?, budget, seed, depth_bound_d?, exploration_c?,
//  reuse_table?}. Missing optional fields keep their defaults.
void to_json(nlohmann::json& j, const AgentSpec& spec);
void from_json(const nlohmann::json& j, AgentSpec& spec);

void to_json(nlohmann::json& j, const MatchRecord& record);
void from_json(const nlohmann::json& j, MatchRecord& record);

// Pool entries are a quality, {quality, seed} or {quality, seeds: [...]}.
void to_json(nlohmann::json& j, const TournamentConfig& config);
void from_json(const nlohmann::json& j, TournamentConfig& config);

// Reads and validates a tournament config file. Throws kIoError or
// kParseError/kInvalidConfig naming the path.
TournamentConfig LoadTournamentConfig(const std::string& path);

}  // namespace minibal

#endif  // MINIBAL_JSON_IO_H_
