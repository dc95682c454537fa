// Copyright 2026 The SIDL Engine Authors
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

#ifndef SIDL_REPLAY_H_
#define SIDL_REPLAY_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "sidl/game_manager.h"

namespace sidl {

// {"severity", "line", "column", "message"} per diagnostic.
nlohmann::ordered_json ReportToJson(const ValidationReport& report);

// 64-bit FNV-1a of the definition source.
std::uint64_t DefinitionHash(std::string_view source);

// {"[alice]": 1.0, ...} in player order.
nlohmann::ordered_json AccountsToJson(const Accounts& accounts);
nlohmann::ordered_json RecordToJson(const TransitionRecord& record);

// Replay log lines. The header holds the game name, seed, chronon cap and
// definition hash; wall-clock settings are left out so that served and
// offline runs of the same submissions produce the same log.
std::string ReplayHeaderLine(const GameDefinition& def,
                             const ChrononConfig& config);
std::string ReplayRecordLine(const TransitionRecord& record);
std::string ReplayLog(const GameDefinition& def, const ChrononConfig& config,
                      std::span<const TransitionRecord> records);

}  // namespace sidl

#endif  // SIDL_REPLAY_H_
