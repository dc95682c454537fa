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

#ifndef SIDL_ANALYZER_H_
#define SIDL_ANALYZER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sidl/game_manager.h"

namespace sidl {

struct AnalysisLimits {
  std::size_t max_nodes = 100000;
  std::size_t max_depth = 1000;
};

struct StateGraph {
  struct Node {
    GameState state;
    std::size_t depth = 0;
    bool terminal = false;
    bool expanded = false;
  };
  struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::vector<ResolvedAction> joint;
    // Product of the chance probabilities on the joint action (1 without
    // chance switches).
    double probability = 1.0;
    // The single player switch owner for sequential moves.
    std::optional<Term> mover;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  bool truncated = false;
  bool include_accounts = true;
};

// Canonical node key: sorted fact text, optionally followed by accounts.
std::string StateKey(const GameState& state, bool include_accounts);

// Breadth-first closure over all joint actions from the initial state.
// Throws DefinitionError on unlimited switches.
StateGraph EnumerateStates(const GameDefinition& def,
                           const AnalysisLimits& limits,
                           bool include_accounts = true);

struct PlayoutStats {
  struct PlayerStats {
    Term player;
    double mean = 0.0;
    double standard_error = 0.0;
  };
  std::vector<PlayerStats> players;
  std::size_t samples = 0;
  std::size_t terminated = 0;
  double termination_rate() const {
    return samples == 0 ? 0.0
                        : static_cast<double>(terminated) /
                              static_cast<double>(samples);
  }
};

// Seed of playout i: seed + i * 0x9E3779B97F4A7C15 (mod 2^64).
std::uint64_t PlayoutSeed(std::uint64_t seed, std::size_t index);

// Uniform-policy playouts, each capped at max_chronons.
PlayoutStats MonteCarlo(DefinitionPtr def, std::size_t playouts,
                        std::int64_t max_chronons, std::uint64_t seed);

struct MinimaxResult {
  Accounts values;
  std::size_t nodes = 0;  // distinct states searched
  std::optional<Term> first_action;
};

// Backward induction for sequential deterministic games: each mover
// maximizes its own final account. A state repeated on the current path is
// scored with the accounts accrued so far. With prune_noop, actions whose
// transition changes no word and pays nothing are dropped (unless every
// action is such a no-op). Throws DefinitionError for simultaneous or chance
// switches and ResourceError past the limits.
MinimaxResult MinimaxValue(const GameDefinition& def, bool prune_noop,
                           const AnalysisLimits& limits);

struct ConsistencyViolation {
  enum class Kind { kOwner, kLegality, kActions };
  Term player;
  Term switch_id;
  Kind kind = Kind::kLegality;
  std::size_t state_a = 0;
  std::size_t state_b = 0;
  std::vector<std::string> facts_a;
  std::vector<std::string> facts_b;
};

std::string_view ViolationKindName(ConsistencyViolation::Kind kind);

struct ConsistencyReport {
  std::size_t states = 0;
  bool truncated = false;
  std::vector<ConsistencyViolation> violations;
  bool passed() const { return violations.empty() && !truncated; }
};

// For each player, states with equal visible words must agree on the
// legality, ownership and action sets of every switch the player owns in
// any of them. Accounts are ignored when enumerating states.
ConsistencyReport CheckInformationConsistency(const GameDefinition& def,
                                              const AnalysisLimits& limits,
                                              std::size_t max_witnesses = 1000);

nlohmann::ordered_json ToJson(const PlayoutStats& stats);
nlohmann::ordered_json ToJson(const MinimaxResult& result);
nlohmann::ordered_json ToJson(const ConsistencyReport& report);

}  // namespace sidl

#endif  // SIDL_ANALYZER_H_
