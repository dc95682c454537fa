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

#ifndef SIDL_GAME_MANAGER_H_
#define SIDL_GAME_MANAGER_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sidl/game_model.h"

namespace sidl {

struct ChrononConfig {
  // Wall-clock length of a chronon for served sessions; 0 closes a chronon
  // as soon as every player switch has a submission.
  std::int64_t duration_ms = 0;
  std::optional<std::int64_t> max_chronons;
  std::uint64_t seed = 0;
};

// Checks the invariants of a config; throws std::invalid_argument.
void ValidateConfig(const ChrononConfig& config);

struct ResolvedAction {
  enum class Source { kSubmitted, kDefault, kChance };
  Term switch_id;
  Term action;
  Source source = Source::kSubmitted;
  std::size_t chance_index = 0;  // kChance only

  friend bool operator==(const ResolvedAction&, const ResolvedAction&) =
      default;
};

std::string_view SourceName(ResolvedAction::Source source);

using Accounts = std::vector<std::pair<Term, double>>;

struct TransitionRecord {
  std::int64_t chronon = 0;  // 1-based number of the chronon just closed
  std::vector<ResolvedAction> resolved;
  std::vector<Term> created;
  std::vector<Term> deleted;
  Accounts payoffs;  // summed per player, every player listed
  Accounts accounts_after;
  std::vector<std::string> errors;

  friend bool operator==(const TransitionRecord&, const TransitionRecord&) =
      default;
};

struct EngineEvent {
  enum class Type { kRules, kInit, kChronon, kAck, kReject, kDelta, kAccounts, kEnd };
  Type type = Type::kRules;
  std::string text;          // kRules: source; kReject: reason
  std::vector<Term> facts;   // kInit
  std::vector<Term> created;  // kDelta
  std::vector<Term> deleted;  // kDelta
  Accounts accounts;          // kInit, kAccounts, kEnd
  std::int64_t number = 0;    // kChronon
  std::int64_t deadline_ms = 0;  // kChronon, relative to the message
  Term switch_id;             // kAck, kReject
};

// Events per recipient: one batch per player in player order, and one for
// spectators, who see only words hidden from nobody.
struct Outbox {
  std::vector<std::vector<EngineEvent>> players;
  std::vector<EngineEvent> spectators;
};

// Draws a uniform real in [0, 1) from the top 53 bits of one 64-bit output.
double UniformDraw(std::mt19937_64& rng);
// Index into `probabilities` selected by one uniform draw on the cumulative
// distribution.
std::size_t SampleIndex(std::mt19937_64& rng,
                        std::span<const double> probabilities);

// The outcome of applying resolved actions to a state.
struct Transition {
  GameState state;
  TransitionRecord record;
};

// The second half of a chronon: do/1 with effect capture, payoffs, fact
// update. The record's `resolved` is `resolved`.
Transition ApplyResolved(const GameDefinition& def, const GameState& state,
                         std::vector<ResolvedAction> resolved);

// The first half of a chronon: chance sampling in legal order, then the
// surviving submission or first default for each player switch. `submissions` maps a
// switch's index in `legal` to the submitted action.
std::vector<ResolvedAction> ResolveSwitches(
    const GameDefinition& def, const GameState& state,
    std::span<const SwitchResolution> legal,
    const std::map<std::size_t, Term>& submissions, std::mt19937_64& rng,
    std::vector<std::string>* errors = nullptr);

// One game instance on a single timeline. Not thread-safe; callers
// serialize access.
class GameManager {
 public:
  GameManager(DefinitionPtr def, ChrononConfig config);

  // begin_game: initial state, rules and init events, first chronon.
  Outbox Begin();

  const GameDefinition& definition() const { return *def_; }
  const ChrononConfig& config() const { return config_; }
  const GameState& state() const { return state_; }
  // Legal switches of the open chronon.
  const std::vector<SwitchResolution>& legal() const { return legal_; }
  bool started() const { return started_; }
  bool finished() const { return finished_; }
  // Number of the open chronon (1-based).
  std::int64_t current_chronon() const { return state_.chronon + 1; }
  bool HasSubmission(std::size_t switch_index) const;
  // Whether every legal player switch owned by one of `players` has a
  // submission.
  bool AllSubmitted(std::span<const std::size_t> players) const;

  ActionCheck Submit(const Term& player, const Term& switch_id,
                     const Term& action);
  // close_chronon. The outbox carries deltas, accounts and then either the
  // next chronon or the end of the game.
  std::pair<TransitionRecord, Outbox> CloseChronon();

  // Rules, visible facts and accounts for a (re)joining recipient; nullopt
  // index means spectator.
  std::vector<EngineEvent> Snapshot(std::optional<std::size_t> player) const;

  struct AcceptedSubmission {
    std::int64_t chronon;
    Term player;
    Term switch_id;
    Term action;
  };
  // Every accepted submission in arrival order.
  const std::vector<AcceptedSubmission>& accepted() const { return accepted_; }
  const std::vector<TransitionRecord>& records() const { return records_; }

 private:
  bool ReachedEnd() const;
  void OpenChronon(Outbox& out);
  void EndGame(Outbox& out);
  std::vector<Term> Visible(std::optional<std::size_t> player,
                            std::span<const Term> words) const;

  DefinitionPtr def_;
  ChrononConfig config_;
  std::mt19937_64 rng_;
  GameState state_;
  std::vector<SwitchResolution> legal_;
  std::map<std::size_t, Term> submissions_;
  std::vector<AcceptedSubmission> accepted_;
  std::vector<TransitionRecord> records_;
  bool started_ = false;
  bool finished_ = false;
};

struct ScriptEntry {
  std::int64_t chronon = 1;
  Term player;
  Term switch_id;
  Term action;
};

struct RejectedSubmission {
  ScriptEntry entry;
  RejectReason reason;
};

struct RunResult {
  std::vector<TransitionRecord> records;
  GameState final_state;
  bool terminal = false;
  std::vector<RejectedSubmission> rejected;
};

// Resolves a player's switches when the script is silent. Receives the
// legal switches and the player's index; returns (switch index, action)
// submissions.
using Policy = std::function<std::vector<std::pair<std::size_t, Term>>(
    const GameDefinition&, const GameState&,
    std::span<const SwitchResolution>, std::mt19937_64&)>;

// Uniform choice over enumerated actions for every player switch. Throws
// DefinitionError on unlimited switches.
Policy UniformPolicy();

// run_scripted: plays to a terminal state or max_chronons. Script entries
// for the same chronon are submitted in order. The optional policy fills in
// switches the script leaves open, drawing from its own generator seeded
// from config.seed.
RunResult RunScripted(DefinitionPtr def, std::span<const ScriptEntry> script,
                      const ChrononConfig& config,
                      const Policy& policy = nullptr);

}  // namespace sidl

#endif  // SIDL_GAME_MANAGER_H_
