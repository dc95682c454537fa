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

#ifndef SIDL_GAME_MODEL_H_
#define SIDL_GAME_MODEL_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sidl/errors.h"
#include "sidl/inference.h"
#include "sidl/parser.h"
#include "sidl/term.h"

namespace sidl {

struct Diagnostic {
  enum class Severity { kError, kWarning };
  Severity severity = Severity::kError;
  SourceLocation location;
  std::string message;

  std::string ToString() const;
};

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;

  bool ok() const;
  std::size_t error_count() const;
  std::size_t warning_count() const;
  void AddError(SourceLocation location, std::string message);
  void AddWarning(SourceLocation location, std::string message);
  // One diagnostic per line, "error 12:3: message".
  std::string ToText() const;
};

// Thrown by GameDefinition::Load when validation finds errors.
class InvalidDefinition : public DefinitionError {
 public:
  explicit InvalidDefinition(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Facts in first-insertion order, accounts in player order.
struct GameState {
  std::vector<Term> facts;
  std::vector<std::pair<Term, double>> accounts;
  std::int64_t chronon = 0;

  bool HasFact(const Term& word) const;
  // Inserts if absent; returns whether it was inserted.
  bool AddFact(const Term& word);
  bool RemoveFact(const Term& word);
  double Account(const Term& player) const;
  // Canonical text of every fact, sorted.
  std::vector<std::string> SortedFactText() const;
};

struct Controller {
  enum class Kind { kPlayer, kDistribution };
  Kind kind = Kind::kPlayer;
  Term player;                       // kPlayer
  std::vector<double> probabilities;  // kDistribution, one per action
  Term source;                        // the D term of owned(I, D)

  bool is_player() const { return kind == Kind::kPlayer; }
};

struct SwitchResolution {
  Term id;
  Controller controller;
  bool unlimited = false;
  std::vector<Term> actions;    // enumerated actions, distinct, ground
  std::vector<Term> templates;  // unlimited templates
  std::optional<Term> resolved;
};

enum class RejectReason {
  kNone,
  kUnknownSwitch,
  kSwitchNotLegal,
  kActionNotInSet,
  kTemplateMismatch,
  kGuardUnprovable,
  kNotYourSwitch,
  kChanceSwitch,
  kChrononClosed,
  kGameEnded,
  kUnknownPlayer,
  kMalformed,
};

std::string_view RejectReasonText(RejectReason reason);

struct ActionCheck {
  RejectReason reason = RejectReason::kNone;
  bool accepted() const { return reason == RejectReason::kNone; }
};

// A validated game definition. Immutable after Load; safe to share between
// threads.
class GameDefinition {
 public:
  // Parses and validates. Throws SyntaxError or InvalidDefinition.
  static std::shared_ptr<const GameDefinition> Load(
      std::string_view source, std::uint64_t step_budget = kDefaultStepBudget);
  // Parses and validates without throwing on validation errors. The
  // definition is null when the report has errors.
  static std::pair<std::shared_ptr<const GameDefinition>, ValidationReport>
  TryLoad(std::string_view source,
          std::uint64_t step_budget = kDefaultStepBudget);

  const std::string& name() const { return name_; }
  const std::string& source() const { return source_; }
  const KnowledgeBase& kb() const { return kb_; }
  const std::vector<Term>& players() const { return players_; }
  std::optional<std::size_t> PlayerIndex(const Term& player) const;
  const ValidationReport& report() const { return report_; }
  std::uint64_t step_budget() const { return step_budget_; }
  bool Defines(std::string_view keyword) const;

  // fact/1 from `facts`, player/1 from the players, does/2 from `does`.
  VirtualPredicateTable Virtuals(
      std::span<const Term> facts,
      std::span<const std::pair<Term, Term>> does = {}) const;

  GameState InitialState() const;
  std::vector<SwitchResolution> LegalSwitches(const GameState& state) const;
  bool IsTerminal(const GameState& state) const;
  // First solution of default(I, A); throws DefinitionError if non-ground.
  std::optional<Term> DefaultAction(const GameState& state,
                                    const Term& switch_id) const;

  ActionCheck CheckAction(const GameState& state, const Term& switch_id,
                          const Term& action) const;
  // Same check against a switch already known to be legal in `state`.
  ActionCheck CheckAction(const GameState& state, const SwitchResolution& sw,
                          const Term& action) const;
  // Reason for a switch absent from the legal set.
  RejectReason AbsentSwitchReason(const Term& switch_id) const;

  bool IsHidden(const Term& word, const Term& player) const;
  // Hidden from no player.
  bool IsPublic(const Term& word) const;
  std::vector<Term> VisibleWords(const Term& player,
                                 std::span<const Term> words) const;
  std::vector<Term> PublicWords(std::span<const Term> words) const;

  // Pairs of legal switches with identical action sets.
  std::vector<std::pair<Term, Term>> DuplicateActionSets(
      std::span<const SwitchResolution> legal) const;

 private:
  GameDefinition() = default;

  std::string name_;
  std::string source_;
  KnowledgeBase kb_;
  std::vector<Term> players_;
  std::vector<std::pair<Term, double>> initial_accounts_;
  std::vector<std::string> keywords_;
  ValidationReport report_;
  std::uint64_t step_budget_ = kDefaultStepBudget;
  std::vector<Term> legal_heads_;

  mutable std::mutex hidden_mutex_;
  mutable std::unordered_map<std::string, bool> hidden_cache_;
};

using DefinitionPtr = std::shared_ptr<const GameDefinition>;

// Whether `action` fits `pattern` after replacing typed slots (tag, double)
// and (tag, int) by variables of that numeric type.
bool MatchesTemplate(const Term& pattern, const Term& action);

}  // namespace sidl

#endif  // SIDL_GAME_MODEL_H_
