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

#include "sidl/game_manager.h"

#include <algorithm>
#include <stdexcept>

namespace sidl {
namespace {

constexpr std::uint64_t kPolicySalt = 0xD1B54A32D192ED03ull;

Term Var(std::string name) { return Term::Variable(std::move(name)); }

void AppendUnique(std::vector<Term>& out, const Term& word) {
  if (std::find(out.begin(), out.end(), word) == out.end()) {
    out.push_back(word);
  }
}

std::string_view PayoffKeyword(const GameDefinition& def) {
  if (!def.Defines("payoff") && def.Defines("goal")) return "goal";
  return "payoff";
}

EngineEvent MakeEvent(EngineEvent::Type type) {
  EngineEvent e;
  e.type = type;
  return e;
}

}  // namespace

void ValidateConfig(const ChrononConfig& config) {
  if (config.duration_ms < 0) {
    throw std::invalid_argument("chronon duration must not be negative");
  }
  if (config.max_chronons && *config.max_chronons < 1) {
    throw std::invalid_argument("max chronons must be at least 1");
  }
}

std::string_view SourceName(ResolvedAction::Source source) {
  switch (source) {
    case ResolvedAction::Source::kSubmitted:
      return "submitted";
    case ResolvedAction::Source::kDefault:
      return "default";
    case ResolvedAction::Source::kChance:
      return "chance";
  }
  return "unknown";
}

double UniformDraw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t SampleIndex(std::mt19937_64& rng,
                        std::span<const double> probabilities) {
  const double u = UniformDraw(rng);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    cumulative += probabilities[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  return last_positive;
}

std::vector<ResolvedAction> ResolveSwitches(
    const GameDefinition& def, const GameState& state,
    std::span<const SwitchResolution> legal,
    const std::map<std::size_t, Term>& submissions, std::mt19937_64& rng,
    std::vector<std::string>* errors) {
  std::vector<std::optional<ResolvedAction>> slots(legal.size());
  for (std::size_t i = 0; i < legal.size(); ++i) {
    const SwitchResolution& sw = legal[i];
    if (sw.controller.is_player()) continue;
    std::size_t index = SampleIndex(rng, sw.controller.probabilities);
    slots[i] = ResolvedAction{sw.id, sw.actions[index],
                              ResolvedAction::Source::kChance, index};
  }
  for (std::size_t i = 0; i < legal.size(); ++i) {
    const SwitchResolution& sw = legal[i];
    if (!sw.controller.is_player()) continue;
    if (auto it = submissions.find(i); it != submissions.end()) {
      slots[i] = ResolvedAction{sw.id, it->second,
                                ResolvedAction::Source::kSubmitted, 0};
      continue;
    }
    try {
      if (auto action = def.DefaultAction(state, sw.id)) {
        slots[i] = ResolvedAction{sw.id, *action,
                                  ResolvedAction::Source::kDefault, 0};
      }
    } catch (const Error& e) {
      if (errors != nullptr) {
        errors->push_back("default for " + Format(sw.id) + ": " + e.what());
      }
    }
  }
  std::vector<ResolvedAction> out;
  for (auto& slot : slots) {
    if (slot) out.push_back(std::move(*slot));
  }
  return out;
}

Transition ApplyResolved(const GameDefinition& def, const GameState& state,
                         std::vector<ResolvedAction> resolved) {
  Transition t;
  TransitionRecord& record = t.record;
  record.chronon = state.chronon + 1;

  std::vector<std::pair<Term, Term>> does;
  does.reserve(resolved.size());
  for (const auto& r : resolved) does.emplace_back(r.switch_id, r.action);
  VirtualPredicateTable virtuals = def.Virtuals(state.facts, does);

  EffectTrail trail;
  {
    Solver solver(def.kb(), virtuals, def.step_budget());
    for (const auto& r : resolved) {
      Term goal = Term::Compound("do", {r.action});
      try {
        if (!solver.ProveFirstWithEffects(goal, trail)) {
          record.errors.push_back(Format(goal) + " failed for switch " +
                                  Format(r.switch_id));
        }
      } catch (const Error& e) {
        record.errors.push_back(Format(goal) + " for switch " +
                                Format(r.switch_id) + ": " + e.what());
      }
    }
  }
  record.resolved = std::move(resolved);

  for (const Effect& e : trail.entries()) {
    AppendUnique(e.kind == Effect::Kind::kCreate ? record.created
                                                 : record.deleted,
                 e.word);
  }

  virtuals.ObserveEffects(&trail);
  Solver solver(def.kb(), virtuals, def.step_budget());
  const std::string_view keyword = PayoffKeyword(def);
  const Term r = Var("R");
  for (const auto& [player, before] : state.accounts) {
    double sum = 0.0;
    try {
      for (const Term& amount :
           solver.SolveDistinct(Term::Compound(keyword, {player, r}), r)) {
        if (!amount.is_number()) {
          record.errors.push_back("payoff for " + Format(player) +
                                  " is not a number: " + Format(amount));
          continue;
        }
        sum += amount.number();
      }
    } catch (const Error& e) {
      record.errors.push_back("payoff for " + Format(player) + ": " +
                              e.what());
    }
    record.payoffs.emplace_back(player, sum);
    record.accounts_after.emplace_back(player, before + sum);
  }

  t.state.facts = state.facts;
  for (const Term& w : record.deleted) t.state.RemoveFact(w);
  for (const Term& w : record.created) t.state.AddFact(w);
  t.state.accounts = record.accounts_after;
  t.state.chronon = state.chronon + 1;
  return t;
}

// ---------------------------------------------------------------------------
// GameManager

GameManager::GameManager(DefinitionPtr def, ChrononConfig config)
    : def_(std::move(def)), config_(config), rng_(config.seed) {
  ValidateConfig(config_);
}

std::vector<Term> GameManager::Visible(std::optional<std::size_t> player,
                                       std::span<const Term> words) const {
  if (player) return def_->VisibleWords(def_->players()[*player], words);
  return def_->PublicWords(words);
}

std::vector<EngineEvent> GameManager::Snapshot(
    std::optional<std::size_t> player) const {
  std::vector<EngineEvent> out;
  EngineEvent rules = MakeEvent(EngineEvent::Type::kRules);
  rules.text = def_->source();
  out.push_back(std::move(rules));
  EngineEvent init = MakeEvent(EngineEvent::Type::kInit);
  init.facts = Visible(player, state_.facts);
  init.accounts = state_.accounts;
  out.push_back(std::move(init));
  return out;
}

Outbox GameManager::Begin() {
  if (started_) throw std::logic_error("game already started");
  state_ = def_->InitialState();
  started_ = true;
  Outbox out;
  out.players.resize(def_->players().size());
  for (std::size_t i = 0; i < out.players.size(); ++i) {
    out.players[i] = Snapshot(i);
  }
  out.spectators = Snapshot(std::nullopt);
  OpenChronon(out);
  return out;
}

bool GameManager::ReachedEnd() const {
  return config_.max_chronons && state_.chronon >= *config_.max_chronons;
}

void GameManager::OpenChronon(Outbox& out) {
  submissions_.clear();
  legal_.clear();
  if (ReachedEnd()) {
    EndGame(out);
    return;
  }
  legal_ = def_->LegalSwitches(state_);
  if (legal_.empty()) {
    EndGame(out);
    return;
  }
  EngineEvent e = MakeEvent(EngineEvent::Type::kChronon);
  e.number = current_chronon();
  e.deadline_ms = config_.duration_ms;
  for (auto& batch : out.players) batch.push_back(e);
  out.spectators.push_back(e);
}

void GameManager::EndGame(Outbox& out) {
  finished_ = true;
  EngineEvent e = MakeEvent(EngineEvent::Type::kEnd);
  e.accounts = state_.accounts;
  for (auto& batch : out.players) batch.push_back(e);
  out.spectators.push_back(e);
}

bool GameManager::HasSubmission(std::size_t switch_index) const {
  return submissions_.count(switch_index) > 0;
}

bool GameManager::AllSubmitted(std::span<const std::size_t> players) const {
  for (std::size_t i = 0; i < legal_.size(); ++i) {
    const Controller& c = legal_[i].controller;
    if (!c.is_player()) continue;
    auto owner = def_->PlayerIndex(c.player);
    if (!owner) continue;
    if (std::find(players.begin(), players.end(), *owner) == players.end()) {
      continue;
    }
    if (!HasSubmission(i)) return false;
  }
  return true;
}

ActionCheck GameManager::Submit(const Term& player, const Term& switch_id,
                                const Term& action) {
  if (!started_ || finished_) return ActionCheck{RejectReason::kGameEnded};
  if (!def_->PlayerIndex(player)) return ActionCheck{RejectReason::kUnknownPlayer};
  auto it = std::find_if(legal_.begin(), legal_.end(),
                         [&](const auto& sw) { return sw.id == switch_id; });
  if (it == legal_.end()) {
    return ActionCheck{def_->AbsentSwitchReason(switch_id)};
  }
  if (!it->controller.is_player()) {
    return ActionCheck{RejectReason::kChanceSwitch};
  }
  if (!(it->controller.player == player)) {
    return ActionCheck{RejectReason::kNotYourSwitch};
  }
  ActionCheck check = def_->CheckAction(state_, *it, action);
  if (check.accepted()) {
    submissions_[static_cast<std::size_t>(it - legal_.begin())] = action;
    accepted_.push_back(
        AcceptedSubmission{current_chronon(), player, switch_id, action});
  }
  return check;
}

std::pair<TransitionRecord, Outbox> GameManager::CloseChronon() {
  if (!started_ || finished_) {
    throw std::logic_error("no chronon is open");
  }
  std::vector<std::string> errors;
  auto resolved =
      ResolveSwitches(*def_, state_, legal_, submissions_, rng_, &errors);
  Transition t = ApplyResolved(*def_, state_, std::move(resolved));
  errors.insert(errors.end(), t.record.errors.begin(), t.record.errors.end());
  t.record.errors = std::move(errors);

  Outbox out;
  out.players.resize(def_->players().size());
  auto deliver = [&](std::optional<std::size_t> who,
                     std::vector<EngineEvent>& batch) {
    EngineEvent delta = MakeEvent(EngineEvent::Type::kDelta);
    delta.created = Visible(who, t.record.created);
    delta.deleted = Visible(who, t.record.deleted);
    batch.push_back(std::move(delta));
    EngineEvent accounts = MakeEvent(EngineEvent::Type::kAccounts);
    accounts.accounts = t.record.accounts_after;
    batch.push_back(std::move(accounts));
  };
  for (std::size_t i = 0; i < out.players.size(); ++i) {
    deliver(i, out.players[i]);
  }
  deliver(std::nullopt, out.spectators);

  state_ = std::move(t.state);
  records_.push_back(t.record);
  OpenChronon(out);
  return {std::move(t.record), std::move(out)};
}

// ---------------------------------------------------------------------------

Policy UniformPolicy() {
  return [](const GameDefinition&, const GameState&,
            std::span<const SwitchResolution> legal, std::mt19937_64& rng) {
    std::vector<std::pair<std::size_t, Term>> out;
    for (std::size_t i = 0; i < legal.size(); ++i) {
      const SwitchResolution& sw = legal[i];
      if (!sw.controller.is_player()) continue;
      if (sw.unlimited) {
        throw DefinitionError("unlimited switch " + Format(sw.id) +
                              " has no enumerable actions");
      }
      if (sw.actions.empty()) continue;
      auto n = sw.actions.size();
      auto k = std::min<std::size_t>(
          static_cast<std::size_t>(UniformDraw(rng) * static_cast<double>(n)),
          n - 1);
      out.emplace_back(i, sw.actions[k]);
    }
    return out;
  };
}

RunResult RunScripted(DefinitionPtr def, std::span<const ScriptEntry> script,
                      const ChrononConfig& config, const Policy& policy) {
  for (const ScriptEntry& entry : script) {
    if (!def->PlayerIndex(entry.player)) {
      throw DefinitionError("script references unknown player " +
                            Format(entry.player));
    }
  }
  std::map<std::int64_t, std::vector<const ScriptEntry*>> by_chronon;
  for (const ScriptEntry& entry : script) {
    by_chronon[entry.chronon].push_back(&entry);
  }

  GameManager manager(def, config);
  manager.Begin();
  std::mt19937_64 policy_rng(config.seed ^ kPolicySalt);
  RunResult result;
  while (!manager.finished()) {
    if (auto it = by_chronon.find(manager.current_chronon());
        it != by_chronon.end()) {
      for (const ScriptEntry* entry : it->second) {
        ActionCheck check =
            manager.Submit(entry->player, entry->switch_id, entry->action);
        if (!check.accepted()) {
          result.rejected.push_back(RejectedSubmission{*entry, check.reason});
        }
      }
    }
    if (policy) {
      const auto& legal = manager.legal();
      for (auto& [index, action] :
           policy(*def, manager.state(), legal, policy_rng)) {
        if (manager.HasSubmission(index)) continue;
        manager.Submit(legal[index].controller.player, legal[index].id, action);
      }
    }
    manager.CloseChronon();
  }
  result.records = manager.records();
  result.final_state = manager.state();
  result.terminal = def->IsTerminal(result.final_state);
  return result;
}

}  // namespace sidl
