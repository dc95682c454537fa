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

#include "sidl/game_model.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

namespace sidl {
namespace {

// Body keywords, one bit each.
enum BodyKeyword : unsigned {
  kPlayer = 1u << 0,
  kFact = 1u << 1,
  kCreate = 1u << 2,
  kDelete = 1u << 3,
  kToCreate = 1u << 4,
  kToDelete = 1u << 5,
  kDoes = 1u << 6,
};

constexpr std::array<std::pair<std::string_view, unsigned>, 7> kBodyKeywords = {{
    {"player", kPlayer},
    {"fact", kFact},
    {"create", kCreate},
    {"delete", kDelete},
    {"tocreate", kToCreate},
    {"todelete", kToDelete},
    {"does", kDoes},
}};

// Head keywords with the body keywords their conditions may use.
constexpr std::array<std::pair<std::string_view, unsigned>, 12> kHeadKeywords = {{
    {"game", 0},
    {"name", 0},
    {"init", 0},
    {"hidden", kPlayer},
    {"legal", kPlayer | kFact},
    {"owned", kPlayer | kFact},
    {"switch", kPlayer | kFact},
    {"unlimited", kPlayer | kFact},
    {"default", kPlayer | kFact},
    {"do", kPlayer | kFact | kCreate | kDelete | kDoes},
    {"payoff", kPlayer | kFact | kToCreate | kToDelete | kDoes},
    {"goal", kPlayer | kFact | kToCreate | kToDelete | kDoes},
}};

unsigned BodyKeywordBit(std::string_view name) {
  for (const auto& [keyword, bit] : kBodyKeywords) {
    if (keyword == name) return bit;
  }
  return 0;
}

std::optional<unsigned> HeadKeywordAllowance(std::string_view name) {
  for (const auto& [keyword, allowed] : kHeadKeywords) {
    if (keyword == name) return allowed;
  }
  return std::nullopt;
}

std::string BitNames(unsigned bits) {
  std::string out;
  for (const auto& [keyword, bit] : kBodyKeywords) {
    if (bits & bit) {
      if (!out.empty()) out += ", ";
      out += keyword;
    }
  }
  return out;
}

// Calls `f` on every goal, descending into conjunctions, not/1 and the goal
// argument of findall/3.
template <typename F>
void ForEachGoal(const Term& goal, F&& f) {
  if (!goal.is_callable()) return;
  f(goal);
  const std::string& name = goal.name();
  if (name == "," && goal.arity() == 2) {
    ForEachGoal(goal.args()[0], f);
    ForEachGoal(goal.args()[1], f);
  } else if (name == "not" && goal.arity() == 1) {
    ForEachGoal(goal.args()[0], f);
  } else if (name == "findall" && goal.arity() == 3) {
    ForEachGoal(goal.args()[1], f);
  }
}

std::string PredicateId(const Term& t) {
  return t.name() + "/" + std::to_string(t.arity());
}

Term Var(std::string name) { return Term::Variable(std::move(name)); }

Term Goal(std::string_view name, std::vector<Term> args) {
  return Term::Compound(name, std::move(args));
}

std::string HiddenKey(const Term& word, const Term& player) {
  return Format(word) + '\x1f' + Format(player);
}

// Distinct (by canonical text) values of `projection` over all solutions,
// variables allowed.
std::vector<Term> DistinctValues(Solver& solver, const Term& goal,
                                 const Term& projection) {
  std::vector<Term> out;
  std::unordered_set<std::string> seen;
  solver.Solve(goal, [&](const Bindings& b) {
    Term value = b.Apply(projection);
    if (seen.insert(Format(value)).second) out.push_back(std::move(value));
    return true;
  });
  return out;
}

void ValidatePlacement(const std::vector<Clause>& clauses,
                       ValidationReport& report) {
  for (const Clause& clause : clauses) {
    const std::string& head = clause.head.name();
    if (BodyKeywordBit(head) != 0) {
      report.AddError(clause.location,
                      "'" + head + "' is a keyword only allowed in rule bodies");
    }
    for (const Term& goal : clause.body) {
      ForEachGoal(goal, [&](const Term& g) {
        if (HeadKeywordAllowance(g.name())) {
          report.AddError(clause.location, "'" + g.name() +
                                               "' is a keyword only allowed "
                                               "in rule heads");
        }
      });
    }
  }
}

// Body keywords each clause reaches, directly or through helper predicates.
void ValidateReachability(const std::vector<Clause>& clauses,
                          ValidationReport& report) {
  std::map<std::string, unsigned> reach;
  std::map<std::string, std::set<std::string>> callees;
  auto direct = [&](const Clause& clause, std::set<std::string>& calls) {
    unsigned bits = 0;
    for (const Term& goal : clause.body) {
      ForEachGoal(goal, [&](const Term& g) {
        bits |= BodyKeywordBit(g.name());
        calls.insert(PredicateId(g));
      });
    }
    return bits;
  };
  for (const Clause& clause : clauses) {
    if (HeadKeywordAllowance(clause.head.name())) continue;
    std::string id = PredicateId(clause.head);
    reach[id] |= direct(clause, callees[id]);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [id, bits] : reach) {
      for (const std::string& callee : callees[id]) {
        auto it = reach.find(callee);
        if (it == reach.end()) continue;
        unsigned merged = bits | it->second;
        if (merged != bits) {
          bits = merged;
          changed = true;
        }
      }
    }
  }
  for (const Clause& clause : clauses) {
    const std::string& head = clause.head.name();
    auto allowed = HeadKeywordAllowance(head);
    if (!allowed) continue;
    std::set<std::string> calls;
    unsigned bits = direct(clause, calls);
    for (const std::string& callee : calls) {
      if (auto it = reach.find(callee); it != reach.end()) bits |= it->second;
    }
    unsigned extra = bits & ~*allowed;
    if (extra == 0) continue;
    std::string message = "condition of " + head + "/" +
                          std::to_string(clause.head.arity()) + " uses " +
                          BitNames(extra);
    if (head == "hidden") {
      report.AddError(clause.location,
                      message + "; hidden conditions may only use player");
    } else if ((extra & (kCreate | kDelete)) != 0) {
      report.AddError(clause.location,
                      message + "; create and delete belong in do/1");
    } else {
      report.AddWarning(clause.location, message);
    }
  }
}

Controller MakeController(const GameDefinition& def, const Term& sw,
                          const Term& d, const SwitchResolution& resolution) {
  Controller c;
  c.source = d;
  if (def.PlayerIndex(d)) {
    c.kind = Controller::Kind::kPlayer;
    c.player = d;
    return c;
  }
  c.kind = Controller::Kind::kDistribution;
  const std::string where = "switch " + Format(sw) + ": ";
  if (resolution.unlimited) {
    throw DefinitionError(where + "a chance switch needs enumerated actions");
  }
  const std::size_t n = resolution.actions.size();
  if (n == 0) throw DefinitionError(where + "chance switch has no actions");
  if (d.is_compound() && d.name() == "equal" && d.arity() == 1) {
    const Term& count = d.args()[0];
    if (!count.is_integer() || count.integer() != static_cast<std::int64_t>(n)) {
      throw DefinitionError(where + Format(d) + " does not match " +
                            std::to_string(n) + " actions");
    }
    c.probabilities.assign(n, 1.0 / static_cast<double>(n));
    return c;
  }
  if (d.is_list() && d.tail() == nullptr && !d.is_empty_list()) {
    if (d.items().size() != n) {
      throw DefinitionError(where + "distribution has " +
                            std::to_string(d.items().size()) +
                            " entries for " + std::to_string(n) + " actions");
    }
    double sum = 0.0;
    for (const Term& p : d.items()) {
      if (!p.is_number()) {
        throw DefinitionError(where + "owner " + Format(d) +
                              " is neither a player nor a distribution");
      }
      double v = p.number();
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DefinitionError(where + "probability " + Format(p) +
                              " outside [0, 1]");
      }
      c.probabilities.push_back(v);
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw DefinitionError(where + "probabilities sum to " +
                            std::to_string(sum));
    }
    return c;
  }
  throw DefinitionError(where + "owner " + Format(d) +
                        " is neither a player nor a distribution");
}

}  // namespace

// ---------------------------------------------------------------------------

std::string Diagnostic::ToString() const {
  std::string out = severity == Severity::kError ? "error" : "warning";
  if (location.line > 0) out += " " + location.ToString();
  return out + ": " + message;
}

bool ValidationReport::ok() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(), [](const auto& d) {
        return d.severity == Diagnostic::Severity::kError;
      }));
}

std::size_t ValidationReport::warning_count() const {
  return diagnostics.size() - error_count();
}

void ValidationReport::AddError(SourceLocation location, std::string message) {
  diagnostics.push_back(
      Diagnostic{Diagnostic::Severity::kError, location, std::move(message)});
}

void ValidationReport::AddWarning(SourceLocation location,
                                  std::string message) {
  diagnostics.push_back(
      Diagnostic{Diagnostic::Severity::kWarning, location, std::move(message)});
}

std::string ValidationReport::ToText() const {
  std::string out;
  for (const auto& d : diagnostics) out += d.ToString() + "\n";
  return out;
}

InvalidDefinition::InvalidDefinition(ValidationReport report)
    : DefinitionError("invalid game definition:\n" + report.ToText()),
      report_(std::move(report)) {}

std::string_view RejectReasonText(RejectReason reason) {
  switch (reason) {
    case RejectReason::kNone:
      return "accepted";
    case RejectReason::kUnknownSwitch:
      return "unknown switch";
    case RejectReason::kSwitchNotLegal:
      return "switch not legal";
    case RejectReason::kActionNotInSet:
      return "action not in set";
    case RejectReason::kTemplateMismatch:
      return "template mismatch";
    case RejectReason::kGuardUnprovable:
      return "guard unprovable";
    case RejectReason::kNotYourSwitch:
      return "not your switch";
    case RejectReason::kChanceSwitch:
      return "chance switch";
    case RejectReason::kChrononClosed:
      return "chronon closed";
    case RejectReason::kGameEnded:
      return "game ended";
    case RejectReason::kUnknownPlayer:
      return "unknown player";
    case RejectReason::kMalformed:
      return "malformed action";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// GameState

bool GameState::HasFact(const Term& word) const {
  return std::find(facts.begin(), facts.end(), word) != facts.end();
}

bool GameState::AddFact(const Term& word) {
  if (HasFact(word)) return false;
  facts.push_back(word);
  return true;
}

bool GameState::RemoveFact(const Term& word) {
  auto it = std::find(facts.begin(), facts.end(), word);
  if (it == facts.end()) return false;
  facts.erase(it);
  return true;
}

double GameState::Account(const Term& player) const {
  for (const auto& [p, value] : accounts) {
    if (p == player) return value;
  }
  throw DefinitionError("no account for " + Format(player));
}

std::vector<std::string> GameState::SortedFactText() const {
  std::vector<std::string> out;
  out.reserve(facts.size());
  for (const Term& f : facts) out.push_back(Format(f));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// GameDefinition

std::pair<std::shared_ptr<const GameDefinition>, ValidationReport>
GameDefinition::TryLoad(std::string_view source, std::uint64_t step_budget) {
  ValidationReport report;
  std::vector<Clause> clauses;
  try {
    clauses = ParseProgram(source);
  } catch (const SyntaxError& e) {
    std::string message = e.what();
    std::string prefix = e.location().ToString() + ": ";
    if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
    report.AddError(e.location(), "syntax error: " + message);
    return {nullptr, std::move(report)};
  }

  std::shared_ptr<GameDefinition> def(new GameDefinition());
  def->source_ = std::string(source);
  def->step_budget_ = step_budget;

  std::vector<const Clause*> name_clauses;
  for (const Clause& clause : clauses) {
    const std::string& head = clause.head.name();
    if ((head == "game" || head == "name") && clause.head.arity() == 1) {
      name_clauses.push_back(&clause);
    }
    if (HeadKeywordAllowance(head) &&
        std::find(def->keywords_.begin(), def->keywords_.end(), head) ==
            def->keywords_.end()) {
      def->keywords_.push_back(head);
    }
    if (head == "legal" && clause.head.arity() == 1) {
      def->legal_heads_.push_back(clause.head.args()[0]);
    }
  }
  if (name_clauses.empty()) {
    report.AddError({}, "missing name clause: expected game(Name) or name(Name)");
  } else {
    for (std::size_t i = 1; i < name_clauses.size(); ++i) {
      report.AddError(name_clauses[i]->location, "duplicate name clause");
    }
    const Term& name = name_clauses[0]->head.args()[0];
    if (!name.is_atom() || !name_clauses[0]->body.empty()) {
      report.AddError(name_clauses[0]->location,
                      "the game name must be a plain atom fact");
    } else {
      def->name_ = name.name();
    }
  }
  ValidatePlacement(clauses, report);
  ValidateReachability(clauses, report);

  def->kb_ = KnowledgeBase(std::move(clauses));
  if (!report.ok()) return {nullptr, std::move(report)};

  try {
    VirtualPredicateTable none;
    Solver solver(def->kb_, none, step_budget);
    Term n = Var("N");
    Term m = Var("M");
    std::vector<Term> projection = {n, m};
    for (auto& row : solver.SolveDistinct(Goal("init", {n, m}), projection)) {
      const Term& player = row[0];
      const Term& amount = row[1];
      if (!amount.is_number()) {
        report.AddError({}, "init/2 account value for " + Format(player) +
                                " is not a number: " + Format(amount));
        continue;
      }
      auto existing = def->PlayerIndex(player);
      if (existing) {
        report.AddError({}, "player " + Format(player) +
                                " has two initial accounts");
        continue;
      }
      if (!player.is_list()) {
        report.AddWarning({}, "player " + Format(player) +
                                  " is not a list term");
      }
      def->players_.push_back(player);
      def->initial_accounts_.emplace_back(player, amount.number());
    }
    if (def->players_.empty()) {
      report.AddWarning({}, "no players: init/2 has no solutions");
    }
  } catch (const Error& e) {
    report.AddError({}, std::string("evaluating init/2: ") + e.what());
  }
  if (!report.ok()) return {nullptr, std::move(report)};

  try {
    GameState initial = def->InitialState();
    auto legal = def->LegalSwitches(initial);
    for (const auto& [a, b] : def->DuplicateActionSets(legal)) {
      report.AddWarning({}, "switches " + Format(a) + " and " + Format(b) +
                                " offer identical actions in the initial "
                                "state");
    }
  } catch (const Error& e) {
    report.AddError({}, std::string("evaluating the initial state: ") +
                            e.what());
  }
  def->report_ = report;
  if (!report.ok()) return {nullptr, std::move(report)};
  return {std::move(def), std::move(report)};
}

std::shared_ptr<const GameDefinition> GameDefinition::Load(
    std::string_view source, std::uint64_t step_budget) {
  auto [def, report] = TryLoad(source, step_budget);
  if (!def) throw InvalidDefinition(std::move(report));
  return def;
}

std::optional<std::size_t> GameDefinition::PlayerIndex(
    const Term& player) const {
  for (std::size_t i = 0; i < players_.size(); ++i) {
    if (players_[i] == player) return i;
  }
  return std::nullopt;
}

bool GameDefinition::Defines(std::string_view keyword) const {
  return std::find(keywords_.begin(), keywords_.end(), keyword) !=
         keywords_.end();
}

VirtualPredicateTable GameDefinition::Virtuals(
    std::span<const Term> facts,
    std::span<const std::pair<Term, Term>> does) const {
  VirtualPredicateTable table;
  std::vector<VirtualPredicateTable::Tuple> fact_rows;
  fact_rows.reserve(facts.size());
  for (const Term& f : facts) fact_rows.push_back({f});
  table.AddRelation("fact", 1, std::move(fact_rows));
  std::vector<VirtualPredicateTable::Tuple> player_rows;
  for (const Term& p : players_) player_rows.push_back({p});
  table.AddRelation("player", 1, std::move(player_rows));
  std::vector<VirtualPredicateTable::Tuple> does_rows;
  for (const auto& [sw, action] : does) does_rows.push_back({sw, action});
  table.AddRelation("does", 2, std::move(does_rows));
  return table;
}

GameState GameDefinition::InitialState() const {
  GameState state;
  VirtualPredicateTable none = Virtuals({});
  Solver solver(kb_, none, step_budget_);
  for (Term& word : solver.SolveDistinct(Goal("init", {Var("F")}), Var("F"))) {
    if (!word.is_list() || word.is_empty_list()) {
      throw DefinitionError("initial word is not a non-empty list: " +
                            Format(word));
    }
    state.facts.push_back(std::move(word));
  }
  state.accounts = initial_accounts_;
  return state;
}

std::vector<SwitchResolution> GameDefinition::LegalSwitches(
    const GameState& state) const {
  VirtualPredicateTable virtuals = Virtuals(state.facts);
  Solver solver(kb_, virtuals, step_budget_);
  std::vector<SwitchResolution> out;
  const Term i = Var("I");
  for (Term& id : solver.SolveDistinct(Goal("legal", {i}), i)) {
    SwitchResolution r;
    r.id = std::move(id);
    const Term d = Var("D");
    auto owner = solver.SolveFirst(Goal("owned", {r.id, d}));
    if (!owner) {
      throw DefinitionError("legal switch " + Format(r.id) +
                            " has no owned/2 solution");
    }
    Term controller = owner->Apply(d);
    if (!controller.is_ground()) {
      throw DefinitionError("owner of switch " + Format(r.id) +
                            " is not ground: " + Format(controller));
    }
    const Term t = Var("T");
    r.templates = DistinctValues(solver, Goal("unlimited", {r.id, t}), t);
    r.unlimited = !r.templates.empty();
    if (!r.unlimited) {
      const Term a = Var("A");
      r.actions = solver.SolveDistinct(Goal("switch", {r.id, a}), a);
    }
    r.controller = MakeController(*this, r.id, controller, r);
    out.push_back(std::move(r));
  }
  return out;
}

bool GameDefinition::IsTerminal(const GameState& state) const {
  VirtualPredicateTable virtuals = Virtuals(state.facts);
  Solver solver(kb_, virtuals, step_budget_);
  return !solver.Provable(Goal("legal", {Var("_")}));
}

std::optional<Term> GameDefinition::DefaultAction(const GameState& state,
                                                  const Term& switch_id) const {
  VirtualPredicateTable virtuals = Virtuals(state.facts);
  Solver solver(kb_, virtuals, step_budget_);
  const Term a = Var("A");
  auto first = solver.SolveFirst(Goal("default", {switch_id, a}));
  if (!first) return std::nullopt;
  Term action = first->Apply(a);
  if (!action.is_ground()) {
    throw DefinitionError("default action of " + Format(switch_id) +
                          " is not ground: " + Format(action));
  }
  return action;
}

RejectReason GameDefinition::AbsentSwitchReason(const Term& switch_id) const {
  for (const Term& head : legal_heads_) {
    if (Unify(head, switch_id)) return RejectReason::kSwitchNotLegal;
  }
  return RejectReason::kUnknownSwitch;
}

ActionCheck GameDefinition::CheckAction(const GameState& state,
                                        const Term& switch_id,
                                        const Term& action) const {
  for (const SwitchResolution& sw : LegalSwitches(state)) {
    if (sw.id == switch_id) return CheckAction(state, sw, action);
  }
  return ActionCheck{AbsentSwitchReason(switch_id)};
}

ActionCheck GameDefinition::CheckAction(const GameState& state,
                                        const SwitchResolution& sw,
                                        const Term& action) const {
  if (!action.is_ground()) return ActionCheck{RejectReason::kMalformed};
  if (!sw.unlimited) {
    bool found = std::find(sw.actions.begin(), sw.actions.end(), action) !=
                 sw.actions.end();
    return ActionCheck{found ? RejectReason::kNone
                             : RejectReason::kActionNotInSet};
  }
  bool matched = std::any_of(
      sw.templates.begin(), sw.templates.end(),
      [&](const Term& pattern) { return MatchesTemplate(pattern, action); });
  if (!matched) return ActionCheck{RejectReason::kTemplateMismatch};
  VirtualPredicateTable virtuals = Virtuals(state.facts);
  Solver solver(kb_, virtuals, step_budget_);
  if (!solver.Provable(Goal("switch", {sw.id, action}))) {
    return ActionCheck{RejectReason::kGuardUnprovable};
  }
  return ActionCheck{};
}

bool GameDefinition::IsHidden(const Term& word, const Term& player) const {
  if (!Defines("hidden")) return false;
  const std::string key = HiddenKey(word, player);
  {
    std::lock_guard<std::mutex> lock(hidden_mutex_);
    if (auto it = hidden_cache_.find(key); it != hidden_cache_.end()) {
      return it->second;
    }
  }
  VirtualPredicateTable virtuals = Virtuals({});
  Solver solver(kb_, virtuals, step_budget_);
  bool hidden = solver.Provable(Goal("hidden", {word, player}));
  std::lock_guard<std::mutex> lock(hidden_mutex_);
  hidden_cache_.emplace(key, hidden);
  return hidden;
}

bool GameDefinition::IsPublic(const Term& word) const {
  return std::none_of(players_.begin(), players_.end(),
                      [&](const Term& p) { return IsHidden(word, p); });
}

std::vector<Term> GameDefinition::VisibleWords(
    const Term& player, std::span<const Term> words) const {
  std::vector<Term> out;
  for (const Term& w : words) {
    if (!IsHidden(w, player)) out.push_back(w);
  }
  return out;
}

std::vector<Term> GameDefinition::PublicWords(
    std::span<const Term> words) const {
  std::vector<Term> out;
  for (const Term& w : words) {
    if (IsPublic(w)) out.push_back(w);
  }
  return out;
}

std::vector<std::pair<Term, Term>> GameDefinition::DuplicateActionSets(
    std::span<const SwitchResolution> legal) const {
  std::vector<std::pair<Term, Term>> out;
  auto key = [](const SwitchResolution& s) {
    std::vector<std::string> texts;
    for (const Term& a : s.unlimited ? s.templates : s.actions) {
      texts.push_back(Format(a));
    }
    std::sort(texts.begin(), texts.end());
    return texts;
  };
  for (std::size_t i = 0; i < legal.size(); ++i) {
    auto ki = key(legal[i]);
    if (ki.empty()) continue;
    for (std::size_t j = i + 1; j < legal.size(); ++j) {
      if (key(legal[j]) == ki) out.emplace_back(legal[i].id, legal[j].id);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Slot {
  std::string var;
  bool is_real;
};

Term ReplaceSlots(const Term& t, std::vector<Slot>& slots) {
  switch (t.kind()) {
    case Term::Kind::kCompound: {
      if (t.name() == "," && t.arity() == 2 && t.args()[0].is_atom() &&
          t.args()[1].is_atom()) {
        const std::string& type = t.args()[1].name();
        if (type == "double" || type == "int") {
          std::string var = "$slot" + std::to_string(slots.size());
          slots.push_back(Slot{var, type == "double"});
          return Term::Variable(var);
        }
      }
      std::vector<Term> args;
      for (const Term& a : t.args()) args.push_back(ReplaceSlots(a, slots));
      return Term::Compound(t.symbol(), std::move(args));
    }
    case Term::Kind::kList: {
      std::vector<Term> items;
      for (const Term& a : t.items()) items.push_back(ReplaceSlots(a, slots));
      std::optional<Term> tail;
      if (t.tail() != nullptr) tail = ReplaceSlots(*t.tail(), slots);
      return Term::List(std::move(items), std::move(tail));
    }
    default:
      return t;
  }
}

}  // namespace

bool MatchesTemplate(const Term& pattern, const Term& action) {
  std::vector<Slot> slots;
  Term open = ReplaceSlots(pattern, slots);
  auto bindings = Unify(open, action);
  if (!bindings) return false;
  for (const Slot& slot : slots) {
    Term value = bindings->Apply(Term::Variable(slot.var));
    if (slot.is_real ? !value.is_real() : !value.is_integer()) return false;
  }
  return true;
}

}  // namespace sidl
