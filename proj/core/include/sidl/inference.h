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

#ifndef SIDL_INFERENCE_H_
#define SIDL_INFERENCE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sidl/parser.h"
#include "sidl/term.h"

namespace sidl {

inline constexpr std::uint64_t kDefaultStepBudget = 10'000'000;

// Clauses indexed by predicate, each bucket in source order. Immutable once
// built; copies share the compiled form.
class KnowledgeBase {
 public:
  KnowledgeBase();
  explicit KnowledgeBase(std::vector<Clause> clauses);

  const std::vector<Clause>& clauses() const;
  bool Defines(std::string_view name, std::size_t arity) const;
  // Source-order indices into clauses() for name/arity.
  std::vector<std::size_t> ClausesFor(std::string_view name,
                                      std::size_t arity) const;

  struct Compiled;
  const Compiled& compiled() const { return *compiled_; }

 private:
  std::shared_ptr<const Compiled> compiled_;
};

// A create/delete intent recorded by a successful do/1 proof.
struct Effect {
  enum class Kind { kCreate, kDelete };
  Kind kind;
  Term word;

  friend bool operator==(const Effect&, const Effect&) = default;
};

// Ordered create/delete intents with rollback marks.
class EffectTrail {
 public:
  std::size_t Mark() const { return entries_.size(); }
  void RollbackTo(std::size_t mark);
  void Append(Effect effect) { entries_.push_back(std::move(effect)); }
  void Append(std::span<const Effect> effects);

  const std::vector<Effect>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const EffectTrail&, const EffectTrail&) = default;

 private:
  std::vector<Effect> entries_;
};

// Predicates answered by the caller instead of clauses. A registered name
// shadows any clauses of the same name and arity.
//
// fact/1, player/1 and does/2 are plain ground relations. tocreate/1 and
// todelete/1 answer from an observed EffectTrail. create/1 and delete/1 record
// intents, and only inside ProveFirstWithEffects; anywhere else they raise
// DefinitionError.
class VirtualPredicateTable {
 public:
  using Tuple = std::vector<Term>;

  // Calls to name/arity unify against each tuple in order.
  void AddRelation(std::string_view name, std::size_t arity,
                   std::vector<Tuple> tuples);
  // tocreate/1 and todelete/1 answer from `trail`, which must outlive the
  // solver. Null means no intents.
  void ObserveEffects(const EffectTrail* trail) { observed_ = trail; }

  struct Relation {
    Symbol name;
    std::size_t arity;
    std::vector<Tuple> tuples;
  };
  const std::vector<Relation>& relations() const { return relations_; }
  const EffectTrail* observed() const { return observed_; }

 private:
  std::vector<Relation> relations_;
  const EffectTrail* observed_ = nullptr;
};

struct ProofWithEffects {
  Bindings bindings;
  std::vector<Effect> effects;
};

// SLD resolution: depth-first, left to right, clauses in source order.
//
// Builtins: = is < > >= =< between/3 member/2 append/3 length/2 nth1/3
// findall/3 maxmember/2 getsubset/2 not/1 integer/1 true/0 fail/0.
// Arithmetic: + - * / ^ min/2 max/2 and unary minus; integers promote to
// reals on mixed operands.
//
// Calls to predicates with neither clauses nor a builtin/virtual fail
// (closed world). The step budget bounds every top-level call; running out
// throws ResourceError. One Solver must not be used from two threads at once;
// several solvers may share a KnowledgeBase.
class Solver {
 public:
  Solver(const KnowledgeBase& kb, const VirtualPredicateTable& virtuals,
         std::uint64_t step_budget = kDefaultStepBudget);
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  // Visits solutions in order until `visit` returns false.
  void Solve(const Term& goal,
             const std::function<bool(const Bindings&)>& visit);
  std::vector<Bindings> SolveAll(const Term& goal);
  std::optional<Bindings> SolveFirst(const Term& goal);
  bool Provable(const Term& goal);

  // The deduplicated projections of all solutions, in first-occurrence order.
  // Throws DefinitionError when a solution leaves a projected term non-ground.
  std::vector<std::vector<Term>> SolveDistinct(const Term& goal,
                                               std::span<const Term> projection);
  // Single-variable convenience form.
  std::vector<Term> SolveDistinct(const Term& goal, const Term& projection);

  // Commits to the first derivation of `goal` with create/delete recording
  // enabled. tocreate/todelete see `trail` plus the intents of the current
  // derivation. On success the surviving intents are appended to `trail`; on
  // failure `trail` is untouched.
  std::optional<ProofWithEffects> ProveFirstWithEffects(const Term& goal,
                                                        EffectTrail& trail);

  // Resolution steps used by the most recent top-level call.
  std::uint64_t last_steps() const;

 private:
  class Machine;
  std::unique_ptr<Machine> machine_;
};

// Free-function forms of the solver entry points.
std::vector<Bindings> Solve(const KnowledgeBase& kb,
                            const VirtualPredicateTable& virtuals,
                            const Term& goal,
                            std::uint64_t budget = kDefaultStepBudget);
std::vector<std::vector<Term>> SolveDistinct(
    const KnowledgeBase& kb, const VirtualPredicateTable& virtuals,
    const Term& goal, std::span<const Term> projection,
    std::uint64_t budget = kDefaultStepBudget);
std::optional<ProofWithEffects> ProveFirstWithEffects(
    const KnowledgeBase& kb, const VirtualPredicateTable& virtuals,
    const Term& goal, EffectTrail& trail,
    std::uint64_t budget = kDefaultStepBudget);

}  // namespace sidl

#endif  // SIDL_INFERENCE_H_
