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

#ifndef SIDL_TESTS_ORACLES_NAIVE_RESOLVER_H_
#define SIDL_TESTS_ORACLES_NAIVE_RESOLVER_H_

// Textbook SLD resolution over Term and Unify: goals left to right, clauses
// in source order, renaming by suffix. Pure clauses only, plus =/2.

#include <functional>
#include <string>
#include <vector>

#include "sidl/parser.h"
#include "sidl/term.h"

namespace sidl::testing {

class NaiveResolver {
 public:
  explicit NaiveResolver(std::vector<Clause> clauses)
      : clauses_(std::move(clauses)) {}

  // Instances of `goal` for every solution, in order.
  std::vector<Term> Answers(const Term& goal, int max_depth = 64) {
    std::vector<Term> out;
    Prove({goal}, Bindings{}, max_depth, [&](const Bindings& b) {
      out.push_back(b.Apply(goal));
    });
    return out;
  }

 private:
  Term Rename(const Term& t, int stamp) {
    switch (t.kind()) {
      case Term::Kind::kVariable:
        if (t.is_anonymous()) return t;
        return Term::Variable(t.var_name() + "#" + std::to_string(stamp));
      case Term::Kind::kList: {
        std::vector<Term> items;
        for (const Term& i : t.items()) items.push_back(Rename(i, stamp));
        std::optional<Term> tail;
        if (t.tail() != nullptr) tail = Rename(*t.tail(), stamp);
        return Term::List(std::move(items), tail);
      }
      case Term::Kind::kCompound: {
        std::vector<Term> args;
        for (const Term& a : t.args()) args.push_back(Rename(a, stamp));
        return Term::Compound(t.symbol(), std::move(args));
      }
      default:
        return t;
    }
  }

  void Prove(std::vector<Term> goals, const Bindings& b, int depth,
             const std::function<void(const Bindings&)>& emit) {
    if (goals.empty()) {
      emit(b);
      return;
    }
    if (depth == 0) return;
    Term goal = b.Apply(goals.front());
    std::vector<Term> rest(goals.begin() + 1, goals.end());
    if (goal.is_compound() && goal.name() == "=" && goal.arity() == 2) {
      if (auto next = Unify(goal.args()[0], goal.args()[1], b)) {
        Prove(rest, *next, depth, emit);
      }
      return;
    }
    for (const Clause& c : clauses_) {
      const int stamp = ++stamp_;
      Term head = Rename(c.head, stamp);
      auto next = Unify(head, goal, b);
      if (!next) continue;
      std::vector<Term> body;
      for (const Term& g : c.body) body.push_back(Rename(g, stamp));
      body.insert(body.end(), rest.begin(), rest.end());
      Prove(body, *next, depth - 1, emit);
    }
  }

  std::vector<Clause> clauses_;
  int stamp_ = 0;
};

}  // namespace sidl::testing

#endif  // SIDL_TESTS_ORACLES_NAIVE_RESOLVER_H_
