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

#include "sidl/inference.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "sidl/errors.h"

namespace sidl {
namespace internal {
namespace {

using Addr = std::uint32_t;
constexpr std::int32_t kDone = -1;
constexpr Addr kNoAddr = std::numeric_limits<Addr>::max();
constexpr std::size_t kMaxHeapCells = std::size_t{1} << 24;

// Heap cell. A term is addressed by its value cell: an atom, number, STR
// pointing at a functor cell (followed by the argument cells) or REF. An
// unbound variable is a REF to itself. LOCAL only appears in compiled clause
// templates and is replaced by a fresh variable on renaming.
enum class Tag : std::uint8_t { kRef, kAtom, kInt, kReal, kStr, kFun, kLocal };

struct Cell {
  Tag tag = Tag::kAtom;
  std::uint32_t a = 0;  // symbol, or local variable index
  union {
    std::int64_t i;
    double d;
    std::uint64_t u;  // address, or functor arity
  };

  Cell() : u(0) {}

  static Cell Ref(Addr addr) {
    Cell c;
    c.tag = Tag::kRef;
    c.u = addr;
    return c;
  }
  static Cell Atom(Symbol s) {
    Cell c;
    c.tag = Tag::kAtom;
    c.a = s;
    return c;
  }
  static Cell Int(std::int64_t v) {
    Cell c;
    c.tag = Tag::kInt;
    c.i = v;
    return c;
  }
  static Cell Real(double v) {
    Cell c;
    c.tag = Tag::kReal;
    c.d = v;
    return c;
  }
  static Cell Str(Addr functor) {
    Cell c;
    c.tag = Tag::kStr;
    c.u = functor;
    return c;
  }
  static Cell Fun(Symbol s, std::size_t arity) {
    Cell c;
    c.tag = Tag::kFun;
    c.a = s;
    c.u = arity;
    return c;
  }
  static Cell Local(std::uint32_t index) {
    Cell c;
    c.tag = Tag::kLocal;
    c.a = index;
    return c;
  }
};

std::uint64_t PredicateKey(Symbol name, std::size_t arity) {
  return (static_cast<std::uint64_t>(name) << 16) | arity;
}

// Writes terms as cells into a vector. Variables are delegated to `on_var`,
// which returns the value cell to store for a variable occurrence.
template <typename OnVar>
class CellWriter {
 public:
  CellWriter(std::vector<Cell>& cells, OnVar on_var)
      : cells_(cells), on_var_(std::move(on_var)) {}

  Cell Write(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::kAtom:
        return Cell::Atom(t.symbol());
      case Term::Kind::kInteger:
        return Cell::Int(t.integer());
      case Term::Kind::kReal:
        return Cell::Real(t.real());
      case Term::Kind::kVariable:
        return on_var_(t.var_name());
      case Term::Kind::kList:
        return WriteList(t);
      case Term::Kind::kCompound: {
        Addr f = Reserve(1 + t.arity());
        cells_[f] = Cell::Fun(t.symbol(), t.arity());
        for (std::size_t i = 0; i < t.arity(); ++i) {
          Cell c = Write(t.args()[i]);
          cells_[f + 1 + i] = c;
        }
        return Cell::Str(f);
      }
    }
    return Cell::Atom(symbols::kNil);
  }

 private:
  Addr Reserve(std::size_t n) {
    Addr at = static_cast<Addr>(cells_.size());
    cells_.resize(cells_.size() + n);
    return at;
  }

  Cell WriteList(const Term& t) {
    if (t.is_empty_list()) return Cell::Atom(symbols::kNil);
    Cell result;
    Addr pending = kNoAddr;
    for (const Term& item : t.items()) {
      Addr f = Reserve(3);
      cells_[f] = Cell::Fun(symbols::kDot, 2);
      Cell head = Write(item);
      cells_[f + 1] = head;
      if (pending == kNoAddr) {
        result = Cell::Str(f);
      } else {
        cells_[pending] = Cell::Str(f);
      }
      pending = f + 2;
    }
    Cell tail = t.tail() != nullptr ? Write(*t.tail()) : Cell::Atom(symbols::kNil);
    cells_[pending] = tail;
    return result;
  }

  std::vector<Cell>& cells_;
  OnVar on_var_;
};

struct CompiledClause {
  std::vector<Cell> cells;  // cells[0] is the head value cell
  std::vector<Addr> goals;  // template addresses of body goal value cells
  std::uint32_t num_vars = 0;
  bool indexed = false;  // first argument is not a variable
  Cell key;              // first argument, STR keys compare by functor
};

}  // namespace
}  // namespace internal

struct KnowledgeBase::Compiled {
  std::vector<Clause> source;
  std::vector<internal::CompiledClause> clauses;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
};

namespace internal {
namespace {

CompiledClause CompileClause(const Clause& clause) {
  CompiledClause out;
  std::map<std::string, std::uint32_t> vars;
  std::uint32_t next_var = 0;
  auto on_var = [&](const std::string& name) {
    if (name == "_") return Cell::Local(next_var++);
    auto [it, inserted] = vars.emplace(name, next_var);
    if (inserted) ++next_var;
    return Cell::Local(it->second);
  };
  out.cells.resize(1 + clause.body.size());
  CellWriter writer(out.cells, on_var);
  Cell head = writer.Write(clause.head);
  out.cells[0] = head;
  for (std::size_t i = 0; i < clause.body.size(); ++i) {
    Cell goal = writer.Write(clause.body[i]);
    out.cells[1 + i] = goal;
    out.goals.push_back(static_cast<Addr>(1 + i));
  }
  out.num_vars = next_var;
  if (head.tag == Tag::kStr) {
    Cell first = out.cells[head.u + 1];
    if (first.tag != Tag::kLocal) {
      out.indexed = true;
      out.key = first.tag == Tag::kStr ? out.cells[first.u] : first;
    }
  }
  return out;
}

enum class Builtin {
  kNone,
  kConjunction,
  kUnify,
  kIs,
  kLess,
  kGreater,
  kGreaterEq,
  kLessEq,
  kBetween,
  kMember,
  kAppend,
  kLength,
  kNth1,
  kFindall,
  kMaxmember,
  kGetsubset,
  kNot,
  kInteger,
  kTrue,
  kFail,
  kCreate,
  kDelete,
  kToCreate,
  kToDelete,
};

// Library predicates a definition may redefine with its own clauses.
bool IsOverridable(Builtin b) {
  switch (b) {
    case Builtin::kBetween:
    case Builtin::kMember:
    case Builtin::kAppend:
    case Builtin::kLength:
    case Builtin::kNth1:
    case Builtin::kMaxmember:
    case Builtin::kGetsubset:
      return true;
    default:
      return false;
  }
}

const std::unordered_map<std::uint64_t, Builtin>& BuiltinTable() {
  static const auto* table = [] {
    auto* t = new std::unordered_map<std::uint64_t, Builtin>();
    auto add = [t](const char* name, std::size_t arity, Builtin b) {
      t->emplace(PredicateKey(Intern(name), arity), b);
    };
    add(",", 2, Builtin::kConjunction);
    add("=", 2, Builtin::kUnify);
    add("is", 2, Builtin::kIs);
    add("<", 2, Builtin::kLess);
    add(">", 2, Builtin::kGreater);
    add(">=", 2, Builtin::kGreaterEq);
    add("=<", 2, Builtin::kLessEq);
    add("between", 3, Builtin::kBetween);
    add("member", 2, Builtin::kMember);
    add("append", 3, Builtin::kAppend);
    add("length", 2, Builtin::kLength);
    add("nth1", 3, Builtin::kNth1);
    add("findall", 3, Builtin::kFindall);
    add("maxmember", 2, Builtin::kMaxmember);
    add("getsubset", 2, Builtin::kGetsubset);
    add("not", 1, Builtin::kNot);
    add("integer", 1, Builtin::kInteger);
    add("true", 0, Builtin::kTrue);
    add("fail", 0, Builtin::kFail);
    add("create", 1, Builtin::kCreate);
    add("delete", 1, Builtin::kDelete);
    add("tocreate", 1, Builtin::kToCreate);
    add("todelete", 1, Builtin::kToDelete);
    return t;
  }();
  return *table;
}

struct Number {
  bool is_int = true;
  std::int64_t i = 0;
  double d = 0.0;

  double AsDouble() const { return is_int ? static_cast<double>(i) : d; }
};

int CompareNumbers(const Number& x, const Number& y) {
  if (x.is_int && y.is_int) return x.i < y.i ? -1 : (x.i > y.i ? 1 : 0);
  double a = x.AsDouble();
  double b = y.AsDouble();
  return a < b ? -1 : (a > b ? 1 : 0);
}

}  // namespace

class Engine;

// Alternatives of a nondeterministic builtin. Before each call the engine
// state is restored to the owning choicepoint.
class Generator {
 public:
  virtual ~Generator() = default;
  // Unifies the next alternative; false when exhausted.
  virtual bool Next(Engine& engine) = 0;
};

class Engine {
 public:
  Engine(const KnowledgeBase& kb, const VirtualPredicateTable& virtuals,
         std::uint64_t budget)
      : kb_(kb.compiled()), budget_(budget), observed_(virtuals.observed()) {
    heap_.reserve(1 << 16);
    for (const auto& relation : virtuals.relations()) {
      RelationData data;
      data.arity = relation.arity;
      for (const auto& tuple : relation.tuples) {
        if (tuple.size() != relation.arity) {
          throw DefinitionError("virtual relation " + SymbolName(relation.name) +
                                "/" + std::to_string(relation.arity) +
                                " has a tuple of the wrong arity");
        }
        Addr base = static_cast<Addr>(heap_.size());
        heap_.resize(heap_.size() + relation.arity);
        std::unordered_map<std::string, Addr> vars;
        for (std::size_t i = 0; i < relation.arity; ++i) {
          Cell c = WriteHeap(tuple[i], vars);
          heap_[base + i] = c;
        }
        data.tuples.push_back(base);
      }
      relations_[PredicateKey(relation.name, relation.arity)] =
          std::move(data);
    }
    static_top_ = static_cast<Addr>(heap_.size());
  }

  std::uint64_t steps() const { return steps_; }

  void Solve(const Term& goal,
             const std::function<bool(const Bindings&)>& visit) {
    ResetGuard guard(*this);
    steps_ = 0;
    Query query = PutQuery(goal);
    std::int32_t cont = PushFrame(query.goal, kDone);
    Run(cont, [&] { return visit(ExtractBindings(query)); });
  }

  std::optional<ProofWithEffects> ProveFirst(const Term& goal,
                                             EffectTrail& trail) {
    ResetGuard guard(*this);
    steps_ = 0;
    effects_enabled_ = true;
    const EffectTrail* saved_observed = observed_;
    observed_ = &trail;
    struct Restore {
      Engine& e;
      const EffectTrail* observed;
      ~Restore() {
        e.effects_enabled_ = false;
        e.observed_ = observed;
      }
    } restore{*this, saved_observed};

    Query query = PutQuery(goal);
    std::optional<ProofWithEffects> result;
    std::int32_t cont = PushFrame(query.goal, kDone);
    Run(cont, [&] {
      result = ProofWithEffects{ExtractBindings(query), live_effects_};
      return false;
    });
    if (result) trail.Append(result->effects);
    return result;
  }

  // --- Services for generators -------------------------------------------

  void RestoreTop() { RestoreTo(choices_.back().marks); }

  bool Unify(Addr a, Addr b) {
    unify_stack_.clear();
    unify_stack_.emplace_back(a, b);
    while (!unify_stack_.empty()) {
      auto [x0, y0] = unify_stack_.back();
      unify_stack_.pop_back();
      Addr x = Deref(x0);
      Addr y = Deref(y0);
      if (x == y) continue;
      const Cell cx = heap_[x];
      const Cell cy = heap_[y];
      if (cx.tag == Tag::kRef) {
        if (cy.tag == Tag::kRef && y > x) {
          Bind(y, x);
        } else {
          Bind(x, y);
        }
        continue;
      }
      if (cy.tag == Tag::kRef) {
        Bind(y, x);
        continue;
      }
      if (cx.tag != cy.tag) return false;
      switch (cx.tag) {
        case Tag::kAtom:
          if (cx.a != cy.a) return false;
          break;
        case Tag::kInt:
          if (cx.i != cy.i) return false;
          break;
        case Tag::kReal:
          if (!(cx.d == cy.d)) return false;
          break;
        case Tag::kStr: {
          const Cell fx = heap_[cx.u];
          const Cell fy = heap_[cy.u];
          if (fx.a != fy.a || fx.u != fy.u) return false;
          for (std::uint64_t i = fx.u; i >= 1; --i) {
            unify_stack_.emplace_back(static_cast<Addr>(cx.u + i),
                                      static_cast<Addr>(cy.u + i));
          }
          break;
        }
        default:
          return false;
      }
    }
    return true;
  }

  Addr PutCell(Cell c) {
    CheckHeap(1);
    heap_.push_back(c);
    return static_cast<Addr>(heap_.size() - 1);
  }

  Addr PutInt(std::int64_t v) { return PutCell(Cell::Int(v)); }

  // Copies a term onto the heap with its own fresh variables.
  Addr PutTerm(const Term& t) {
    std::unordered_map<std::string, Addr> vars;
    return PutTerm(t, vars);
  }

  // A fresh proper list holding the given value cells.
  Addr BuildList(std::span<const Addr> items, Addr tail = kNoAddr) {
    CheckHeap(3 * items.size() + 1);
    Addr top = static_cast<Addr>(heap_.size());
    heap_.push_back(Cell::Atom(symbols::kNil));
    Addr pending = top;
    for (Addr item : items) {
      Addr f = static_cast<Addr>(heap_.size());
      heap_.push_back(Cell::Fun(symbols::kDot, 2));
      heap_.push_back(Cell::Ref(item));
      heap_.push_back(Cell::Atom(symbols::kNil));
      heap_[pending] = Cell::Str(f);
      pending = f + 2;
    }
    heap_[pending] = tail == kNoAddr ? Cell::Atom(symbols::kNil) : Cell::Ref(tail);
    return top;
  }

 private:
  struct Marks {
    Addr heap;
    std::uint32_t trail;
    std::uint32_t frames;
    std::uint32_t effects;
  };

  struct Frame {
    Addr goal;
    std::int32_t next;
  };

  struct ChoicePoint {
    Marks marks;
    Addr goal = 0;
    std::int32_t cont = kDone;
    const std::vector<std::uint32_t>* bucket = nullptr;
    std::uint32_t next = 0;
    std::unique_ptr<Generator> generator;
  };

  struct RelationData {
    std::size_t arity = 0;
    std::vector<Addr> tuples;
  };

  struct Query {
    Addr goal;
    std::vector<std::pair<std::string, Addr>> vars;
  };

  // Clears machine state after a top-level call, normal or exceptional.
  struct ResetGuard {
    Engine& e;
    explicit ResetGuard(Engine& engine) : e(engine) { e.Reset(); }
    ~ResetGuard() { e.Reset(); }
  };

  void Reset() {
    choices_.clear();
    RestoreTo(Marks{static_top_, 0, 0, 0});
    findall_depth_ = 0;
  }

  Marks Mark() const {
    return Marks{static_cast<Addr>(heap_.size()),
                 static_cast<std::uint32_t>(trail_.size()),
                 static_cast<std::uint32_t>(frames_.size()),
                 static_cast<std::uint32_t>(live_effects_.size())};
  }

  void RestoreTo(const Marks& m) {
    while (trail_.size() > m.trail) {
      Addr a = trail_.back();
      trail_.pop_back();
      heap_[a] = Cell::Ref(a);
    }
    heap_.resize(m.heap);
    frames_.resize(m.frames);
    live_effects_.resize(m.effects, Effect{Effect::Kind::kCreate, Term()});
  }

  void CheckHeap(std::size_t extra) {
    if (heap_.size() + extra > kMaxHeapCells) {
      throw ResourceError("term heap limit exceeded");
    }
  }

  void Tick() {
    if (++steps_ > budget_) {
      throw ResourceError("step budget of " + std::to_string(budget_) +
                          " resolution steps exhausted");
    }
  }

  Addr Deref(Addr a) const {
    while (heap_[a].tag == Tag::kRef) {
      Addr next = static_cast<Addr>(heap_[a].u);
      if (next == a) break;
      a = next;
    }
    return a;
  }

  bool IsUnbound(Addr a) const {
    return heap_[a].tag == Tag::kRef && heap_[a].u == a;
  }

  void Bind(Addr var, Addr value) {
    heap_[var] = Cell::Ref(value);
    trail_.push_back(var);
  }

  Cell WriteHeap(const Term& t, std::unordered_map<std::string, Addr>& vars) {
    auto on_var = [this, &vars](const std::string& name) {
      if (name != "_") {
        auto it = vars.find(name);
        if (it != vars.end()) return Cell::Ref(it->second);
      }
      Addr a = static_cast<Addr>(heap_.size());
      heap_.push_back(Cell::Ref(a));
      if (name != "_") vars.emplace(name, a);
      return Cell::Ref(a);
    };
    CellWriter writer(heap_, on_var);
    return writer.Write(t);
  }

  Addr PutTerm(const Term& t, std::unordered_map<std::string, Addr>& vars) {
    CheckHeap(64);
    Addr at = static_cast<Addr>(heap_.size());
    heap_.emplace_back();
    Cell c = WriteHeap(t, vars);
    heap_[at] = c;
    return at;
  }

  Query PutQuery(const Term& goal) {
    if (!goal.is_callable()) {
      throw DefinitionError("goal must be an atom or compound: " +
                            Format(goal));
    }
    std::unordered_map<std::string, Addr> vars;
    Query q;
    q.goal = PutTerm(goal, vars);
    q.vars.assign(vars.begin(), vars.end());
    std::sort(q.vars.begin(), q.vars.end());
    return q;
  }

  Term Get(Addr a, const std::unordered_map<Addr, std::string>* names) const {
    a = Deref(a);
    const Cell c = heap_[a];
    switch (c.tag) {
      case Tag::kRef: {
        if (names != nullptr) {
          auto it = names->find(a);
          if (it != names->end()) return Term::Variable(it->second);
        }
        return Term::Variable("_G" + std::to_string(a));
      }
      case Tag::kAtom:
        return c.a == symbols::kNil ? Term() : Term::Atom(c.a);
      case Tag::kInt:
        return Term::Integer(c.i);
      case Tag::kReal:
        return Term::Real(c.d);
      case Tag::kStr: {
        const Cell f = heap_[c.u];
        if (f.a == symbols::kDot && f.u == 2) {
          std::vector<Term> items;
          Addr cur = a;
          while (true) {
            const Cell cc = heap_[cur];
            if (cc.tag != Tag::kStr) break;
            const Cell ff = heap_[cc.u];
            if (ff.a != symbols::kDot || ff.u != 2) break;
            items.push_back(Get(static_cast<Addr>(cc.u + 1), names));
            cur = Deref(static_cast<Addr>(cc.u + 2));
          }
          const Cell end = heap_[cur];
          std::optional<Term> tail;
          if (!(end.tag == Tag::kAtom && end.a == symbols::kNil)) {
            tail = Get(cur, names);
          }
          return Term::List(std::move(items), std::move(tail));
        }
        std::vector<Term> args;
        args.reserve(f.u);
        for (std::uint64_t i = 1; i <= f.u; ++i) {
          args.push_back(Get(static_cast<Addr>(c.u + i), names));
        }
        return Term::Compound(f.a, std::move(args));
      }
      default:
        return Term::Atom("$invalid");
    }
  }

  Term Get(Addr a) const { return Get(a, nullptr); }

  Bindings ExtractBindings(const Query& q) const {
    std::unordered_map<Addr, std::string> names;
    for (const auto& [name, addr] : q.vars) names.emplace(addr, name);
    Bindings b;
    for (const auto& [name, addr] : q.vars) {
      Addr d = Deref(addr);
      if (d == addr && IsUnbound(d)) continue;
      b.Bind(name, Get(d, &names));
    }
    return b;
  }

  std::int32_t PushFrame(Addr goal, std::int32_t next) {
    frames_.push_back(Frame{goal, next});
    return static_cast<std::int32_t>(frames_.size() - 1);
  }

  // Drives the goal list `cont` to solutions. Returns true if `on_solution`
  // asked to stop, false once all alternatives are exhausted. Either way no
  // choicepoints above the entry level remain; bindings are left in place.
  template <typename OnSolution>
  bool Run(std::int32_t cont, OnSolution&& on_solution) {
    const std::size_t base = choices_.size();
    while (true) {
      if (cont == kDone) {
        if (!on_solution()) {
          choices_.resize(base);
          return true;
        }
        if (!Backtrack(base, cont)) return false;
        continue;
      }
      const Frame frame = frames_[cont];
      if (!Step(frame.goal, frame.next, cont)) {
        if (!Backtrack(base, cont)) return false;
      }
    }
  }

  bool Backtrack(std::size_t base, std::int32_t& cont) {
    while (choices_.size() > base) {
      RestoreTo(choices_.back().marks);
      if (Retry(cont)) return true;
    }
    return false;
  }

  // Tries the remaining alternatives of the top choicepoint. Pops it when
  // exhausted, or on success when no alternatives remain.
  bool Retry(std::int32_t& cont) {
    ChoicePoint& cp = choices_.back();
    if (cp.generator) {
      Tick();
      if (cp.generator->Next(*this)) {
        cont = cp.cont;
        return true;
      }
      choices_.pop_back();
      return false;
    }
    const auto& bucket = *cp.bucket;
    const auto& clauses = kb_.clauses;
    while (cp.next < bucket.size()) {
      const CompiledClause& clause = clauses[bucket[cp.next++]];
      RestoreTo(cp.marks);
      if (!IndexCompatible(clause, cp.goal)) continue;
      while (cp.next < bucket.size() &&
             !IndexCompatible(clauses[bucket[cp.next]], cp.goal)) {
        ++cp.next;
      }
      const bool last = cp.next >= bucket.size();
      Tick();
      Addr base = Rename(clause);
      if (!UnifyHead(cp.goal, base)) continue;
      std::int32_t k = cp.cont;
      for (auto it = clause.goals.rbegin(); it != clause.goals.rend(); ++it) {
        k = PushFrame(base + *it, k);
      }
      if (last) choices_.pop_back();
      cont = k;
      return true;
    }
    choices_.pop_back();
    return false;
  }

  bool IndexCompatible(const CompiledClause& clause, Addr goal) const {
    if (!clause.indexed) return true;
    const Cell g = heap_[Deref(goal)];
    if (g.tag != Tag::kStr) return true;
    const Cell first = heap_[Deref(static_cast<Addr>(g.u + 1))];
    const Cell key = first.tag == Tag::kStr ? heap_[first.u] : first;
    if (key.tag == Tag::kRef) return true;
    if (key.tag != clause.key.tag) return false;
    switch (key.tag) {
      case Tag::kAtom:
        return key.a == clause.key.a;
      case Tag::kInt:
        return key.i == clause.key.i;
      case Tag::kReal:
        return key.d == clause.key.d;
      case Tag::kFun:
        return key.a == clause.key.a && key.u == clause.key.u;
      default:
        return true;
    }
  }

  // Copies a clause template onto the heap with fresh variables; returns the
  // heap address of the template's cell 0.
  Addr Rename(const CompiledClause& clause) {
    CheckHeap(clause.cells.size());
    Addr base = static_cast<Addr>(heap_.size());
    heap_.insert(heap_.end(), clause.cells.begin(), clause.cells.end());
    var_slots_.assign(clause.num_vars, kNoAddr);
    for (Addr i = base; i < heap_.size(); ++i) {
      Cell& c = heap_[i];
      if (c.tag == Tag::kStr) {
        c.u += base;
      } else if (c.tag == Tag::kLocal) {
        Addr& slot = var_slots_[c.a];
        if (slot == kNoAddr) {
          slot = i;
          c = Cell::Ref(i);
        } else {
          c = Cell::Ref(slot);
        }
      }
    }
    return base;
  }

  bool UnifyHead(Addr goal, Addr head) {
    Addr g = Deref(goal);
    const Cell gc = heap_[g];
    const Cell hc = heap_[head];
    if (gc.tag == Tag::kAtom) return hc.tag == Tag::kAtom && hc.a == gc.a;
    const std::uint64_t arity = heap_[gc.u].u;
    for (std::uint64_t i = 1; i <= arity; ++i) {
      if (!Unify(static_cast<Addr>(gc.u + i), static_cast<Addr>(hc.u + i))) {
        return false;
      }
    }
    return true;
  }

  bool PushGenerator(Addr goal, std::int32_t next,
                     std::unique_ptr<Generator> generator,
                     std::int32_t& cont) {
    ChoicePoint cp;
    cp.marks = Mark();
    cp.goal = goal;
    cp.cont = next;
    cp.generator = std::move(generator);
    choices_.push_back(std::move(cp));
    return Retry(cont);
  }

  bool Step(Addr goal_addr, std::int32_t next, std::int32_t& cont) {
    Tick();
    Addr g = Deref(goal_addr);
    const Cell gc = heap_[g];
    Symbol name;
    std::size_t arity;
    Addr args = 0;  // address of the first argument cell
    if (gc.tag == Tag::kAtom) {
      name = gc.a;
      arity = 0;
    } else if (gc.tag == Tag::kStr) {
      const Cell f = heap_[gc.u];
      name = f.a;
      arity = f.u;
      args = static_cast<Addr>(gc.u + 1);
    } else if (gc.tag == Tag::kRef) {
      throw DefinitionError("unbound variable called as a goal");
    } else {
      throw DefinitionError("goal is not callable: " + Format(Get(g)));
    }
    const std::uint64_t key = PredicateKey(name, arity);

    if (auto rel = relations_.find(key); rel != relations_.end()) {
      return PushGenerator(g, next,
                           std::make_unique<RelationGenerator>(
                               &rel->second, args),
                           cont);
    }
    auto predicate = kb_.buckets.find(key);
    const auto& builtins = BuiltinTable();
    if (auto b = builtins.find(key); b != builtins.end()) {
      if (!(IsOverridable(b->second) && predicate != kb_.buckets.end())) {
        return CallBuiltin(b->second, args, next, cont);
      }
    }
    if (predicate == kb_.buckets.end()) return false;
    ChoicePoint cp;
    cp.marks = Mark();
    cp.goal = g;
    cp.cont = next;
    cp.bucket = &predicate->second;
    choices_.push_back(std::move(cp));
    return Retry(cont);
  }

  bool Succeed(std::int32_t next, std::int32_t& cont) {
    cont = next;
    return true;
  }

  bool CallBuiltin(Builtin b, Addr args, std::int32_t next,
                   std::int32_t& cont) {
    switch (b) {
      case Builtin::kConjunction:
        cont = PushFrame(args, PushFrame(args + 1, next));
        return true;
      case Builtin::kUnify:
        return Unify(args, args + 1) && Succeed(next, cont);
      case Builtin::kIs: {
        Number n = Eval(args + 1);
        Addr r = PutCell(n.is_int ? Cell::Int(n.i) : Cell::Real(n.d));
        return Unify(args, r) && Succeed(next, cont);
      }
      case Builtin::kLess:
        return CompareNumbers(Eval(args), Eval(args + 1)) < 0 &&
               Succeed(next, cont);
      case Builtin::kGreater:
        return CompareNumbers(Eval(args), Eval(args + 1)) > 0 &&
               Succeed(next, cont);
      case Builtin::kGreaterEq:
        return CompareNumbers(Eval(args), Eval(args + 1)) >= 0 &&
               Succeed(next, cont);
      case Builtin::kLessEq:
        return CompareNumbers(Eval(args), Eval(args + 1)) <= 0 &&
               Succeed(next, cont);
      case Builtin::kTrue:
        return Succeed(next, cont);
      case Builtin::kFail:
        return false;
      case Builtin::kInteger:
        return heap_[Deref(args)].tag == Tag::kInt && Succeed(next, cont);
      case Builtin::kNot: {
        Marks m = Mark();
        bool found = Run(PushFrame(args, kDone), [] { return false; });
        RestoreTo(m);
        return !found && Succeed(next, cont);
      }
      case Builtin::kFindall:
        return Findall(args) && Succeed(next, cont);
      case Builtin::kBetween:
        return Between(args, next, cont);
      case Builtin::kMember: {
        std::vector<Addr> items;
        ListItems(args + 1, items);
        if (items.empty()) return false;
        return PushGenerator(args, next,
                             std::make_unique<MemberGenerator>(
                                 args, std::move(items)),
                             cont);
      }
      case Builtin::kAppend:
        return Append(args, next, cont);
      case Builtin::kLength:
        return Length(args) && Succeed(next, cont);
      case Builtin::kNth1:
        return Nth1(args, next, cont);
      case Builtin::kMaxmember:
        return Maxmember(args) && Succeed(next, cont);
      case Builtin::kGetsubset:
        return Getsubset(args, next, cont);
      case Builtin::kCreate:
      case Builtin::kDelete:
        RecordEffect(b == Builtin::kCreate ? Effect::Kind::kCreate
                                           : Effect::Kind::kDelete,
                     args);
        return Succeed(next, cont);
      case Builtin::kToCreate:
      case Builtin::kToDelete: {
        auto kind = b == Builtin::kToCreate ? Effect::Kind::kCreate
                                            : Effect::Kind::kDelete;
        std::vector<Term> words;
        if (observed_ != nullptr) {
          for (const Effect& e : observed_->entries()) {
            if (e.kind == kind) words.push_back(e.word);
          }
        }
        for (const Effect& e : live_effects_) {
          if (e.kind == kind) words.push_back(e.word);
        }
        if (words.empty()) return false;
        return PushGenerator(args, next,
                             std::make_unique<TermGenerator>(
                                 args, std::move(words)),
                             cont);
      }
      case Builtin::kNone:
        break;
    }
    return false;
  }

  // --- Builtin bodies -----------------------------------------------------

  // Item value addresses of the list at `list`. Returns false (with the
  // items seen so far) when the list is partial or not a list; `tails`
  // receives the address of each suffix, starting with the list itself.
  bool ListItems(Addr list, std::vector<Addr>& items,
                 std::vector<Addr>* tails = nullptr) const {
    Addr cur = Deref(list);
    while (true) {
      if (tails != nullptr) tails->push_back(cur);
      const Cell c = heap_[cur];
      if (c.tag == Tag::kAtom && c.a == symbols::kNil) return true;
      if (c.tag != Tag::kStr) return false;
      const Cell f = heap_[c.u];
      if (f.a != symbols::kDot || f.u != 2) return false;
      items.push_back(static_cast<Addr>(c.u + 1));
      cur = Deref(static_cast<Addr>(c.u + 2));
    }
  }

  std::string Describe(Addr a) const { return Format(Get(a)); }

  Number Eval(Addr a) {
    a = Deref(a);
    const Cell c = heap_[a];
    switch (c.tag) {
      case Tag::kInt:
        return Number{true, c.i, 0.0};
      case Tag::kReal:
        return Number{false, 0, c.d};
      case Tag::kRef:
        throw DefinitionError(
            "arithmetic on an unbound variable (is/2 or comparison)");
      case Tag::kAtom:
        throw DefinitionError("not a number in arithmetic: " + Describe(a));
      case Tag::kStr:
        break;
      default:
        throw DefinitionError("malformed arithmetic expression");
    }
    const Cell f = heap_[c.u];
    const std::string& op = SymbolName(f.a);
    const Addr x = static_cast<Addr>(c.u + 1);
    if (f.u == 1 && op == "-") {
      Number n = Eval(x);
      if (n.is_int) {
        if (n.i == std::numeric_limits<std::int64_t>::min()) {
          throw DefinitionError("integer overflow");
        }
        return Number{true, -n.i, 0.0};
      }
      return Number{false, 0, -n.d};
    }
    if (f.u != 2) {
      throw DefinitionError("unknown arithmetic function " + op + "/" +
                            std::to_string(f.u));
    }
    Number l = Eval(x);
    Number r = Eval(x + 1);
    const bool ints = l.is_int && r.is_int;
    auto real = [](double v) { return Number{false, 0, v}; };
    auto overflow = [] { throw DefinitionError("integer overflow"); };
    if (op == "+") {
      if (!ints) return real(l.AsDouble() + r.AsDouble());
      std::int64_t v;
      if (__builtin_add_overflow(l.i, r.i, &v)) overflow();
      return Number{true, v, 0.0};
    }
    if (op == "-") {
      if (!ints) return real(l.AsDouble() - r.AsDouble());
      std::int64_t v;
      if (__builtin_sub_overflow(l.i, r.i, &v)) overflow();
      return Number{true, v, 0.0};
    }
    if (op == "*") {
      if (!ints) return real(l.AsDouble() * r.AsDouble());
      std::int64_t v;
      if (__builtin_mul_overflow(l.i, r.i, &v)) overflow();
      return Number{true, v, 0.0};
    }
    if (op == "/") {
      if (r.AsDouble() == 0.0) throw DefinitionError("division by zero");
      if (ints && l.i % r.i == 0) return Number{true, l.i / r.i, 0.0};
      return real(l.AsDouble() / r.AsDouble());
    }
    if (op == "^") {
      if (ints && r.i >= 0) {
        std::int64_t result = 1;
        std::int64_t base = l.i;
        std::int64_t e = r.i;
        while (e > 0) {
          if (e & 1) {
            if (__builtin_mul_overflow(result, base, &result)) overflow();
          }
          e >>= 1;
          if (e > 0 && __builtin_mul_overflow(base, base, &base)) overflow();
        }
        return Number{true, result, 0.0};
      }
      return real(std::pow(l.AsDouble(), r.AsDouble()));
    }
    if (op == "min") return CompareNumbers(r, l) < 0 ? r : l;
    if (op == "max") return CompareNumbers(r, l) > 0 ? r : l;
    throw DefinitionError("unknown arithmetic function " + op + "/2");
  }

  bool Findall(Addr args) {
    std::vector<Term> results;
    Marks m = Mark();
    ++findall_depth_;
    try {
      Run(PushFrame(args + 1, kDone), [&] {
        results.push_back(Get(args));
        return true;
      });
    } catch (...) {
      --findall_depth_;
      throw;
    }
    --findall_depth_;
    RestoreTo(m);
    std::vector<Addr> items;
    items.reserve(results.size());
    for (const Term& t : results) items.push_back(PutTerm(t));
    return Unify(args + 2, BuildList(items));
  }

  bool Between(Addr args, std::int32_t next, std::int32_t& cont) {
    const Cell lo = heap_[Deref(args)];
    const Cell hi = heap_[Deref(args + 1)];
    if (lo.tag != Tag::kInt || hi.tag != Tag::kInt) {
      throw DefinitionError("between/3 bounds must be integers, got " +
                            Describe(args) + " and " + Describe(args + 1));
    }
    const Cell x = heap_[Deref(args + 2)];
    if (x.tag == Tag::kInt) {
      return x.i >= lo.i && x.i <= hi.i && Succeed(next, cont);
    }
    if (x.tag != Tag::kRef) return false;
    if (lo.i > hi.i) return false;
    return PushGenerator(
        args, next, std::make_unique<BetweenGenerator>(args + 2, lo.i, hi.i),
        cont);
  }

  bool Append(Addr args, std::int32_t next, std::int32_t& cont) {
    std::vector<Addr> front;
    if (ListItems(args, front)) {
      return Unify(args + 2, BuildList(front, args + 1)) && Succeed(next, cont);
    }
    std::vector<Addr> items;
    std::vector<Addr> tails;
    if (!ListItems(args + 2, items, &tails)) {
      throw DefinitionError(
          "append/3 needs a proper list as first or third argument");
    }
    return PushGenerator(args, next,
                         std::make_unique<SplitGenerator>(
                             args, std::move(items), std::move(tails)),
                         cont);
  }

  bool Length(Addr args) {
    std::vector<Addr> items;
    std::vector<Addr> tails;
    if (ListItems(args, items, &tails)) {
      return Unify(args + 1, PutInt(static_cast<std::int64_t>(items.size())));
    }
    const Cell n = heap_[Deref(args + 1)];
    Addr tail = tails.back();
    if (!IsUnbound(tail)) return false;
    if (n.tag != Tag::kInt) {
      throw DefinitionError("length/2 of a partial list needs an integer length");
    }
    if (n.i < static_cast<std::int64_t>(items.size())) return false;
    std::vector<Addr> fresh;
    for (std::int64_t i = static_cast<std::int64_t>(items.size()); i < n.i;
         ++i) {
      Addr v = static_cast<Addr>(heap_.size());
      PutCell(Cell::Ref(v));
      fresh.push_back(v);
    }
    return Unify(tail, BuildList(fresh));
  }

  bool Nth1(Addr args, std::int32_t next, std::int32_t& cont) {
    std::vector<Addr> items;
    if (!ListItems(args + 1, items)) {
      throw DefinitionError("nth1/3 needs a proper list, got " +
                            Describe(args + 1));
    }
    const Cell index = heap_[Deref(args)];
    if (index.tag == Tag::kInt) {
      if (index.i < 1 || index.i > static_cast<std::int64_t>(items.size())) {
        return false;
      }
      return Unify(args + 2, items[index.i - 1]) && Succeed(next, cont);
    }
    if (index.tag != Tag::kRef || items.empty()) return false;
    return PushGenerator(
        args, next, std::make_unique<Nth1Generator>(args, std::move(items)),
        cont);
  }

  bool Maxmember(Addr args) {
    std::vector<Addr> items;
    if (!ListItems(args, items) || items.empty()) return false;
    Addr best = kNoAddr;
    Number best_value;
    for (Addr item : items) {
      const Cell c = heap_[Deref(item)];
      Number v;
      if (c.tag == Tag::kInt) {
        v = Number{true, c.i, 0.0};
      } else if (c.tag == Tag::kReal) {
        v = Number{false, 0, c.d};
      } else {
        return false;
      }
      if (best == kNoAddr || CompareNumbers(v, best_value) > 0) {
        best = item;
        best_value = v;
      }
    }
    return Unify(args + 1, best);
  }

  bool Getsubset(Addr args, std::int32_t next, std::int32_t& cont) {
    std::vector<Addr> items;
    if (!ListItems(args + 1, items)) {
      throw DefinitionError("getsubset/2 needs a bound proper list, got " +
                            Describe(args + 1));
    }
    if (items.size() > 30) {
      throw DefinitionError("getsubset/2 list too long to enumerate");
    }
    return PushGenerator(
        args, next, std::make_unique<SubsetGenerator>(args, std::move(items)),
        cont);
  }

  void RecordEffect(Effect::Kind kind, Addr arg) {
    const char* name = kind == Effect::Kind::kCreate ? "create/1" : "delete/1";
    if (!effects_enabled_) {
      throw DefinitionError(std::string(name) +
                            " is only allowed while executing do/1");
    }
    if (findall_depth_ > 0) {
      throw DefinitionError(std::string(name) +
                            " may not be called inside findall/3");
    }
    Term word = Get(arg);
    if (!word.is_ground()) {
      throw DefinitionError(std::string(name) + " argument must be ground: " +
                            Format(word));
    }
    live_effects_.push_back(Effect{kind, std::move(word)});
  }

  // --- Generators ---------------------------------------------------------

  class RelationGenerator : public Generator {
   public:
    RelationGenerator(const RelationData* relation, Addr args)
        : relation_(relation), args_(args) {}
    bool Next(Engine& e) override {
      while (index_ < relation_->tuples.size()) {
        Addr tuple = relation_->tuples[index_++];
        e.RestoreTop();
        bool ok = true;
        for (std::size_t i = 0; ok && i < relation_->arity; ++i) {
          ok = e.Unify(static_cast<Addr>(args_ + i),
                       static_cast<Addr>(tuple + i));
        }
        if (ok) return true;
      }
      return false;
    }

   private:
    const RelationData* relation_;
    Addr args_;
    std::size_t index_ = 0;
  };

  class MemberGenerator : public Generator {
   public:
    MemberGenerator(Addr args, std::vector<Addr> items)
        : args_(args), items_(std::move(items)) {}
    bool Next(Engine& e) override {
      while (index_ < items_.size()) {
        e.RestoreTop();
        if (e.Unify(args_, items_[index_++])) return true;
      }
      return false;
    }

   private:
    Addr args_;
    std::vector<Addr> items_;
    std::size_t index_ = 0;
  };

  class TermGenerator : public Generator {
   public:
    TermGenerator(Addr target, std::vector<Term> terms)
        : target_(target), terms_(std::move(terms)) {}
    bool Next(Engine& e) override {
      while (index_ < terms_.size()) {
        e.RestoreTop();
        if (e.Unify(target_, e.PutTerm(terms_[index_++]))) return true;
      }
      return false;
    }

   private:
    Addr target_;
    std::vector<Term> terms_;
    std::size_t index_ = 0;
  };

  class BetweenGenerator : public Generator {
   public:
    BetweenGenerator(Addr target, std::int64_t lo, std::int64_t hi)
        : target_(target), next_(lo), hi_(hi) {}
    bool Next(Engine& e) override {
      while (!done_ && next_ <= hi_) {
        std::int64_t v = next_;
        if (next_ == hi_) {
          done_ = true;
        } else {
          ++next_;
        }
        e.RestoreTop();
        if (e.Unify(target_, e.PutInt(v))) return true;
      }
      return false;
    }

   private:
    Addr target_;
    std::int64_t next_;
    std::int64_t hi_;
    bool done_ = false;
  };

  class SplitGenerator : public Generator {
   public:
    SplitGenerator(Addr args, std::vector<Addr> items, std::vector<Addr> tails)
        : args_(args), items_(std::move(items)), tails_(std::move(tails)) {}
    bool Next(Engine& e) override {
      while (k_ <= items_.size()) {
        std::size_t k = k_++;
        e.RestoreTop();
        Addr prefix = e.BuildList(std::span(items_).first(k));
        if (e.Unify(args_, prefix) && e.Unify(args_ + 1, tails_[k])) {
          return true;
        }
      }
      return false;
    }

   private:
    Addr args_;
    std::vector<Addr> items_;
    std::vector<Addr> tails_;
    std::size_t k_ = 0;
  };

  class Nth1Generator : public Generator {
   public:
    Nth1Generator(Addr args, std::vector<Addr> items)
        : args_(args), items_(std::move(items)) {}
    bool Next(Engine& e) override {
      while (k_ < items_.size()) {
        std::size_t k = k_++;
        e.RestoreTop();
        if (e.Unify(args_, e.PutInt(static_cast<std::int64_t>(k + 1))) &&
            e.Unify(args_ + 2, items_[k])) {
          return true;
        }
      }
      return false;
    }

   private:
    Addr args_;
    std::vector<Addr> items_;
    std::size_t k_ = 0;
  };

  // Exclusion-first order: for [H | T], every subset of T, then H prepended
  // to every subset of T. Counting up with the first item on the most
  // significant bit produces exactly that order.
  class SubsetGenerator : public Generator {
   public:
    SubsetGenerator(Addr args, std::vector<Addr> items)
        : args_(args), items_(std::move(items)) {}
    bool Next(Engine& e) override {
      const std::uint64_t n = items_.size();
      const std::uint64_t count = std::uint64_t{1} << n;
      while (mask_ < count) {
        std::uint64_t mask = mask_++;
        std::vector<Addr> chosen;
        for (std::uint64_t i = 0; i < n; ++i) {
          if (mask & (std::uint64_t{1} << (n - 1 - i))) {
            chosen.push_back(items_[i]);
          }
        }
        e.RestoreTop();
        if (e.Unify(args_, e.BuildList(chosen))) return true;
      }
      return false;
    }

   private:
    Addr args_;
    std::vector<Addr> items_;
    std::uint64_t mask_ = 0;
  };

  const KnowledgeBase::Compiled& kb_;
  const std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  const EffectTrail* observed_;
  bool effects_enabled_ = false;
  int findall_depth_ = 0;

  std::vector<Cell> heap_;
  Addr static_top_ = 0;
  std::vector<Addr> trail_;
  std::vector<Frame> frames_;
  std::vector<ChoicePoint> choices_;
  std::vector<Effect> live_effects_;
  std::unordered_map<std::uint64_t, RelationData> relations_;
  std::vector<std::pair<Addr, Addr>> unify_stack_;
  std::vector<Addr> var_slots_;
};

}  // namespace internal

// ---------------------------------------------------------------------------
// KnowledgeBase

KnowledgeBase::KnowledgeBase() : KnowledgeBase(std::vector<Clause>{}) {}

KnowledgeBase::KnowledgeBase(std::vector<Clause> clauses) {
  auto compiled = std::make_shared<Compiled>();
  compiled->clauses.reserve(clauses.size());
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const Clause& clause = clauses[i];
    compiled->clauses.push_back(internal::CompileClause(clause));
    compiled->buckets[internal::PredicateKey(clause.head.symbol(),
                                             clause.head.arity())]
        .push_back(static_cast<std::uint32_t>(i));
  }
  compiled->source = std::move(clauses);
  compiled_ = std::move(compiled);
}

const std::vector<Clause>& KnowledgeBase::clauses() const {
  return compiled_->source;
}

bool KnowledgeBase::Defines(std::string_view name, std::size_t arity) const {
  return compiled_->buckets.count(internal::PredicateKey(Intern(name), arity)) >
         0;
}

std::vector<std::size_t> KnowledgeBase::ClausesFor(std::string_view name,
                                                   std::size_t arity) const {
  auto it =
      compiled_->buckets.find(internal::PredicateKey(Intern(name), arity));
  if (it == compiled_->buckets.end()) return {};
  return std::vector<std::size_t>(it->second.begin(), it->second.end());
}

// ---------------------------------------------------------------------------
// EffectTrail and VirtualPredicateTable

void EffectTrail::RollbackTo(std::size_t mark) {
  if (mark < entries_.size()) {
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(mark),
                   entries_.end());
  }
}

void EffectTrail::Append(std::span<const Effect> effects) {
  entries_.insert(entries_.end(), effects.begin(), effects.end());
}

void VirtualPredicateTable::AddRelation(std::string_view name,
                                        std::size_t arity,
                                        std::vector<Tuple> tuples) {
  Symbol symbol = Intern(name);
  for (auto& relation : relations_) {
    if (relation.name == symbol && relation.arity == arity) {
      relation.tuples = std::move(tuples);
      return;
    }
  }
  relations_.push_back(Relation{symbol, arity, std::move(tuples)});
}

// ---------------------------------------------------------------------------
// Solver

class Solver::Machine : public internal::Engine {
 public:
  using internal::Engine::Engine;
};

Solver::Solver(const KnowledgeBase& kb, const VirtualPredicateTable& virtuals,
               std::uint64_t step_budget)
    : machine_(std::make_unique<Machine>(kb, virtuals, step_budget)) {}

Solver::~Solver() = default;

void Solver::Solve(const Term& goal,
                   const std::function<bool(const Bindings&)>& visit) {
  machine_->Solve(goal, visit);
}

std::vector<Bindings> Solver::SolveAll(const Term& goal) {
  std::vector<Bindings> out;
  machine_->Solve(goal, [&](const Bindings& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

std::optional<Bindings> Solver::SolveFirst(const Term& goal) {
  std::optional<Bindings> out;
  machine_->Solve(goal, [&](const Bindings& b) {
    out = b;
    return false;
  });
  return out;
}

bool Solver::Provable(const Term& goal) {
  bool found = false;
  machine_->Solve(goal, [&](const Bindings&) {
    found = true;
    return false;
  });
  return found;
}

std::vector<std::vector<Term>> Solver::SolveDistinct(
    const Term& goal, std::span<const Term> projection) {
  std::vector<std::vector<Term>> out;
  std::unordered_set<Term, TermHash> seen;
  machine_->Solve(goal, [&](const Bindings& b) {
    std::vector<Term> tuple;
    tuple.reserve(projection.size());
    for (const Term& p : projection) {
      Term value = b.Apply(p);
      if (!value.is_ground()) {
        throw DefinitionError("a solution of " + Format(goal) + " leaves " +
                              Format(p) + " unbound");
      }
      tuple.push_back(std::move(value));
    }
    Term key = Term::List(tuple);
    if (seen.insert(key).second) out.push_back(std::move(tuple));
    return true;
  });
  return out;
}

std::vector<Term> Solver::SolveDistinct(const Term& goal,
                                        const Term& projection) {
  std::vector<Term> out;
  for (auto& tuple : SolveDistinct(goal, std::span(&projection, 1))) {
    out.push_back(std::move(tuple[0]));
  }
  return out;
}

std::optional<ProofWithEffects> Solver::ProveFirstWithEffects(
    const Term& goal, EffectTrail& trail) {
  return machine_->ProveFirst(goal, trail);
}

std::uint64_t Solver::last_steps() const { return machine_->steps(); }

std::vector<Bindings> Solve(const KnowledgeBase& kb,
                            const VirtualPredicateTable& virtuals,
                            const Term& goal, std::uint64_t budget) {
  Solver solver(kb, virtuals, budget);
  return solver.SolveAll(goal);
}

std::vector<std::vector<Term>> SolveDistinct(
    const KnowledgeBase& kb, const VirtualPredicateTable& virtuals,
    const Term& goal, std::span<const Term> projection, std::uint64_t budget) {
  Solver solver(kb, virtuals, budget);
  return solver.SolveDistinct(goal, projection);
}

std::optional<ProofWithEffects> ProveFirstWithEffects(
    const KnowledgeBase& kb, const VirtualPredicateTable& virtuals,
    const Term& goal, EffectTrail& trail, std::uint64_t budget) {
  Solver solver(kb, virtuals, budget);
  return solver.ProveFirstWithEffects(goal, trail);
}

}  // namespace sidl
