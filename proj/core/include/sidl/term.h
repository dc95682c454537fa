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

#ifndef SIDL_TERM_H_
#define SIDL_TERM_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sidl {

// Interned atom and functor names. Ids are process-wide and stable; the
// table only grows.
using Symbol = std::uint32_t;

Symbol Intern(std::string_view name);
const std::string& SymbolName(Symbol symbol);

namespace symbols {
inline constexpr Symbol kNil = 0;    // "[]"
inline constexpr Symbol kDot = 1;    // "."
inline constexpr Symbol kComma = 2;  // ","
}  // namespace symbols

// An immutable logic term. Copies share structure, so passing by value is
// cheap and values are safe to read from several threads.
//
// Lists are a first-class kind holding their items and an optional tail
// (a variable for partial lists such as [H | T]). The empty list is a list
// with no items and no tail.
class Term {
 public:
  enum class Kind : std::uint8_t {
    kAtom,
    kInteger,
    kReal,
    kVariable,
    kList,
    kCompound,
  };

  // The empty list.
  Term();

  static Term Atom(std::string_view name);
  static Term Atom(Symbol symbol);
  static Term Integer(std::int64_t value);
  static Term Real(double value);
  static Term Variable(std::string name);
  // A tail that is itself a list is spliced in, so [a | [b]] == [a, b].
  static Term List(std::vector<Term> items,
                   std::optional<Term> tail = std::nullopt);
  // Zero-argument compounds collapse to atoms.
  static Term Compound(std::string_view functor, std::vector<Term> args);
  static Term Compound(Symbol functor, std::vector<Term> args);

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::kAtom; }
  bool is_integer() const { return kind() == Kind::kInteger; }
  bool is_real() const { return kind() == Kind::kReal; }
  bool is_number() const { return is_integer() || is_real(); }
  bool is_variable() const { return kind() == Kind::kVariable; }
  bool is_list() const { return kind() == Kind::kList; }
  bool is_compound() const { return kind() == Kind::kCompound; }
  bool is_callable() const { return is_atom() || is_compound(); }
  bool is_empty_list() const;

  // Atom name or compound functor.
  Symbol symbol() const;
  const std::string& name() const;
  std::int64_t integer() const;
  double real() const;
  // Integer or real value as a double.
  double number() const;
  const std::string& var_name() const;
  bool is_anonymous() const;

  // List items; empty for non-lists.
  std::span<const Term> items() const;
  // List tail, or nullptr for proper lists and non-lists.
  const Term* tail() const;
  // Compound arguments; empty for everything else.
  std::span<const Term> args() const;
  std::size_t arity() const { return args().size(); }

  bool is_ground() const;
  std::size_t hash() const;

  // Structural equality. Integer 1 and Real 1.0 are different terms.
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
};

// Standard order of terms: variables < numbers < atoms < lists < compounds.
// Numbers compare by value, a real sorting before an equal integer.
int Compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const {
    return Compare(a, b) < 0;
  }
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Canonical text: "[a, b]", "f(x, y)", "(price, double)", integers without a
// decimal point and reals with at least one fractional digit. Ground terms
// read back to an equal term.
std::string Format(const Term& term);

// Variable name to term. Chains are followed on lookup; the engine never
// builds cyclic chains (no occurs check, see Unify).
class Bindings {
 public:
  Bindings() = default;

  bool Contains(const std::string& name) const;
  // The direct binding, if any.
  const Term* Lookup(const std::string& name) const;
  void Bind(const std::string& name, Term value);

  // Follows variable chains until reaching an unbound variable or a
  // non-variable term.
  Term Dereference(const Term& term) const;
  // Substitutes bindings throughout `term`.
  Term Apply(const Term& term) const;

  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  const std::map<std::string, Term>& entries() const { return map_; }

  friend bool operator==(const Bindings&, const Bindings&) = default;

 private:
  std::map<std::string, Term> map_;
};

// Syntactic unification without occurs check. The anonymous variable "_"
// unifies with anything and is never bound. Returns nullopt on failure.
std::optional<Bindings> Unify(const Term& a, const Term& b,
                              const Bindings& in = {});

}  // namespace sidl

template <>
struct std::hash<sidl::Term> {
  std::size_t operator()(const sidl::Term& t) const { return t.hash(); }
};

#endif  // SIDL_TERM_H_
