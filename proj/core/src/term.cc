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

#include "sidl/term.h"

#include <charconv>
#include <cmath>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "sidl/errors.h"

namespace sidl {
namespace {

class SymbolTable {
 public:
  SymbolTable() {
    Add("[]");
    Add(".");
    Add(",");
  }

  Symbol Intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      auto it = index_.find(name);
      if (it != index_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    return Add(name);
  }

  const std::string& Name(Symbol symbol) {
    std::shared_lock lock(mutex_);
    return names_.at(symbol);
  }

 private:
  Symbol Add(std::string_view name) {
    auto id = static_cast<Symbol>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
  }

  std::shared_mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string_view, Symbol> index_;
};

SymbolTable& Table() {
  static SymbolTable* table = new SymbolTable();
  return *table;
}

std::size_t Mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Symbol Intern(std::string_view name) { return Table().Intern(name); }

const std::string& SymbolName(Symbol symbol) { return Table().Name(symbol); }

struct Term::Node {
  Kind kind = Kind::kList;
  Symbol symbol = symbols::kNil;
  std::int64_t integer = 0;
  double real = 0.0;
  std::string var_name;
  std::vector<Term> children;  // list items or compound args
  std::optional<Term> tail;
  bool ground = true;
  std::size_t hash = 0;
};

Term::Term() : node_(nullptr) {}

Term::Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Term Term::Atom(std::string_view name) { return Atom(Intern(name)); }

Term Term::Atom(Symbol symbol) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kAtom;
  node->symbol = symbol;
  node->hash = Mix(1, symbol);
  return Term(std::move(node));
}

Term Term::Integer(std::int64_t value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kInteger;
  node->integer = value;
  node->hash = Mix(2, std::hash<std::int64_t>()(value));
  return Term(std::move(node));
}

Term Term::Real(double value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kReal;
  node->real = value;
  node->hash = Mix(3, std::hash<double>()(value));
  return Term(std::move(node));
}

Term Term::Variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kVariable;
  node->hash = Mix(4, std::hash<std::string>()(name));
  node->var_name = std::move(name);
  node->ground = false;
  return Term(std::move(node));
}

Term Term::List(std::vector<Term> items, std::optional<Term> tail) {
  while (tail.has_value() && tail->is_list()) {
    Term rest = *tail;
    items.insert(items.end(), rest.items().begin(), rest.items().end());
    tail = rest.tail() ? std::optional<Term>(*rest.tail()) : std::nullopt;
  }
  if (items.empty() && !tail.has_value()) return Term();
  if (items.empty()) return *tail;
  auto node = std::make_shared<Node>();
  node->kind = Kind::kList;
  std::size_t h = 5;
  for (const Term& item : items) {
    h = Mix(h, item.hash());
    node->ground = node->ground && item.is_ground();
  }
  if (tail.has_value()) {
    h = Mix(h, Mix(6, tail->hash()));
    node->ground = node->ground && tail->is_ground();
  }
  node->hash = h;
  node->children = std::move(items);
  node->tail = std::move(tail);
  return Term(std::move(node));
}

Term Term::Compound(std::string_view functor, std::vector<Term> args) {
  return Compound(Intern(functor), std::move(args));
}

Term Term::Compound(Symbol functor, std::vector<Term> args) {
  if (args.empty()) return Atom(functor);
  auto node = std::make_shared<Node>();
  node->kind = Kind::kCompound;
  node->symbol = functor;
  std::size_t h = Mix(7, functor);
  for (const Term& arg : args) {
    h = Mix(h, arg.hash());
    node->ground = node->ground && arg.is_ground();
  }
  node->hash = h;
  node->children = std::move(args);
  return Term(std::move(node));
}

Term::Kind Term::kind() const { return node_ ? node_->kind : Kind::kList; }

bool Term::is_empty_list() const { return node_ == nullptr; }

Symbol Term::symbol() const { return node_ ? node_->symbol : symbols::kNil; }

const std::string& Term::name() const { return SymbolName(symbol()); }

std::int64_t Term::integer() const { return node_ ? node_->integer : 0; }

double Term::real() const { return node_ ? node_->real : 0.0; }

double Term::number() const {
  return is_integer() ? static_cast<double>(integer()) : real();
}

const std::string& Term::var_name() const {
  static const std::string kEmpty;
  return node_ ? node_->var_name : kEmpty;
}

bool Term::is_anonymous() const { return is_variable() && var_name() == "_"; }

std::span<const Term> Term::items() const {
  if (!node_ || node_->kind != Kind::kList) return {};
  return node_->children;
}

const Term* Term::tail() const {
  if (!node_ || node_->kind != Kind::kList || !node_->tail) return nullptr;
  return &*node_->tail;
}

std::span<const Term> Term::args() const {
  if (!node_ || node_->kind != Kind::kCompound) return {};
  return node_->children;
}

bool Term::is_ground() const { return node_ ? node_->ground : true; }

std::size_t Term::hash() const { return node_ ? node_->hash : 5; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.hash() != b.hash()) return false;
  switch (a.kind()) {
    case Term::Kind::kAtom:
      return a.symbol() == b.symbol();
    case Term::Kind::kInteger:
      return a.integer() == b.integer();
    case Term::Kind::kReal:
      return a.real() == b.real() ||
             (std::isnan(a.real()) && std::isnan(b.real()));
    case Term::Kind::kVariable:
      return a.var_name() == b.var_name();
    case Term::Kind::kList: {
      auto ai = a.items();
      auto bi = b.items();
      if (ai.size() != bi.size()) return false;
      if ((a.tail() == nullptr) != (b.tail() == nullptr)) return false;
      for (std::size_t i = 0; i < ai.size(); ++i) {
        if (!(ai[i] == bi[i])) return false;
      }
      return a.tail() == nullptr || *a.tail() == *b.tail();
    }
    case Term::Kind::kCompound: {
      if (a.symbol() != b.symbol() || a.arity() != b.arity()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i) {
        if (!(a.args()[i] == b.args()[i])) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

int Rank(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVariable:
      return 0;
    case Term::Kind::kInteger:
    case Term::Kind::kReal:
      return 1;
    case Term::Kind::kAtom:
      return 2;
    case Term::Kind::kList:
      return 3;
    case Term::Kind::kCompound:
      return 4;
  }
  return 5;
}

template <typename T>
int Cmp(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

}  // namespace

int Compare(const Term& a, const Term& b) {
  int ra = Rank(a);
  int rb = Rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case Term::Kind::kVariable:
      return Cmp(a.var_name(), b.var_name());
    case Term::Kind::kInteger:
    case Term::Kind::kReal: {
      if (a.is_integer() && b.is_integer()) return Cmp(a.integer(), b.integer());
      int c = Cmp(a.number(), b.number());
      if (c != 0) return c;
      return Cmp(a.is_integer() ? 1 : 0, b.is_integer() ? 1 : 0);
    }
    case Term::Kind::kAtom:
      return Cmp(a.name(), b.name());
    case Term::Kind::kList: {
      auto ai = a.items();
      auto bi = b.items();
      std::size_t n = std::min(ai.size(), bi.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = Compare(ai[i], bi[i]);
        if (c != 0) return c;
      }
      if (ai.size() != bi.size()) return ai.size() < bi.size() ? -1 : 1;
      bool at = a.tail() != nullptr;
      bool bt = b.tail() != nullptr;
      if (at != bt) return at ? 1 : -1;
      return at ? Compare(*a.tail(), *b.tail()) : 0;
    }
    case Term::Kind::kCompound: {
      if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
      if (a.symbol() != b.symbol()) return Cmp(a.name(), b.name());
      for (std::size_t i = 0; i < a.arity(); ++i) {
        int c = Compare(a.args()[i], b.args()[i]);
        if (c != 0) return c;
      }
      return 0;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Formatting

namespace {

struct OperatorInfo {
  int precedence;
  enum Type { kXfx, kYfx, kXfy } type;
};

std::optional<OperatorInfo> InfixOperator(const std::string& name) {
  if (name == "is" || name == "=" || name == "<" || name == ">" ||
      name == ">=" || name == "=<") {
    return OperatorInfo{700, OperatorInfo::kXfx};
  }
  if (name == "+" || name == "-") return OperatorInfo{500, OperatorInfo::kYfx};
  if (name == "*" || name == "/") return OperatorInfo{400, OperatorInfo::kYfx};
  if (name == "^") return OperatorInfo{200, OperatorInfo::kXfy};
  return std::nullopt;
}

constexpr int kUnaryMinusPrecedence = 100;
constexpr int kArgumentPrecedence = 999;

bool IsPlainAtomName(const std::string& name) {
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

std::string QuoteAtom(const std::string& name) {
  if (IsPlainAtomName(name)) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '\'';
  return out;
}

std::string FormatReal(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  std::string text(buffer, result.ptr);
  if (text.find_first_of(".e") == std::string::npos) return text + ".0";
  auto e = text.find('e');
  if (e != std::string::npos && text.find('.') == std::string::npos) {
    text.insert(e, ".0");
  }
  return text;
}

void FormatInto(const Term& t, int max_precedence, std::string& out);

void FormatCommaTuple(const Term& t, std::string& out) {
  out += '(';
  const Term* cur = &t;
  bool first = true;
  while (cur->is_compound() && cur->symbol() == symbols::kComma &&
         cur->arity() == 2) {
    if (!first) out += ", ";
    FormatInto(cur->args()[0], kArgumentPrecedence, out);
    first = false;
    cur = &cur->args()[1];
  }
  out += ", ";
  FormatInto(*cur, kArgumentPrecedence, out);
  out += ')';
}

void FormatInto(const Term& t, int max_precedence, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::kAtom:
      out += QuoteAtom(t.name());
      return;
    case Term::Kind::kInteger:
      out += std::to_string(t.integer());
      return;
    case Term::Kind::kReal:
      out += FormatReal(t.real());
      return;
    case Term::Kind::kVariable:
      out += t.var_name();
      return;
    case Term::Kind::kList: {
      out += '[';
      bool first = true;
      for (const Term& item : t.items()) {
        if (!first) out += ", ";
        FormatInto(item, kArgumentPrecedence, out);
        first = false;
      }
      if (t.tail() != nullptr) {
        out += " | ";
        FormatInto(*t.tail(), kArgumentPrecedence, out);
      }
      out += ']';
      return;
    }
    case Term::Kind::kCompound:
      break;
  }
  const std::string& functor = t.name();
  if (t.symbol() == symbols::kComma && t.arity() == 2) {
    FormatCommaTuple(t, out);
    return;
  }
  if (t.arity() == 2) {
    if (auto op = InfixOperator(functor)) {
      int left = op->type == OperatorInfo::kYfx ? op->precedence
                                                 : op->precedence - 1;
      int right = op->type == OperatorInfo::kXfy ? op->precedence
                                                  : op->precedence - 1;
      bool paren = op->precedence > max_precedence;
      if (paren) out += '(';
      FormatInto(t.args()[0], left, out);
      out += ' ';
      out += functor;
      out += ' ';
      FormatInto(t.args()[1], right, out);
      if (paren) out += ')';
      return;
    }
  }
  if (t.arity() == 1 && functor == "-") {
    bool paren = kUnaryMinusPrecedence > max_precedence;
    if (paren) out += '(';
    out += '-';
    const Term& operand = t.args()[0];
    // "- 1" keeps the compound distinct from the literal -1.
    if (operand.is_number()) out += ' ';
    FormatInto(operand, kUnaryMinusPrecedence, out);
    if (paren) out += ')';
    return;
  }
  out += QuoteAtom(functor);
  out += '(';
  bool first = true;
  for (const Term& arg : t.args()) {
    if (!first) out += ", ";
    FormatInto(arg, kArgumentPrecedence, out);
    first = false;
  }
  out += ')';
}

}  // namespace

std::string Format(const Term& term) {
  std::string out;
  FormatInto(term, 1200, out);
  return out;
}

// ---------------------------------------------------------------------------
// Bindings and unification

bool Bindings::Contains(const std::string& name) const {
  return map_.count(name) > 0;
}

const Term* Bindings::Lookup(const std::string& name) const {
  auto it = map_.find(name);
  return it == map_.end() ? nullptr : &it->second;
}

void Bindings::Bind(const std::string& name, Term value) {
  map_.insert_or_assign(name, std::move(value));
}

Term Bindings::Dereference(const Term& term) const {
  Term cur = term;
  while (cur.is_variable()) {
    const Term* next = Lookup(cur.var_name());
    if (next == nullptr) break;
    cur = *next;
  }
  return cur;
}

Term Bindings::Apply(const Term& term) const {
  Term t = Dereference(term);
  switch (t.kind()) {
    case Term::Kind::kList: {
      std::vector<Term> items;
      items.reserve(t.items().size());
      for (const Term& item : t.items()) items.push_back(Apply(item));
      std::optional<Term> tail;
      if (t.tail() != nullptr) tail = Apply(*t.tail());
      return Term::List(std::move(items), std::move(tail));
    }
    case Term::Kind::kCompound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const Term& arg : t.args()) args.push_back(Apply(arg));
      return Term::Compound(t.symbol(), std::move(args));
    }
    default:
      return t;
  }
}

namespace {

// Splits a nonempty list into its first item and the remaining list.
std::pair<Term, Term> HeadTail(const Term& list) {
  auto items = list.items();
  std::vector<Term> rest(items.begin() + 1, items.end());
  std::optional<Term> tail;
  if (list.tail() != nullptr) tail = *list.tail();
  return {items[0], Term::List(std::move(rest), std::move(tail))};
}

}  // namespace

std::optional<Bindings> Unify(const Term& a, const Term& b,
                              const Bindings& in) {
  Bindings out = in;
  std::vector<std::pair<Term, Term>> stack{{a, b}};
  while (!stack.empty()) {
    auto [x0, y0] = stack.back();
    stack.pop_back();
    Term x = out.Dereference(x0);
    Term y = out.Dereference(y0);
    if (x.is_anonymous() || y.is_anonymous()) continue;
    if (x.is_variable() && y.is_variable() && x.var_name() == y.var_name()) {
      continue;
    }
    if (x.is_variable()) {
      out.Bind(x.var_name(), y);
      continue;
    }
    if (y.is_variable()) {
      out.Bind(y.var_name(), x);
      continue;
    }
    if (x.kind() != y.kind()) return std::nullopt;
    switch (x.kind()) {
      case Term::Kind::kAtom:
      case Term::Kind::kInteger:
      case Term::Kind::kReal:
        if (!(x == y)) return std::nullopt;
        break;
      case Term::Kind::kList: {
        if (x.is_empty_list() || y.is_empty_list()) {
          if (!(x.is_empty_list() && y.is_empty_list())) return std::nullopt;
          break;
        }
        auto [xh, xt] = HeadTail(x);
        auto [yh, yt] = HeadTail(y);
        stack.emplace_back(xt, yt);
        stack.emplace_back(xh, yh);
        break;
      }
      case Term::Kind::kCompound:
        if (x.symbol() != y.symbol() || x.arity() != y.arity()) {
          return std::nullopt;
        }
        for (std::size_t i = x.arity(); i-- > 0;) {
          stack.emplace_back(x.args()[i], y.args()[i]);
        }
        break;
      case Term::Kind::kVariable:
        break;
    }
  }
  return out;
}

}  // namespace sidl
