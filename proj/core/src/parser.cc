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

#include "sidl/parser.h"

#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <utility>

namespace sidl {

std::string SourceLocation::ToString() const {
  if (line == 0) return "?";
  return std::to_string(line) + ":" + std::to_string(column);
}

SyntaxError::SyntaxError(const std::string& message, SourceLocation location,
                         std::string token)
    : Error(location.ToString() + ": " + message +
            (token.empty() ? "" : " near '" + token + "'")),
      location_(location),
      token_(std::move(token)) {}

DefinitionError::DefinitionError(const std::string& message,
                                 SourceLocation location)
    : Error(location.line > 0 ? location.ToString() + ": " + message
                              : message),
      location_(location) {}

namespace {

enum class TokenType {
  kName,        // plain atom
  kQuoted,      // quoted atom
  kVariable,
  kInteger,
  kReal,
  kPunct,       // ( ) [ ] | ,
  kSymbol,      // run of symbol characters
  kEnd,         // clause terminator
  kEof,
};

struct Token {
  TokenType type = TokenType::kEof;
  std::string text;
  SourceLocation location;
  // True when the token directly follows the previous one with no layout in
  // between; distinguishes f(x) from f (x) and -1 from - 1.
  bool adjacent = false;
};

bool IsSymbolChar(char c) {
  switch (c) {
    case '+': case '-': case '*': case '/': case '\\': case '^': case '<':
    case '>': case '=': case '~': case ':': case '.': case '?': case '@':
    case '#': case '&': case '$':
      return true;
    default:
      return false;
  }
}

bool IsAlnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token Next() {
    bool had_layout = SkipLayout();
    Token token;
    token.location = {line_, column_};
    token.adjacent = !had_layout && pos_ > 0;
    if (pos_ >= text_.size()) {
      token.type = TokenType::kEof;
      return token;
    }
    char c = text_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      token.type = TokenType::kName;
      token.text = TakeWhile(IsAlnum);
    } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      token.type = TokenType::kVariable;
      token.text = TakeWhile(IsAlnum);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      LexNumber(token);
    } else if (c == '\'') {
      LexQuoted(token);
    } else if (c == '(' || c == ')' || c == '[' || c == ']' || c == '|' ||
               c == ',') {
      token.type = TokenType::kPunct;
      token.text = std::string(1, c);
      Advance();
    } else if (c == '.' && IsEndAt(pos_ + 1)) {
      token.type = TokenType::kEnd;
      token.text = ".";
      Advance();
    } else if (IsSymbolChar(c)) {
      token.type = TokenType::kSymbol;
      token.text = TakeWhile(IsSymbolChar);
    } else {
      throw SyntaxError("unexpected character", token.location,
                        std::string(1, c));
    }
    return token;
  }

 private:
  bool IsEndAt(std::size_t p) const {
    return p >= text_.size() || std::isspace(static_cast<unsigned char>(text_[p])) ||
           text_[p] == '%';
  }

  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool SkipLayout() {
    bool skipped = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
        skipped = true;
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') Advance();
        skipped = true;
      } else {
        break;
      }
    }
    return skipped;
  }

  template <typename Pred>
  std::string TakeWhile(Pred pred) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) {
      // A "." that ends the clause is not part of a symbol run.
      if (text_[pos_] == '.' && pos_ > start && IsEndAt(pos_ + 1)) break;
      Advance();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void LexNumber(Token& token) {
    std::size_t start = pos_;
    auto digits = [this] {
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        Advance();
      }
    };
    digits();
    token.type = TokenType::kInteger;
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      token.type = TokenType::kReal;
      Advance();
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
        ++look;
      }
      if (look < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[look]))) {
        token.type = TokenType::kReal;
        while (pos_ < look) Advance();
        digits();
      }
    }
    token.text = std::string(text_.substr(start, pos_ - start));
  }

  void LexQuoted(Token& token) {
    SourceLocation start{line_, column_};
    Advance();  // opening quote
    std::string value;
    while (true) {
      if (pos_ >= text_.size()) {
        throw SyntaxError("unterminated quoted atom", start, "'");
      }
      char c = text_[pos_];
      if (c == '\'') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
          value += '\'';
          Advance();
          Advance();
          continue;
        }
        Advance();
        break;
      }
      if (c == '\\' && pos_ + 1 < text_.size()) {
        char e = text_[pos_ + 1];
        value += e == 'n' ? '\n' : (e == 't' ? '\t' : e);
        Advance();
        Advance();
        continue;
      }
      value += c;
      Advance();
    }
    token.type = TokenType::kQuoted;
    token.text = std::move(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct Infix {
  int precedence;
  int left_max;
  int right_max;
};

std::optional<Infix> LookupInfix(const Token& token) {
  auto make = [](int p, char type) {
    switch (type) {
      case 'l':  // yfx
        return Infix{p, p, p - 1};
      case 'r':  // xfy
        return Infix{p, p - 1, p};
      default:  // xfx
        return Infix{p, p - 1, p - 1};
    }
  };
  const std::string& t = token.text;
  if (token.type == TokenType::kPunct) {
    if (t == ",") return make(1000, 'r');
    return std::nullopt;
  }
  if (token.type == TokenType::kName) {
    if (t == "is") return make(700, 'x');
    return std::nullopt;
  }
  if (token.type != TokenType::kSymbol) return std::nullopt;
  if (t == ":-") return make(1200, 'x');
  if (t == "=" || t == "<" || t == ">" || t == ">=" || t == "=<") {
    return make(700, 'x');
  }
  if (t == "+" || t == "-") return make(500, 'l');
  if (t == "*" || t == "/") return make(400, 'l');
  if (t == "^") return make(200, 'r');
  return std::nullopt;
}

constexpr int kArgPrecedence = 999;
constexpr int kUnaryMinusPrecedence = 100;

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { Shift(); }

  bool AtEof() const { return current_.type == TokenType::kEof; }

  // Parses one clause terminated by ".". Returns the raw term and its start.
  std::pair<Term, SourceLocation> ReadClauseTerm() {
    SourceLocation start = current_.location;
    Term t = Parse(1200).first;
    if (current_.type == TokenType::kEof) {
      throw SyntaxError("unterminated clause (missing '.')", current_.location,
                        "");
    }
    if (current_.type != TokenType::kEnd) {
      Unexpected();
    }
    Shift();
    return {std::move(t), start};
  }

  Term ReadSingleTerm() {
    Term t = Parse(1200).first;
    if (current_.type == TokenType::kEnd) Shift();
    if (current_.type != TokenType::kEof) Unexpected();
    return t;
  }

 private:
  void Shift() { current_ = lexer_.Next(); }

  [[noreturn]] void Unexpected() {
    if (current_.type == TokenType::kSymbol) {
      throw SyntaxError("unknown operator", current_.location, current_.text);
    }
    if (current_.type == TokenType::kEof) {
      throw SyntaxError("unexpected end of input", current_.location, "");
    }
    throw SyntaxError("unexpected token", current_.location, current_.text);
  }

  void Expect(const char* punct) {
    if (current_.type != TokenType::kPunct || current_.text != punct) {
      if (current_.type == TokenType::kEof) {
        throw SyntaxError(std::string("expected '") + punct + "'",
                          current_.location, "");
      }
      Unexpected();
    }
    Shift();
  }

  // Precedence climbing. Returns the term and the precedence of its principal
  // operator (0 for primaries).
  std::pair<Term, int> Parse(int max_precedence) {
    auto [left, left_precedence] = ParsePrimary(max_precedence);
    while (true) {
      if (current_.type == TokenType::kSymbol && !LookupInfix(current_)) {
        throw SyntaxError("unknown operator", current_.location, current_.text);
      }
      auto op = LookupInfix(current_);
      if (!op || op->precedence > max_precedence ||
          left_precedence > op->left_max) {
        break;
      }
      std::string name = current_.text;
      Shift();
      Term right = Parse(op->right_max).first;
      left = Term::Compound(name, {std::move(left), std::move(right)});
      left_precedence = op->precedence;
    }
    return {std::move(left), left_precedence};
  }

  std::pair<Term, int> ParsePrimary(int max_precedence) {
    Token token = current_;
    switch (token.type) {
      case TokenType::kInteger:
      case TokenType::kReal:
        Shift();
        return {NumberLiteral(token, false), 0};
      case TokenType::kVariable:
        Shift();
        return {Term::Variable(token.text), 0};
      case TokenType::kName:
      case TokenType::kQuoted: {
        Shift();
        if (current_.type == TokenType::kPunct && current_.text == "(" &&
            current_.adjacent) {
          Shift();
          std::vector<Term> args = ParseArguments(")");
          return {Term::Compound(token.text, std::move(args)), 0};
        }
        return {Term::Atom(token.text), 0};
      }
      case TokenType::kSymbol:
        if (token.text == "-") {
          Shift();
          if ((current_.type == TokenType::kInteger ||
               current_.type == TokenType::kReal) &&
              current_.adjacent) {
            Token number = current_;
            Shift();
            return {NumberLiteral(number, true), 0};
          }
          if (kUnaryMinusPrecedence > max_precedence) {
            throw SyntaxError("operator priority clash", token.location, "-");
          }
          Term operand = Parse(kUnaryMinusPrecedence).first;
          return {Term::Compound("-", {std::move(operand)}),
                  kUnaryMinusPrecedence};
        }
        throw SyntaxError("unknown operator", token.location, token.text);
      case TokenType::kPunct:
        if (token.text == "(") {
          Shift();
          Term inner = Parse(1200).first;
          Expect(")");
          return {std::move(inner), 0};
        }
        if (token.text == "[") {
          Shift();
          return {ParseList(), 0};
        }
        Unexpected();
      case TokenType::kEnd:
        throw SyntaxError("unexpected end of clause", token.location, ".");
      case TokenType::kEof:
        throw SyntaxError("unterminated clause (missing '.')", token.location,
                          "");
    }
    Unexpected();
  }

  std::vector<Term> ParseArguments(const char* close) {
    std::vector<Term> args;
    args.push_back(Parse(kArgPrecedence).first);
    while (current_.type == TokenType::kPunct && current_.text == ",") {
      Shift();
      args.push_back(Parse(kArgPrecedence).first);
    }
    Expect(close);
    return args;
  }

  Term ParseList() {
    if (current_.type == TokenType::kPunct && current_.text == "]") {
      Shift();
      return Term();
    }
    std::vector<Term> items;
    items.push_back(Parse(kArgPrecedence).first);
    while (current_.type == TokenType::kPunct && current_.text == ",") {
      Shift();
      items.push_back(Parse(kArgPrecedence).first);
    }
    std::optional<Term> tail;
    if (current_.type == TokenType::kPunct && current_.text == "|") {
      Shift();
      tail = Parse(kArgPrecedence).first;
    }
    Expect("]");
    return Term::List(std::move(items), std::move(tail));
  }

  Term NumberLiteral(const Token& token, bool negative) {
    std::string text = negative ? "-" + token.text : token.text;
    if (token.type == TokenType::kInteger) {
      std::int64_t value = 0;
      auto result =
          std::from_chars(text.data(), text.data() + text.size(), value);
      if (result.ec != std::errc()) {
        throw SyntaxError("integer out of range", token.location, text);
      }
      return Term::Integer(value);
    }
    double value = 0.0;
    auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc()) {
      throw SyntaxError("malformed real", token.location, text);
    }
    return Term::Real(value);
  }

  Lexer lexer_;
  Token current_;
};

void FlattenConjunction(const Term& t, std::vector<Term>& out) {
  if (t.is_compound() && t.symbol() == symbols::kComma && t.arity() == 2) {
    FlattenConjunction(t.args()[0], out);
    FlattenConjunction(t.args()[1], out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

std::vector<Clause> ParseProgram(std::string_view source) {
  Parser parser(source);
  std::vector<Clause> clauses;
  while (!parser.AtEof()) {
    auto [term, location] = parser.ReadClauseTerm();
    Clause clause;
    clause.location = location;
    if (term.is_compound() && term.name() == ":-" && term.arity() == 2) {
      clause.head = term.args()[0];
      FlattenConjunction(term.args()[1], clause.body);
    } else {
      clause.head = term;
    }
    if (!clause.head.is_callable() || clause.head.symbol() == symbols::kComma ||
        clause.head.name() == ":-") {
      throw SyntaxError("clause head must be an atom or compound", location,
                        Format(clause.head));
    }
    for (const Term& goal : clause.body) {
      if (!goal.is_callable()) {
        throw SyntaxError("body goal must be an atom or compound", location,
                          Format(goal));
      }
    }
    clauses.push_back(std::move(clause));
  }
  return clauses;
}

Term ParseTerm(std::string_view text) {
  Parser parser(text);
  if (parser.AtEof()) {
    throw SyntaxError("empty term", SourceLocation{1, 1}, "");
  }
  return parser.ReadSingleTerm();
}

}  // namespace sidl
