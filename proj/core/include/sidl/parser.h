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

#ifndef SIDL_PARSER_H_
#define SIDL_PARSER_H_

#include <string>
#include <string_view>
#include <vector>

#include "sidl/errors.h"
#include "sidl/term.h"

namespace sidl {

// A fact or rule. The body is the flattened comma conjunction; facts have an
// empty body.
struct Clause {
  Term head;
  std::vector<Term> body;
  SourceLocation location;
};

// Reads a definition: clauses terminated by ".", "%" line comments.
//
// Supported syntax: atoms (plain or single-quoted), integers, reals,
// variables, lists with "|" tails, compounds, parenthesized tuples, the
// infix operators is = < > >= =< + - * / ^, unary minus and negative numeric
// literals. Precedence from loosest to tightest: ":-", ",", comparisons and
// is, additive, multiplicative, "^", unary minus.
//
// Throws SyntaxError with the line/column of the offending token.
std::vector<Clause> ParseProgram(std::string_view source);

// Reads a single term, e.g. a word or action sent over the wire. A trailing
// "." is optional.
Term ParseTerm(std::string_view text);

}  // namespace sidl

#endif  // SIDL_PARSER_H_
