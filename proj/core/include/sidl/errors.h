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

#ifndef SIDL_ERRORS_H_
#define SIDL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sidl {

struct SourceLocation {
  int line = 0;    // 1-based; 0 means unknown.
  int column = 0;  // 1-based.

  std::string ToString() const;
  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed definition text.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourceLocation location,
              std::string token);

  const SourceLocation& location() const { return location_; }
  const std::string& token() const { return token_; }

 private:
  SourceLocation location_;
  std::string token_;
};

// The definition is well formed but evaluates to something the engine
// cannot accept: non-ground words, bad distributions, arithmetic on
// unbound variables and so on.
class DefinitionError : public Error {
 public:
  explicit DefinitionError(const std::string& message,
                           SourceLocation location = {});

  const SourceLocation& location() const { return location_; }

 private:
  SourceLocation location_;
};

// The step budget of a single top-level solve call ran out.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace sidl

#endif  // SIDL_ERRORS_H_
