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

#ifndef SIDL_TOOLS_CLI_H_
#define SIDL_TOOLS_CLI_H_

#include <iosfwd>

namespace sidl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `sidl` command. Reports go to `out`, diagnostics about
// the invocation itself to `err`.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace sidl::cli

#endif  // SIDL_TOOLS_CLI_H_
