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

#ifndef SIDL_SERVER_SESSION_SERVER_H_
#define SIDL_SERVER_SESSION_SERVER_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sidl/game_manager.h"

namespace sidl::server {

struct ServerOptions {
  std::string address = "127.0.0.1";
  std::uint16_t port = 0;  // 0 picks a free port
  // Defaults for sessions created without explicit settings.
  ChrononConfig default_config{3000, std::nullopt, 0};
  // When non-empty, each finished session's replay is written to
  // <replay_dir>/<session id>.jsonl.
  std::string replay_dir;
};

struct SessionSpec {
  std::string source;
  ChrononConfig config;
  // Roles played by their default actions; the game starts once every
  // other role has joined.
  std::vector<std::string> default_roles;
};

struct CreateResult {
  std::string id;  // empty on failure
  std::vector<std::string> roles;
  nlohmann::ordered_json error;  // diagnostics when id is empty
};

// Live sessions over HTTP and WebSocket.
//
//   POST /sessions              {"source", "duration_ms", "max_chronons",
//                                "seed", "default_roles"} -> {"id", ...}
//   GET  /sessions/{id}         status
//   GET  /sessions/{id}/replay  JSONL replay log
//   WS   /session/{id}          one JSON message per text frame
//
// All session logic runs on one I/O thread.
class SessionServer {
 public:
  explicit SessionServer(ServerOptions options);
  ~SessionServer();
  SessionServer(const SessionServer&) = delete;
  SessionServer& operator=(const SessionServer&) = delete;

  // Binds the listening socket; returns the bound port.
  std::uint16_t Listen();
  // Serves on a background thread.
  void Start();
  // Serves on the calling thread until Stop.
  void Run();
  void Stop();

  std::uint16_t port() const;
  CreateResult CreateSession(const SessionSpec& spec);

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace sidl::server

#endif  // SIDL_SERVER_SESSION_SERVER_H_
