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

#include "sidl/server/session_server.h"

#include <atomic>
#include <chrono>
#include <deque>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "sidl/replay.h"

namespace sidl::server {
namespace {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

json TermsJson(const std::vector<Term>& terms) {
  json out = json::array();
  for (const Term& t : terms) out.push_back(Format(t));
  return out;
}

json EventJson(const EngineEvent& e) {
  json out;
  switch (e.type) {
    case EngineEvent::Type::kRules:
      out["type"] = "rules";
      out["source"] = e.text;
      break;
    case EngineEvent::Type::kInit:
      out["type"] = "init";
      out["facts"] = TermsJson(e.facts);
      out["accounts"] = AccountsToJson(e.accounts);
      break;
    case EngineEvent::Type::kChronon:
      out["type"] = "chronon";
      out["number"] = e.number;
      out["deadline_ms"] = e.deadline_ms;
      break;
    case EngineEvent::Type::kAck:
      out["type"] = "ack";
      out["switch"] = Format(e.switch_id);
      break;
    case EngineEvent::Type::kReject:
      out["type"] = "reject";
      out["switch"] = Format(e.switch_id);
      out["reason"] = e.text;
      break;
    case EngineEvent::Type::kDelta:
      out["type"] = "delta";
      out["created"] = TermsJson(e.created);
      out["deleted"] = TermsJson(e.deleted);
      break;
    case EngineEvent::Type::kAccounts:
      out["type"] = "accounts";
      out["accounts"] = AccountsToJson(e.accounts);
      break;
    case EngineEvent::Type::kEnd:
      out["type"] = "end";
      out["accounts"] = AccountsToJson(e.accounts);
      break;
  }
  return out;
}

json Reject(std::string_view reason, std::string_view switch_text = "") {
  json out;
  out["type"] = "reject";
  out["switch"] = std::string(switch_text);
  out["reason"] = std::string(reason);
  return out;
}

class Session;
struct ServerCore;

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, std::shared_ptr<ServerCore> core)
      : ws_(std::move(socket)), core_(std::move(core)) {}

  void Accept(http::request<http::string_body> request);
  void Send(std::string text) {
    queue_.push_back(std::move(text));
    if (queue_.size() == 1) DoWrite();
  }
  void Send(const json& message) { Send(message.dump()); }

  const std::string& path_session() const { return path_session_; }
  std::weak_ptr<Session> session;
  std::optional<std::size_t> role;  // player index; nullopt for spectators
  bool joined = false;

 private:
  void DoRead();
  void DoWrite() {
    ws_.text(true);
    ws_.async_write(
        net::buffer(queue_.front()),
        [self = shared_from_this()](beast::error_code ec, std::size_t) {
          if (ec) {
            self->queue_.clear();
            return;
          }
          self->queue_.pop_front();
          if (!self->queue_.empty()) self->DoWrite();
        });
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  std::shared_ptr<ServerCore> core_;
  std::string path_session_;
};

class Session : public std::enable_shared_from_this<Session> {
 public:
  enum class Lifecycle { kLobby, kRunning, kEnded };

  Session(net::io_context& io, std::string id, DefinitionPtr def,
          ChrononConfig config, std::vector<bool> default_roles,
          std::string replay_dir)
      : id_(std::move(id)),
        def_(def),
        manager_(def, config),
        timer_(io),
        bound_(def->players().size()),
        default_roles_(std::move(default_roles)),
        replay_dir_(std::move(replay_dir)) {}

  const std::string& id() const { return id_; }

  void MaybeStart() {
    if (lifecycle_ != Lifecycle::kLobby) return;
    for (std::size_t i = 0; i < bound_.size(); ++i) {
      if (!default_roles_[i] && !bound_[i].lock()) return;
    }
    lifecycle_ = Lifecycle::kRunning;
    try {
      Outbox out = manager_.Begin();
      Dispatch(out);
      AfterOpen();
    } catch (const Error& e) {
      Abort(e.what());
    }
  }

  void Join(const std::shared_ptr<Connection>& conn, const json& message) {
    std::string role_text = message.value("role", std::string());
    std::optional<std::size_t> role;
    if (role_text != "spectator") {
      try {
        role = def_->PlayerIndex(ParseTerm(role_text));
      } catch (const Error&) {
      }
      if (!role) {
        conn->Send(Reject("role unknown"));
        return;
      }
      if (default_roles_[*role]) {
        conn->Send(Reject("role is played by defaults"));
        return;
      }
      if (auto existing = bound_[*role].lock(); existing && existing != conn) {
        conn->Send(Reject("role already bound"));
        return;
      }
      bound_[*role] = conn;
    } else {
      spectators_.push_back(conn);
    }
    conn->session = shared_from_this();
    conn->role = role;
    conn->joined = true;
    json joined;
    joined["type"] = "joined";
    joined["role"] = role ? Format(def_->players()[*role]) : "spectator";
    joined["session"] = id_;
    conn->Send(joined);

    if (lifecycle_ == Lifecycle::kLobby) {
      MaybeStart();
      return;
    }
    for (const EngineEvent& e : manager_.Snapshot(role)) {
      conn->Send(EventJson(e));
    }
    if (lifecycle_ == Lifecycle::kRunning) {
      json chronon;
      chronon["type"] = "chronon";
      chronon["number"] = manager_.current_chronon();
      chronon["deadline_ms"] = RemainingMs();
      conn->Send(chronon);
    } else {
      EngineEvent end;
      end.type = EngineEvent::Type::kEnd;
      end.accounts = manager_.state().accounts;
      conn->Send(EventJson(end));
    }
  }

  void Act(const std::shared_ptr<Connection>& conn, const json& message) {
    std::string switch_text = message.value("switch", std::string());
    if (!conn->role) {
      conn->Send(Reject("spectators cannot act", switch_text));
      return;
    }
    if (lifecycle_ == Lifecycle::kLobby) {
      conn->Send(Reject("game not started", switch_text));
      return;
    }
    if (lifecycle_ == Lifecycle::kEnded) {
      conn->Send(Reject(RejectReasonText(RejectReason::kGameEnded), switch_text));
      return;
    }
    if (message.contains("chronon") && message["chronon"].is_number_integer() &&
        message["chronon"].get<std::int64_t>() != manager_.current_chronon()) {
      conn->Send(
          Reject(RejectReasonText(RejectReason::kChrononClosed), switch_text));
      return;
    }
    Term switch_id;
    Term action;
    try {
      switch_id = ParseTerm(switch_text);
      action = ParseTerm(message.value("action", std::string()));
    } catch (const Error&) {
      conn->Send(Reject(RejectReasonText(RejectReason::kMalformed), switch_text));
      return;
    }
    ActionCheck check;
    try {
      check = manager_.Submit(def_->players()[*conn->role], switch_id, action);
    } catch (const Error& e) {
      conn->Send(Reject(e.what(), switch_text));
      return;
    }
    if (check.accepted()) {
      json ack;
      ack["type"] = "ack";
      ack["switch"] = Format(switch_id);
      ack["action"] = Format(action);
      ack["chronon"] = manager_.current_chronon();
      conn->Send(ack);
      CheckAutoClose();
    } else {
      conn->Send(Reject(RejectReasonText(check.reason), Format(switch_id)));
    }
  }

  void Disconnect(const std::shared_ptr<Connection>& conn) {
    if (conn->role) {
      if (bound_[*conn->role].lock() == conn) bound_[*conn->role].reset();
    }
    std::erase_if(spectators_, [&](const std::weak_ptr<Connection>& w) {
      auto s = w.lock();
      return !s || s == conn;
    });
    CheckAutoClose();
  }

  json Status() const {
    json out;
    out["id"] = id_;
    out["game"] = def_->name();
    out["state"] = lifecycle_ == Lifecycle::kLobby     ? "lobby"
                   : lifecycle_ == Lifecycle::kRunning ? "running"
                                                       : "ended";
    out["chronon"] = manager_.started() ? manager_.state().chronon : 0;
    json roles = json::array();
    for (std::size_t i = 0; i < bound_.size(); ++i) {
      json r;
      r["role"] = Format(def_->players()[i]);
      r["bound"] = bound_[i].lock() != nullptr;
      r["defaults"] = static_cast<bool>(default_roles_[i]);
      roles.push_back(std::move(r));
    }
    out["roles"] = std::move(roles);
    out["accounts"] = manager_.started()
                          ? AccountsToJson(manager_.state().accounts)
                          : json::object();
    if (!error_.empty()) out["error"] = error_;
    return out;
  }

  std::string Replay() const {
    return ReplayLog(*def_, manager_.config(), manager_.records());
  }

 private:
  std::int64_t RemainingMs() const {
    if (manager_.config().duration_ms == 0) return 0;
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                    deadline_ - Clock::now())
                    .count();
    return std::max<std::int64_t>(0, left);
  }

  void Dispatch(const Outbox& out) {
    for (std::size_t i = 0; i < out.players.size(); ++i) {
      auto conn = bound_[i].lock();
      if (!conn) continue;
      for (const EngineEvent& e : out.players[i]) conn->Send(EventJson(e));
    }
    for (const auto& weak : spectators_) {
      auto conn = weak.lock();
      if (!conn) continue;
      for (const EngineEvent& e : out.spectators) conn->Send(EventJson(e));
    }
  }

  void AfterOpen() {
    ++generation_;
    if (manager_.finished()) {
      Finish();
      return;
    }
    const auto duration = manager_.config().duration_ms;
    if (duration > 0) {
      deadline_ = Clock::now() + std::chrono::milliseconds(duration);
      timer_.expires_at(deadline_);
      timer_.async_wait([self = shared_from_this(),
                         generation = generation_](beast::error_code ec) {
        if (!ec && generation == self->generation_) self->Close();
      });
    } else {
      CheckAutoClose();
    }
  }

  void CheckAutoClose() {
    if (lifecycle_ != Lifecycle::kRunning) return;
    if (manager_.config().duration_ms != 0) return;
    std::vector<std::size_t> connected;
    for (std::size_t i = 0; i < bound_.size(); ++i) {
      if (bound_[i].lock()) connected.push_back(i);
    }
    if (!manager_.AllSubmitted(connected)) return;
    net::post(timer_.get_executor(), [self = shared_from_this(),
                                      generation = generation_] {
      if (generation == self->generation_) self->Close();
    });
  }

  void Close() {
    if (lifecycle_ != Lifecycle::kRunning) return;
    try {
      auto [record, out] = manager_.CloseChronon();
      Dispatch(out);
      AfterOpen();
    } catch (const Error& e) {
      Abort(e.what());
    }
  }

  void Abort(const std::string& message) {
    error_ = message;
    json error;
    error["type"] = "error";
    error["message"] = message;
    for (const auto& weak : bound_) {
      if (auto conn = weak.lock()) conn->Send(error);
    }
    for (const auto& weak : spectators_) {
      if (auto conn = weak.lock()) conn->Send(error);
    }
    EngineEvent end;
    end.type = EngineEvent::Type::kEnd;
    end.accounts = manager_.started() ? manager_.state().accounts : Accounts{};
    Outbox out;
    out.players.assign(bound_.size(), {end});
    out.spectators = {end};
    Dispatch(out);
    Finish();
  }

  void Finish() {
    lifecycle_ = Lifecycle::kEnded;
    ++generation_;
    timer_.cancel();
    if (!replay_dir_.empty()) {
      std::ofstream file(replay_dir_ + "/" + id_ + ".jsonl", std::ios::binary);
      file << Replay();
    }
  }

  std::string id_;
  DefinitionPtr def_;
  GameManager manager_;
  net::steady_timer timer_;
  std::vector<std::weak_ptr<Connection>> bound_;
  std::vector<bool> default_roles_;
  std::vector<std::weak_ptr<Connection>> spectators_;
  std::string replay_dir_;
  Lifecycle lifecycle_ = Lifecycle::kLobby;
  Clock::time_point deadline_;
  std::uint64_t generation_ = 0;
  std::string error_;
};

// State shared by the listener, HTTP handlers and WebSocket connections.
struct ServerCore : std::enable_shared_from_this<ServerCore> {
  explicit ServerCore(ServerOptions opts)
      : options(std::move(opts)), acceptor(io), id_rng(std::random_device{}()) {}

  ServerOptions options;
  net::io_context io;
  tcp::acceptor acceptor;
  std::map<std::string, std::shared_ptr<Session>> sessions;
  std::mt19937_64 id_rng;
  std::uint64_t next_id = 1;

  std::shared_ptr<Session> Find(const std::string& id) {
    auto it = sessions.find(id);
    return it == sessions.end() ? nullptr : it->second;
  }

  CreateResult Create(const SessionSpec& spec) {
    CreateResult result;
    auto [def, report] = GameDefinition::TryLoad(spec.source);
    if (!def) {
      result.error = ReportToJson(report);
      return result;
    }
    try {
      ValidateConfig(spec.config);
    } catch (const std::exception& e) {
      result.error = json::array({{{"severity", "error"}, {"message", e.what()}}});
      return result;
    }
    std::vector<bool> defaults(def->players().size(), false);
    for (const std::string& role : spec.default_roles) {
      std::optional<std::size_t> index;
      try {
        index = def->PlayerIndex(ParseTerm(role));
      } catch (const Error&) {
      }
      if (!index) {
        result.error = json::array(
            {{{"severity", "error"}, {"message", "unknown role " + role}}});
        return result;
      }
      defaults[*index] = true;
    }
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "s%llu-%08llx",
                  static_cast<unsigned long long>(next_id++),
                  static_cast<unsigned long long>(id_rng() & 0xffffffffull));
    result.id = buffer;
    for (const Term& p : def->players()) result.roles.push_back(Format(p));
    auto session = std::make_shared<Session>(io, result.id, def, spec.config,
                                             std::move(defaults),
                                             options.replay_dir);
    sessions.emplace(result.id, session);
    net::post(io, [session] { session->MaybeStart(); });
    return result;
  }

  http::response<http::string_body> HandleHttp(
      const http::request<http::string_body>& req) {
    auto respond = [&](http::status status, std::string body,
                       std::string_view type = "application/json") {
      http::response<http::string_body> res{status, req.version()};
      res.set(http::field::content_type, std::string(type));
      res.set(http::field::access_control_allow_origin, "*");
      res.keep_alive(req.keep_alive());
      res.body() = std::move(body);
      res.prepare_payload();
      return res;
    };
    auto error = [&](http::status status, const std::string& message) {
      return respond(status, json{{"error", message}}.dump());
    };
    std::string target(req.target());
    if (req.method() == http::verb::options) {
      auto res = respond(http::status::no_content, "");
      res.set(http::field::access_control_allow_methods, "GET, POST");
      res.set(http::field::access_control_allow_headers, "Content-Type");
      return res;
    }
    if (target == "/sessions" && req.method() == http::verb::post) {
      SessionSpec spec;
      spec.config = options.default_config;
      try {
        json body = json::parse(req.body());
        spec.source = body.at("source").get<std::string>();
        if (body.contains("duration_ms")) {
          spec.config.duration_ms = body["duration_ms"].get<std::int64_t>();
        }
        if (body.contains("max_chronons") && !body["max_chronons"].is_null()) {
          spec.config.max_chronons = body["max_chronons"].get<std::int64_t>();
        }
        if (body.contains("seed")) {
          spec.config.seed = body["seed"].get<std::uint64_t>();
        }
        if (body.contains("default_roles")) {
          spec.default_roles =
              body["default_roles"].get<std::vector<std::string>>();
        }
      } catch (const std::exception& e) {
        return error(http::status::bad_request,
                     std::string("malformed request: ") + e.what());
      }
      CreateResult created = Create(spec);
      if (created.id.empty()) {
        json body;
        body["error"] = "invalid definition";
        body["diagnostics"] = created.error;
        return respond(http::status::unprocessable_entity, body.dump());
      }
      json body;
      body["id"] = created.id;
      body["roles"] = created.roles;
      return respond(http::status::created, body.dump());
    }
    const std::string prefix = "/sessions/";
    if (req.method() == http::verb::get && target.rfind(prefix, 0) == 0) {
      std::string rest = target.substr(prefix.size());
      bool replay = false;
      if (auto slash = rest.find('/'); slash != std::string::npos) {
        if (rest.substr(slash) != "/replay") {
          return error(http::status::not_found, "not found");
        }
        replay = true;
        rest = rest.substr(0, slash);
      }
      auto session = Find(rest);
      if (!session) return error(http::status::not_found, "unknown session");
      if (replay) {
        return respond(http::status::ok, session->Replay(),
                       "application/x-ndjson");
      }
      return respond(http::status::ok, session->Status().dump());
    }
    return error(http::status::not_found, "not found");
  }

  void OnMessage(const std::shared_ptr<Connection>& conn,
                 const std::string& text) {
    json message;
    try {
      message = json::parse(text);
    } catch (const std::exception&) {
      conn->Send(Reject("malformed message"));
      return;
    }
    if (!message.is_object() || !message.contains("type") ||
        !message["type"].is_string()) {
      conn->Send(Reject("malformed message"));
      return;
    }
    const std::string type = message["type"].get<std::string>();
    if (type == "join") {
      if (conn->joined) {
        conn->Send(Reject("already joined"));
        return;
      }
      std::string id = message.value("session", conn->path_session());
      if (!conn->path_session().empty() && id != conn->path_session()) {
        conn->Send(Reject("session mismatch"));
        return;
      }
      auto session = Find(id);
      if (!session) {
        conn->Send(Reject("unknown session"));
        return;
      }
      session->Join(conn, message);
      return;
    }
    if (type == "act") {
      auto session = conn->session.lock();
      if (!session) {
        conn->Send(Reject("not joined", message.value("switch", std::string())));
        return;
      }
      session->Act(conn, message);
      return;
    }
    conn->Send(Reject("unknown message type"));
  }

  void OnClose(const std::shared_ptr<Connection>& conn) {
    if (auto session = conn->session.lock()) session->Disconnect(conn);
  }
};

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket socket, std::shared_ptr<ServerCore> core)
      : stream_(std::move(socket)), core_(std::move(core)) {}

  void Run() { DoRead(); }

 private:
  void DoRead() {
    request_ = {};
    stream_.expires_after(std::chrono::seconds(60));
    http::async_read(stream_, buffer_, request_,
                     [self = shared_from_this()](beast::error_code ec,
                                                 std::size_t) {
                       self->OnRead(ec);
                     });
  }

  void OnRead(beast::error_code ec) {
    if (ec) {
      beast::error_code ignored;
      stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
      return;
    }
    if (websocket::is_upgrade(request_)) {
      auto conn = std::make_shared<Connection>(stream_.release_socket(), core_);
      conn->Accept(std::move(request_));
      return;
    }
    response_ = std::make_shared<http::response<http::string_body>>(
        core_->HandleHttp(request_));
    http::async_write(stream_, *response_,
                      [self = shared_from_this()](beast::error_code ec,
                                                  std::size_t) {
                        if (ec) return;
                        if (!self->response_->keep_alive()) {
                          beast::error_code ignored;
                          self->stream_.socket().shutdown(
                              tcp::socket::shutdown_send, ignored);
                          return;
                        }
                        self->DoRead();
                      });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> request_;
  std::shared_ptr<http::response<http::string_body>> response_;
  std::shared_ptr<ServerCore> core_;
};

void DoAccept(const std::shared_ptr<ServerCore>& core) {
  core->acceptor.async_accept(
      net::make_strand(core->io),
      [core](beast::error_code ec, tcp::socket socket) {
        if (ec == net::error::operation_aborted) return;
        if (!ec) {
          std::make_shared<HttpConnection>(std::move(socket), core)->Run();
        }
        if (core->acceptor.is_open()) DoAccept(core);
      });
}

void Connection::Accept(http::request<http::string_body> request) {
  std::string target(request.target());
  const std::string prefix = "/session/";
  if (target.rfind(prefix, 0) == 0) path_session_ = target.substr(prefix.size());
  beast::get_lowest_layer(ws_).expires_never();
  ws_.set_option(
      websocket::stream_base::timeout::suggested(beast::role_type::server));
  ws_.async_accept(request, [self = shared_from_this()](beast::error_code ec) {
    if (!ec) self->DoRead();
  });
}

void Connection::DoRead() {
  ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec,
                                                       std::size_t) {
    if (ec) {
      self->core_->OnClose(self);
      return;
    }
    std::string text = beast::buffers_to_string(self->buffer_.data());
    self->buffer_.consume(self->buffer_.size());
    self->core_->OnMessage(self, text);
    self->DoRead();
  });
}

}  // namespace

struct SessionServer::Impl {
  std::shared_ptr<ServerCore> core;
  std::thread thread;
  bool listening = false;
  std::atomic<bool> serving{false};
};

SessionServer::SessionServer(ServerOptions options)
    : impl_(std::make_shared<Impl>()) {
  impl_->core = std::make_shared<ServerCore>(std::move(options));
}

SessionServer::~SessionServer() { Stop(); }

std::uint16_t SessionServer::Listen() {
  auto& core = *impl_->core;
  if (impl_->listening) return port();
  tcp::endpoint endpoint(net::ip::make_address(core.options.address),
                         core.options.port);
  core.acceptor.open(endpoint.protocol());
  core.acceptor.set_option(net::socket_base::reuse_address(true));
  core.acceptor.bind(endpoint);
  core.acceptor.listen(net::socket_base::max_listen_connections);
  impl_->listening = true;
  DoAccept(impl_->core);
  return port();
}

std::uint16_t SessionServer::port() const {
  return impl_->core->acceptor.local_endpoint().port();
}

void SessionServer::Start() {
  Listen();
  impl_->serving = true;
  impl_->thread = std::thread([core = impl_->core] { core->io.run(); });
}

void SessionServer::Run() {
  Listen();
  impl_->serving = true;
  impl_->core->io.run();
}

void SessionServer::Stop() {
  if (!impl_) return;
  auto core = impl_->core;
  net::post(core->io, [core] {
    beast::error_code ignored;
    core->acceptor.close(ignored);
  });
  core->io.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
  impl_->serving = false;
}

CreateResult SessionServer::CreateSession(const SessionSpec& spec) {
  auto core = impl_->core;
  if (!impl_->thread.joinable()) return core->Create(spec);
  std::promise<CreateResult> promise;
  auto future = promise.get_future();
  net::post(core->io, [&] { promise.set_value(core->Create(spec)); });
  return future.get();
}

}  // namespace sidl::server
