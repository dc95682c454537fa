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

#ifndef SIDL_TESTS_WS_CLIENT_H_
#define SIDL_TESTS_WS_CLIENT_H_

#include <chrono>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <nlohmann/json.hpp>

namespace sidl::testing {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using json = nlohmann::ordered_json;

struct HttpReply {
  unsigned status;
  std::string body;
  json Json() const { return json::parse(body); }
};

inline HttpReply Request(std::uint16_t port, http::verb verb, const std::string& target,
                  const std::string& body = "") {
  net::io_context io;
  beast::tcp_stream stream(io);
  stream.connect(tcp::endpoint(net::ip::make_address("127.0.0.1"), port));
  http::request<http::string_body> req{verb, target, 11};
  req.set(http::field::host, "127.0.0.1");
  req.set(http::field::content_type, "application/json");
  req.body() = body;
  req.prepare_payload();
  http::write(stream, req);
  beast::flat_buffer buffer;
  http::response<http::string_body> res;
  http::read(stream, buffer, res);
  beast::error_code ignored;
  stream.socket().shutdown(tcp::socket::shutdown_both, ignored);
  return {res.result_int(), res.body()};
}

// A WebSocket client that keeps one read outstanding and queues incoming
// messages. Reads give up after a timeout without disturbing the stream.
class Client {
 public:
  Client(std::uint16_t port, const std::string& session) : ws_(io_) {
    auto& sock = beast::get_lowest_layer(ws_);
    sock.connect(tcp::endpoint(net::ip::make_address("127.0.0.1"), port));
    ws_.handshake("127.0.0.1", "/session/" + session);
    ws_.text(true);
    Arm();
  }

  ~Client() { Close(); }

  void Send(const json& message) { Send(message.dump()); }
  void Send(const std::string& text) {
    ws_.write(net::buffer(text));
  }

  // Next queued message, waiting up to `timeout` for one to arrive.
  std::optional<json> Read(std::chrono::milliseconds timeout =
                               std::chrono::milliseconds(5000)) {
    Pump(timeout, [&] { return !queue_.empty(); });
    if (queue_.empty()) return std::nullopt;
    json m = std::move(queue_.front());
    queue_.pop_front();
    return m;
  }

  // Reads until a message of `type` arrives; every message read is kept in
  // `seen`.
  json ReadUntil(const std::string& type) {
    while (auto m = Read()) {
      seen.push_back(*m);
      if ((*m)["type"] == type) return *m;
    }
    throw std::runtime_error("no " + type + " message");
  }

  json Join(const std::string& session, const std::string& role) {
    Send(json{{"type", "join"}, {"session", session}, {"role", role}});
    return Reply({"joined", "reject", "error"});
  }

  json Act(const std::string& sw, const std::string& action,
           std::optional<std::int64_t> chronon = std::nullopt) {
    json m = {{"type", "act"}, {"switch", sw}, {"action", action}};
    if (chronon) m["chronon"] = *chronon;
    Send(m);
    return Reply({"ack", "reject", "error"});
  }

  // Takes the first queued message whose type is one of `types`, leaving
  // the others queued in order.
  json Reply(std::initializer_list<const char*> types) {
    std::size_t scanned = 0;
    auto find = [&]() -> std::optional<std::size_t> {
      for (; scanned < queue_.size(); ++scanned) {
        for (const char* t : types) {
          if (queue_[scanned]["type"] == t) return scanned;
        }
      }
      return std::nullopt;
    };
    std::optional<std::size_t> at;
    Pump(std::chrono::milliseconds(5000), [&] { return (at = find()).has_value(); });
    if (!at) return json();
    json m = std::move(queue_[*at]);
    queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(*at));
    return m;
  }

  void Close() {
    if (closed_) return;
    closed_ = true;
    beast::error_code ec;
    auto& sock = beast::get_lowest_layer(ws_).socket();
    sock.shutdown(tcp::socket::shutdown_both, ec);
    sock.close(ec);
    io_.restart();
    io_.poll();
  }

  std::vector<json> seen;

 private:
  void Arm() {
    ws_.async_read(buffer_, [this](beast::error_code ec, std::size_t) {
      if (ec) return;
      queue_.push_back(json::parse(beast::buffers_to_string(buffer_.data())));
      buffer_.consume(buffer_.size());
      Arm();
    });
  }

  template <typename Done>
  void Pump(std::chrono::milliseconds timeout, Done done) {
    auto deadline = std::chrono::steady_clock::now() + timeout;
    while (!done()) {
      auto now = std::chrono::steady_clock::now();
      if (now >= deadline || closed_) return;
      io_.restart();
      io_.run_one_for(deadline - now);
    }
  }

  net::io_context io_;
  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<json> queue_;
  bool closed_ = false;
};

}  // namespace sidl::testing

#endif  // SIDL_TESTS_WS_CLIENT_H_
