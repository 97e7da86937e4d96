// Copyright 2026 The scgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <boost/asio.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "scgame/bridge.hpp"
#include "scgame/trace.hpp"

namespace scgame {

namespace {

namespace asio = boost::asio;
using asio::ip::tcp;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

// One connected client. The read handler and the tick timer both run on the
// io_context thread, so the latest control is handed to the loop without
// locking.
class Connection {
 public:
  Connection(asio::io_context& io, tcp::socket socket, Session& session, const ServeOptions& opts)
      : socket_(std::move(socket)), timer_(io), session_(session), opts_(opts) {
    const double period = 1.0 / (opts.tick_hz * std::max(opts.speedup, 1e-6));
    period_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(period));
  }

  void start() {
    read();
    next_tick_ = std::chrono::steady_clock::now() + period_;
    arm();
  }

 private:
  void send(const std::vector<std::string>& lines) {
    if (closed_) return;
    std::string out;
    for (const std::string& l : lines) out += l + "\n";
    if (out.empty()) return;
    boost::system::error_code ec;
    asio::write(socket_, asio::buffer(out), ec);
    if (ec) close();
  }

  void read() {
    asio::async_read_until(socket_, buffer_, '\n',
                           [this](const boost::system::error_code& ec, std::size_t n) {
                             if (ec) {
                               close();
                               return;
                             }
                             std::string line(asio::buffers_begin(buffer_.data()),
                                              asio::buffers_begin(buffer_.data()) + n);
                             buffer_.consume(n);
                             while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) {
                               line.pop_back();
                             }
                             if (!line.empty()) send(session_.handle(line));
                             if (!closed_) read();
                           });
  }

  void arm() {
    timer_.expires_at(next_tick_);
    timer_.async_wait([this](const boost::system::error_code& ec) {
      if (ec || closed_) return;
      send(session_.tick());
      // Fixed-rate schedule; if we fell behind by more than a tick, resync.
      next_tick_ += period_;
      const auto now = std::chrono::steady_clock::now();
      if (next_tick_ + period_ < now) next_tick_ = now + period_;
      arm();
    });
  }

  void close() {
    if (closed_) return;
    closed_ = true;
    boost::system::error_code ec;
    socket_.shutdown(tcp::socket::shutdown_both, ec);
    socket_.close(ec);
    timer_.cancel();
  }

  tcp::socket socket_;
  asio::steady_timer timer_;
  asio::streambuf buffer_;
  Session& session_;
  const ServeOptions& opts_;
  std::chrono::steady_clock::duration period_{};
  std::chrono::steady_clock::time_point next_tick_{};
  bool closed_ = false;
};

void persist(const ServeOptions& opts, const std::vector<Session::Finished>& done, int& counter) {
  if (opts.record_dir.empty()) return;
  std::filesystem::create_directories(opts.record_dir);
  for (const Session::Finished& f : done) {
    const std::string stem = f.log.session_id + "-" + std::to_string(++counter);
    const std::filesystem::path dir(opts.record_dir);
    write_text(dir / (stem + ".session.ndjson"), session_log_ndjson(f.log));
    write_text(dir / (stem + ".trace.ndjson"), trace_ndjson(f.record));
  }
}

}  // namespace

void serve(const ScenarioConfig& base, const ServeOptions& opts) {
  if (opts.port < 0 || opts.port > 65535) throw ConfigError("port out of range");
  base.validate();
  asio::io_context io;
  tcp::acceptor acceptor(io);
  try {
    const tcp::endpoint ep(asio::ip::address_v4::loopback(), static_cast<unsigned short>(opts.port));
    acceptor.open(ep.protocol());
    acceptor.set_option(tcp::acceptor::reuse_address(true));
    acceptor.bind(ep);
    acceptor.listen();
  } catch (const boost::system::system_error& e) {
    throw ConfigError("cannot listen on port " + std::to_string(opts.port) + ": " + e.what());
  }
  if (opts.on_listen) opts.on_listen(acceptor.local_endpoint().port());

  int sessions = 0;
  int recorded = 0;
  while (opts.max_sessions == 0 || sessions < opts.max_sessions) {
    tcp::socket socket(io);
    boost::system::error_code ec;
    acceptor.accept(socket, ec);
    if (ec) continue;
    ++sessions;
    Session session(base, "s" + std::to_string(sessions), opts.scenarios, opts.tick_hz);
    {
      Connection conn(io, std::move(socket), session, opts);
      conn.start();
      io.run();
      io.restart();
    }
    session.disconnect();
    persist(opts, session.take_finished(), recorded);
  }
}

}  // namespace scgame
