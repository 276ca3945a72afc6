// Copyright 2026 The specguard Authors.
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

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "specguard/classifier.hpp"
#include "specguard/error.hpp"
#include "specguard/json_io.hpp"

extern char** environ;

namespace specguard {

using Clock = std::chrono::steady_clock;

// The child's stdin and stdout are both bound to one end of a socket pair so
// that writes to a dead child fail with EPIPE instead of raising SIGPIPE.
struct SubprocessClassifier::Process {
  pid_t pid = -1;
  int fd = -1;
  std::string buffer;

  ~Process() { terminate(); }

  void terminate() {
    if (fd >= 0) {
      ::close(fd);
      fd = -1;
    }
    if (pid > 0) {
      int status = 0;
      // Give a well-behaved child a moment to exit on EOF.
      for (int i = 0; i < 20; ++i) {
        if (::waitpid(pid, &status, WNOHANG) == pid) {
          pid = -1;
          return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
      }
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      pid = -1;
    }
  }
};

namespace {

std::string errno_text(int err) { return std::strerror(err); }

std::unique_ptr<SubprocessClassifier::Process> spawn_child(const std::vector<std::string>& argv) {
  int sv[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0)
    throw std::runtime_error("socketpair: " + errno_text(errno));

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, sv[1], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, sv[1], STDOUT_FILENO);

  std::vector<char*> cargv;
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  pid_t pid = -1;
  int rc = ::posix_spawnp(&pid, cargv[0], &actions, nullptr, cargv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(sv[1]);
  if (rc != 0) {
    ::close(sv[0]);
    throw std::runtime_error("cannot start '" + argv[0] + "': " + errno_text(rc));
  }
  auto p = std::make_unique<SubprocessClassifier::Process>();
  p->pid = pid;
  p->fd = sv[0];
  return p;
}

void send_all(int fd, const std::string& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error("write to model failed: " + errno_text(errno));
    }
    sent += static_cast<std::size_t>(n);
  }
}

std::string read_line(SubprocessClassifier::Process& p, Clock::time_point deadline,
                      std::chrono::milliseconds timeout) {
  for (;;) {
    if (auto nl = p.buffer.find('\n'); nl != std::string::npos) {
      std::string line = p.buffer.substr(0, nl);
      p.buffer.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0)
      throw std::runtime_error("timeout after " + std::to_string(timeout.count()) + " ms");
    pollfd pfd{p.fd, POLLIN, 0};
    int rc = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error("poll failed: " + errno_text(errno));
    }
    if (rc == 0) continue;  // re-checks the deadline
    char chunk[4096];
    ssize_t n = ::recv(p.fd, chunk, sizeof chunk, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error("read from model failed: " + errno_text(errno));
    }
    if (n == 0) throw std::runtime_error("model exited before responding");
    p.buffer.append(chunk, static_cast<std::size_t>(n));
  }
}

Prediction parse_response(const std::string& line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    throw std::runtime_error("protocol error: response is not JSON: " + line.substr(0, 200));
  }
  if (!j.is_object() || !j.contains("label") || !j["label"].is_string())
    throw std::runtime_error("protocol error: response needs a string \"label\"");
  Prediction p{j["label"].get<std::string>(), std::nullopt};
  if (auto it = j.find("confidence"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) throw std::runtime_error("protocol error: \"confidence\" must be a number");
    p.confidence = it->get<double>();
  }
  return p;
}

}  // namespace

SubprocessClassifier::SubprocessClassifier(std::string name, std::vector<std::string> argv,
                                           std::chrono::milliseconds timeout)
    : Classifier(std::move(name)), argv_(std::move(argv)), timeout_(timeout) {
  if (argv_.empty()) throw Error(ErrorCode::kConfig, "subprocess classifier needs a command");
  if (timeout_.count() <= 0)
    throw Error(ErrorCode::kConfig, "subprocess classifier timeout must be positive");
}

SubprocessClassifier::~SubprocessClassifier() = default;

Prediction SubprocessClassifier::classify(const FeatureRecord& input) const {
  std::lock_guard<std::mutex> lock(mu_);
  try {
    if (!proc_) proc_ = spawn_child(argv_);
    const auto deadline = Clock::now() + timeout_;
    send_all(proc_->fd, Json{{"input", to_json(input)}}.dump() + "\n");
    return parse_response(read_line(*proc_, deadline, timeout_));
  } catch (const std::runtime_error& e) {
    // The child is in an unknown state; the next request starts a fresh one.
    proc_.reset();
    throw Error(ErrorCode::kClassifier, "classifier '" + name() + "': " + e.what());
  }
}

}  // namespace specguard
