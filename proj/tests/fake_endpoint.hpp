// Copyright 2026 The longsent Authors.
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


// In-process stand-in for a classification service speaking the /classify
// wire protocol on a loopback port.

#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include "longsent/remote_client.hpp"

namespace longsent::testing {

// Deterministic scores derived from the text so order can be checked.
inline ScoreVector fake_scores(const std::string& text) {
  ScoreVector s{};
  std::size_t h = std::hash<std::string>{}(text);
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    s[i] = static_cast<double>(h % 1000) / 999.0;
    h /= 7;
  }
  return s;
}

class FakeEndpoint {
 public:
  struct Reply {
    int status = 200;
    std::string body;
  };
  // Receives the decoded texts and the 1-based request number.
  using Behavior = std::function<Reply(const std::vector<std::string>&, int)>;

  static Reply ok(const std::vector<std::string>& texts) {
    std::vector<ScoreVector> scores;
    for (const auto& t : texts) scores.push_back(fake_scores(t));
    return {200, encode_classify_response(scores)};
  }

  explicit FakeEndpoint(Behavior behavior, std::string prefix = "",
                        std::chrono::milliseconds delay = std::chrono::milliseconds(0))
      : behavior_(std::move(behavior)), prefix_(std::move(prefix)), delay_(delay) {
    server_.Post(prefix_ + "/classify", [this](const httplib::Request& req, httplib::Response& res) {
      const int in_flight = ++in_flight_;
      {
        int seen = max_in_flight_.load();
        while (in_flight > seen && !max_in_flight_.compare_exchange_weak(seen, in_flight)) {
        }
      }
      std::vector<std::string> texts;
      try {
        texts = decode_classify_request(req.body);
      } catch (const std::exception&) {
        res.status = 400;
        --in_flight_;
        return;
      }
      int number;
      {
        std::lock_guard<std::mutex> lock(mu_);
        batch_sizes_.push_back(texts.size());
        number = static_cast<int>(batch_sizes_.size());
      }
      if (delay_.count() > 0) std::this_thread::sleep_for(delay_);
      const Reply reply = behavior_(texts, number);
      res.status = reply.status;
      res.set_content(reply.body, "application/json");
      --in_flight_;
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FakeEndpoint() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  FakeEndpoint(const FakeEndpoint&) = delete;
  FakeEndpoint& operator=(const FakeEndpoint&) = delete;

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + prefix_; }
  int requests() const {
    std::lock_guard<std::mutex> lock(mu_);
    return static_cast<int>(batch_sizes_.size());
  }
  std::vector<std::size_t> batch_sizes() const {
    std::lock_guard<std::mutex> lock(mu_);
    return batch_sizes_;
  }
  int max_in_flight() const { return max_in_flight_.load(); }

 private:
  Behavior behavior_;
  std::string prefix_;
  std::chrono::milliseconds delay_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  mutable std::mutex mu_;
  std::vector<std::size_t> batch_sizes_;
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
};

inline RemoteOptions fast_options(const std::string& endpoint) {
  RemoteOptions o;
  o.endpoint = endpoint;
  o.initial_backoff = std::chrono::milliseconds(5);
  o.timeout = std::chrono::seconds(5);
  return o;
}

inline std::vector<std::string> numbered_texts(std::size_t n) {
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < n; ++i) texts.push_back("text number " + std::to_string(i));
  return texts;
}

}  // namespace longsent::testing
