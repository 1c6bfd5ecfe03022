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

#include "longsent/remote_client.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "longsent/error.hpp"

namespace longsent {

using nlohmann::json;

std::string encode_classify_request(std::span<const std::string> texts) {
  json body;
  body["texts"] = json::array();
  for (const auto& t : texts) body["texts"].push_back(t);
  return body.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::vector<std::string> decode_classify_request(const std::string& body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("request is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("texts") || !doc["texts"].is_array()) {
    throw ProtocolError("request lacks a \"texts\" array");
  }
  std::vector<std::string> texts;
  for (const auto& t : doc["texts"]) {
    if (!t.is_string()) throw ProtocolError("request texts must be strings");
    texts.push_back(t.get<std::string>());
  }
  return texts;
}

std::string encode_classify_response(std::span<const ScoreVector> scores) {
  json body;
  body["scores"] = json::array();
  for (const auto& row : scores) body["scores"].push_back(row);
  return body.dump();
}

std::vector<ScoreVector> decode_classify_response(const std::string& body, std::size_t expected_rows) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("response is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("scores") || !doc["scores"].is_array()) {
    throw ProtocolError("response lacks a \"scores\" array");
  }
  const auto& rows = doc["scores"];
  if (rows.size() != expected_rows) {
    throw ProtocolError("response has " + std::to_string(rows.size()) + " score rows for " +
                        std::to_string(expected_rows) + " texts");
  }
  std::vector<ScoreVector> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || row.size() != kNumLabels) {
      throw ProtocolError("score row " + std::to_string(r) + " has " + std::to_string(row.is_array() ? row.size() : 0) +
                          " values, expected " + std::to_string(kNumLabels));
    }
    ScoreVector v{};
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      if (!row[i].is_number()) throw ProtocolError("score row " + std::to_string(r) + " holds a non-number");
      v[i] = row[i].get<double>();
    }
    if (!valid_scores(v)) throw ProtocolError("score row " + std::to_string(r) + " has a value outside [0, 1]");
    out.push_back(v);
  }
  return out;
}

RemoteBackend::RemoteBackend(RemoteOptions options) : options_(std::move(options)) {
  if (options_.batch_size == 0) throw UsageError("batch_size must be >= 1");
  if (options_.max_in_flight == 0) throw UsageError("max_in_flight must be >= 1");
  if (options_.max_attempts < 1) throw UsageError("max_attempts must be >= 1");
  const std::string& url = options_.endpoint;
  const std::string scheme = "http://";
  if (url.rfind(scheme, 0) != 0 || url.size() == scheme.size()) {
    throw UsageError("endpoint must be an http:// URL, got '" + url + "'");
  }
  const auto slash = url.find('/', scheme.size());
  scheme_host_port_ = url.substr(0, slash);
  std::string prefix = slash == std::string::npos ? "" : url.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/classify";
}

std::vector<ScoreVector> RemoteBackend::classify_chunk(std::span<const std::string> texts, std::size_t chunk_index,
                                                       std::size_t first_text) const {
  const std::string body = encode_classify_request(texts);
  const std::string what = "chunk " + std::to_string(chunk_index) + " (texts " + std::to_string(first_text) + ".." +
                           std::to_string(first_text + texts.size() - 1) + ")";
  std::string last_failure;
  auto backoff = options_.initial_backoff;
  for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    client.set_write_timeout(options_.timeout);
    const auto res = client.Post(path_, body, "application/json");
    if (!res) {
      last_failure = "connection error: " + httplib::to_string(res.error());
    } else if (res->status >= 200 && res->status < 300) {
      try {
        return decode_classify_response(res->body, texts.size());
      } catch (const ProtocolError& e) {
        throw ProtocolError(what + ": " + e.what());
      }
    } else if (res->status == 429 || res->status >= 500) {
      last_failure = "HTTP " + std::to_string(res->status);
    } else {
      throw RemoteError(what + " rejected with HTTP " + std::to_string(res->status));
    }
    if (attempt < options_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw RemoteError(what + " failed after " + std::to_string(options_.max_attempts) + " attempts: " + last_failure);
}

std::vector<ScoreVector> RemoteBackend::classify(std::span<const std::string> texts) {
  if (texts.empty()) return {};
  const std::size_t batch = options_.batch_size;
  const std::size_t chunks = (texts.size() + batch - 1) / batch;
  std::vector<std::vector<ScoreVector>> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::size_t first = c * batch;
      const std::size_t count = std::min(batch, texts.size() - first);
      try {
        results[c] = classify_chunk(texts.subspan(first, count), c, first);
      } catch (...) {
        errors[c] = std::current_exception();
        failed.store(true);
      }
    }
  };

  const std::size_t workers = std::min(options_.max_in_flight, chunks);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<ScoreVector> out;
  out.reserve(texts.size());
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::vector<ScoreVector> remote_classify(std::span<const std::string> texts, const RemoteOptions& options) {
  RemoteBackend backend(options);
  return backend.classify(texts);
}

}  // namespace longsent
