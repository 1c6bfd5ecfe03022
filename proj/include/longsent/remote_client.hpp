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

#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "longsent/classifier.hpp"

namespace longsent {

struct RemoteOptions {
  std::string endpoint;  // e.g. "http://127.0.0.1:8080" or with a path prefix
  std::size_t batch_size = 64;
  std::size_t max_in_flight = 4;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};  // doubled per retry
  std::chrono::seconds timeout{60};
};

/// Client for the `/classify` wire protocol.
///
/// Request:  POST {endpoint}/classify  {"texts": ["...", ...]}
/// Response: {"scores": [[10 floats], ...]} in request order.
///
/// Texts go out in order-preserving chunks of `batch_size`, with up to
/// `max_in_flight` chunks outstanding. Connection failures, 429 and 5xx are
/// retried with exponential backoff; once attempts run out a RemoteError
/// names the chunk. Other non-2xx statuses fail straight away. A response of
/// the wrong shape or with a score outside [0, 1] is a ProtocolError.
class RemoteBackend final : public ClassifierBackend {
 public:
  explicit RemoteBackend(RemoteOptions options);

  std::vector<ScoreVector> classify(std::span<const std::string> texts) override;

 private:
  std::vector<ScoreVector> classify_chunk(std::span<const std::string> texts, std::size_t chunk_index,
                                          std::size_t first_text) const;

  RemoteOptions options_;
  std::string scheme_host_port_;
  std::string path_;
};

std::vector<ScoreVector> remote_classify(std::span<const std::string> texts, const RemoteOptions& options);

/// Encoders/decoders for the wire bodies, exposed for servers and tests.
std::string encode_classify_request(std::span<const std::string> texts);
std::vector<std::string> decode_classify_request(const std::string& body);
std::string encode_classify_response(std::span<const ScoreVector> scores);
/// ProtocolError on malformed JSON, wrong row count, row length != 10 or a
/// score outside [0, 1].
std::vector<ScoreVector> decode_classify_response(const std::string& body, std::size_t expected_rows);

}  // namespace longsent
