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

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "longsent/normalizer.hpp"

namespace longsent {

struct KeywordSet {
  std::set<std::string> single_tokens;
  std::set<std::vector<std::string>> phrases;  // each of length >= 2

  /// The 28 study keywords; "kung flu", "yellow peril" and "ching chong"
  /// are phrases.
  static KeywordSet builtin();
  /// One keyword per line, '#' comments allowed. Keywords are lower-cased;
  /// a repeated keyword is a UsageError.
  static KeywordSet load(const std::filesystem::path& path);

  void add(std::string_view keyword);
  std::size_t size() const { return single_tokens.size() + phrases.size(); }
};

struct KeywordMatch {
  bool matched = false;
  std::vector<std::string> keywords;  // distinct, in order of first occurrence
};

/// Token-exact: "machine" never matches "chin"; phrases must be consecutive.
KeywordMatch match_keywords(const NormalizedPost& post, const KeywordSet& keywords);

struct FilterResult {
  std::vector<std::size_t> kept;                  // indices into the input
  std::vector<KeywordMatch> matches;              // parallel to `kept`
  std::map<std::string, std::size_t> hit_counts;  // posts per keyword
};

/// Order-preserving selection; empty-flagged posts never pass.
FilterResult filter_corpus(std::span<const NormalizedPost> posts, const KeywordSet& keywords);

namespace serial {
FilterResult filter_corpus(std::span<const NormalizedPost> posts, const KeywordSet& keywords);
}  // namespace serial

}  // namespace longsent
