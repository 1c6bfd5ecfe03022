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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "longsent/corpus.hpp"
#include "longsent/normalizer.hpp"

namespace longsent {

using StopwordSet = std::unordered_set<std::string>;

StopwordSet load_stopwords(const std::filesystem::path& path);

struct NgramSlice {
  std::optional<CountryCode> country;
  std::optional<MonthKey> month;

  std::string label() const;  // "all", "AU", "2021-07", "AU/2021-07"
};

/// Counts keyed by the space-joined tuple ("wuhan institute virology").
struct NgramTable {
  int n = 2;
  std::unordered_map<std::string, std::uint64_t> entries;
  NgramSlice slice;

  std::uint64_t total() const;
  std::uint64_t count(std::string_view joined) const;
};

struct NgramCount {
  std::vector<std::string> tuple;
  std::uint64_t count = 0;

  std::string joined() const;
  friend bool operator==(const NgramCount&, const NgramCount&) = default;
};

std::vector<std::string> content_tokens(std::span<const std::string> tokens,
                                        const StopwordSet& stopwords);
std::vector<std::string> content_tokens(const NormalizedPost& post, const StopwordSet& stopwords);

/// Sliding windows of length n over each post's content tokens; windows never
/// cross posts. n must be 2 or 3 (UsageError otherwise). OpenMP over posts
/// with per-thread tables merged at the end.
NgramTable extract_ngrams(std::span<const NormalizedPost> posts, int n, const StopwordSet& stopwords);

/// Count descending, ties by joined tuple ascending; at most k rows.
std::vector<NgramCount> top_k(const NgramTable& table, std::size_t k);

/// Writes `ngram,count` rows (with a header) for the given ranking.
std::string ngram_csv(std::span<const NgramCount> rows);

namespace serial {
NgramTable extract_ngrams(std::span<const NormalizedPost> posts, int n, const StopwordSet& stopwords);
}  // namespace serial

}  // namespace longsent
