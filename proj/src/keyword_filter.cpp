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

#include "longsent/keyword_filter.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include "longsent/error.hpp"
#include "longsent/io.hpp"

namespace longsent {

namespace {

std::vector<std::string> keyword_tokens(std::string_view keyword) {
  std::vector<std::string> tokens;
  for (auto& part : io::split(io::trim(keyword), ' ')) {
    if (part.empty()) continue;
    for (auto& c : part) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    tokens.push_back(std::move(part));
  }
  return tokens;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

}  // namespace

void KeywordSet::add(std::string_view keyword) {
  auto tokens = keyword_tokens(keyword);
  if (tokens.empty()) throw UsageError("empty keyword");
  const bool inserted = tokens.size() == 1 ? single_tokens.insert(tokens.front()).second
                                           : phrases.insert(tokens).second;
  if (!inserted) throw UsageError("duplicate keyword '" + join(tokens) + "'");
}

KeywordSet KeywordSet::builtin() {
  KeywordSet set;
  for (const char* k : {"china", "chinese", "sinophobia", "sinophobic", "prc", "wuhan", "hubei", "beijing",
                        "kung flu", "chn", "cn", "ccp", "yellow peril", "chink", "chinks", "chingchong",
                        "ching chong", "gook", "chyna", "mainland", "mainlander", "bugland", "chines", "mainla",
                        "chinazi", "bugmen", "chankoro", "insectoid"}) {
    set.add(k);
  }
  return set;
}

KeywordSet KeywordSet::load(const std::filesystem::path& path) {
  KeywordSet set;
  for (const auto& [line, text] : io::read_lines(path)) {
    try {
      set.add(text);
    } catch (const UsageError& e) {
      throw UsageError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  if (set.size() == 0) throw UsageError(path.string() + ": no keywords");
  return set;
}

KeywordMatch match_keywords(const NormalizedPost& post, const KeywordSet& keywords) {
  KeywordMatch result;
  const auto& tokens = post.tokens;
  auto record = [&](std::string keyword) {
    if (std::find(result.keywords.begin(), result.keywords.end(), keyword) == result.keywords.end()) {
      result.keywords.push_back(std::move(keyword));
    }
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (keywords.single_tokens.count(tokens[i])) record(tokens[i]);
    for (const auto& phrase : keywords.phrases) {
      if (phrase.front() != tokens[i] || i + phrase.size() > tokens.size()) continue;
      if (std::equal(phrase.begin(), phrase.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
        record(join(phrase));
      }
    }
  }
  result.matched = !result.keywords.empty();
  return result;
}

namespace {

FilterResult collect(std::span<const NormalizedPost> posts, std::vector<KeywordMatch>&& matches) {
  FilterResult result;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (posts[i].empty || !matches[i].matched) continue;
    for (const auto& k : matches[i].keywords) ++result.hit_counts[k];
    result.kept.push_back(i);
    result.matches.push_back(std::move(matches[i]));
  }
  return result;
}

}  // namespace

FilterResult filter_corpus(std::span<const NormalizedPost> posts, const KeywordSet& keywords) {
  std::vector<KeywordMatch> matches(posts.size());
  const auto n = static_cast<std::int64_t>(posts.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!posts[k].empty) matches[k] = match_keywords(posts[k], keywords);
  }
  return collect(posts, std::move(matches));
}

namespace serial {

FilterResult filter_corpus(std::span<const NormalizedPost> posts, const KeywordSet& keywords) {
  std::vector<KeywordMatch> matches;
  matches.reserve(posts.size());
  for (const auto& p : posts) matches.push_back(p.empty ? KeywordMatch{} : match_keywords(p, keywords));
  return collect(posts, std::move(matches));
}

}  // namespace serial

}  // namespace longsent
