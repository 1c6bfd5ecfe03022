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

#include "longsent/ngram.hpp"

#include <omp.h>

#include <algorithm>

#include "longsent/error.hpp"
#include "longsent/io.hpp"

namespace longsent {

namespace {

void check_order(int n) {
  if (n != 2 && n != 3) throw UsageError("n-gram order must be 2 or 3, got " + std::to_string(n));
}

void count_post(const NormalizedPost& post, int n, const StopwordSet& stopwords,
                std::unordered_map<std::string, std::uint64_t>& counts) {
  const auto content = content_tokens(post, stopwords);
  const auto order = static_cast<std::size_t>(n);
  if (content.size() < order) return;
  std::string key;
  for (std::size_t i = 0; i + order <= content.size(); ++i) {
    key = content[i];
    for (std::size_t k = 1; k < order; ++k) {
      key.push_back(' ');
      key += content[i + k];
    }
    ++counts[key];
  }
}

}  // namespace

StopwordSet load_stopwords(const std::filesystem::path& path) {
  StopwordSet set;
  for (auto& [line, word] : io::read_lines(path)) {
    for (auto& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    set.insert(std::move(word));
  }
  return set;
}

std::string NgramSlice::label() const {
  if (country && month) return country->code() + "/" + month->to_string();
  if (country) return country->code();
  if (month) return month->to_string();
  return "all";
}

std::uint64_t NgramTable::total() const {
  std::uint64_t sum = 0;
  for (const auto& [k, v] : entries) sum += v;
  return sum;
}

std::uint64_t NgramTable::count(std::string_view joined) const {
  const auto it = entries.find(std::string(joined));
  return it == entries.end() ? 0 : it->second;
}

std::string NgramCount::joined() const {
  std::string out;
  for (const auto& t : tuple) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::vector<std::string> content_tokens(std::span<const std::string> tokens, const StopwordSet& stopwords) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stopwords.count(t)) out.push_back(t);
  }
  return out;
}

std::vector<std::string> content_tokens(const NormalizedPost& post, const StopwordSet& stopwords) {
  return content_tokens(std::span<const std::string>(post.tokens), stopwords);
}

NgramTable extract_ngrams(std::span<const NormalizedPost> posts, int n, const StopwordSet& stopwords) {
  check_order(n);
  const int threads = omp_get_max_threads();
  std::vector<std::unordered_map<std::string, std::uint64_t>> partial(static_cast<std::size_t>(threads));
  const auto count = static_cast<std::int64_t>(posts.size());
#pragma omp parallel
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 128)
    for (std::int64_t i = 0; i < count; ++i) {
      count_post(posts[static_cast<std::size_t>(i)], n, stopwords, local);
    }
  }
  NgramTable table;
  table.n = n;
  table.entries = std::move(partial.front());
  for (std::size_t t = 1; t < partial.size(); ++t) {
    for (auto& [k, v] : partial[t]) table.entries[k] += v;
  }
  return table;
}

std::vector<NgramCount> top_k(const NgramTable& table, std::size_t k) {
  if (k == 0) throw UsageError("top_k needs k >= 1");
  std::vector<std::pair<std::string_view, std::uint64_t>> rows(table.entries.begin(), table.entries.end());
  const auto before = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  const std::size_t keep = std::min(k, rows.size());
  std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(keep), rows.end(), before);
  rows.resize(keep);

  std::vector<NgramCount> out;
  out.reserve(keep);
  for (const auto& [joined, c] : rows) out.push_back({io::split(joined, ' '), c});
  return out;
}

std::string ngram_csv(std::span<const NgramCount> rows) {
  std::string out = "ngram,count\n";
  for (const auto& r : rows) out += io::csv_row({r.joined(), std::to_string(r.count)});
  return out;
}

namespace serial {

NgramTable extract_ngrams(std::span<const NormalizedPost> posts, int n, const StopwordSet& stopwords) {
  check_order(n);
  NgramTable table;
  table.n = n;
  for (const auto& p : posts) count_post(p, n, stopwords, table.entries);
  return table;
}

}  // namespace serial

}  // namespace longsent
