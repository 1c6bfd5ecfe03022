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

#include "longsent/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>

#include "longsent/error.hpp"
#include "longsent/io.hpp"

namespace longsent {

namespace {

constexpr std::array<std::string_view, kNumLabels> kLabelNames{
    "optimistic", "thankful", "empathetic", "pessimistic",     "anxious",
    "sad",        "annoyed",  "denial",     "official_report", "joking",
};

}  // namespace

const std::array<SentimentLabel, kNumLabels>& all_labels() {
  static const std::array<SentimentLabel, kNumLabels> labels = [] {
    std::array<SentimentLabel, kNumLabels> a{};
    for (std::size_t i = 0; i < kNumLabels; ++i) a[i] = static_cast<SentimentLabel>(i);
    return a;
  }();
  return labels;
}

std::string_view label_name(SentimentLabel label) { return kLabelNames[index_of(label)]; }

std::optional<SentimentLabel> parse_label(std::string_view name) {
  std::string key(io::trim(name));
  for (auto& c : key) {
    c = (c == ' ' || c == '-') ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (kLabelNames[i] == key) return static_cast<SentimentLabel>(i);
  }
  return std::nullopt;
}

LabelVector::LabelVector(std::initializer_list<SentimentLabel> labels) {
  for (auto l : labels) set(l);
}

LabelVector LabelVector::from_bits(std::span<const int> bits) {
  if (bits.size() != kNumLabels) {
    throw UsageError("label vector needs " + std::to_string(kNumLabels) + " entries, got " +
                     std::to_string(bits.size()));
  }
  LabelVector v;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw UsageError("label vector entries must be 0 or 1");
    v.set(i, bits[i] == 1);
  }
  return v;
}

std::vector<SentimentLabel> LabelVector::labels() const {
  std::vector<SentimentLabel> out;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (bits_.test(i)) out.push_back(static_cast<SentimentLabel>(i));
  }
  return out;
}

std::array<int, kNumLabels> LabelVector::to_array() const {
  std::array<int, kNumLabels> out{};
  for (std::size_t i = 0; i < kNumLabels; ++i) out[i] = bits_.test(i) ? 1 : 0;
  return out;
}

LabelVector LabelVector::without(const LabelVector& excluded) const {
  LabelVector out = *this;
  out.bits_ &= ~excluded.bits_;
  return out;
}

bool valid_scores(const ScoreVector& scores) {
  return std::all_of(scores.begin(), scores.end(), [](double s) { return std::isfinite(s) && s >= 0.0 && s <= 1.0; });
}

LabelVector threshold(const ScoreVector& scores, double t) {
  if (!(t > 0.0 && t < 1.0)) throw UsageError("threshold must lie in (0, 1)");
  LabelVector out;
  for (std::size_t i = 0; i < kNumLabels; ++i) out.set(i, scores[i] >= t);
  return out;
}

SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& path) {
  SentimentLexicon lexicon;
  for (const auto& e : io::read_tsv(path)) {
    const auto where = path.string() + ":" + std::to_string(e.line) + ": ";
    LabelVector labels;
    for (const auto& name : io::split(e.value, ',')) {
      const auto label = parse_label(name);
      if (!label) throw UsageError(where + "unknown label '" + name + "'");
      labels.set(*label);
    }
    if (e.key.empty() || e.key.find(' ') != std::string::npos) throw UsageError(where + "token must be one word");
    if (!lexicon.emplace(e.key, labels).second) throw UsageError(where + "duplicate token '" + e.key + "'");
  }
  return lexicon;
}

ScoreVector lexicon_classify(std::string_view text, const SentimentLexicon& lexicon) {
  std::array<int, kNumLabels> hits{};
  std::size_t i = 0;
  std::string token;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ') ++i;
    if (i == start) break;
    token.assign(text.substr(start, i - start));
    const auto it = lexicon.find(token);
    if (it == lexicon.end()) continue;
    for (std::size_t l = 0; l < kNumLabels; ++l) hits[l] += it->second.test(l) ? 1 : 0;
  }
  ScoreVector scores{};
  for (std::size_t l = 0; l < kNumLabels; ++l) scores[l] = std::min(1.0, hits[l] / 2.0);
  return scores;
}

std::vector<ScoreVector> LexiconBackend::classify(std::span<const std::string> texts) {
  std::vector<ScoreVector> out(texts.size());
  const auto n = static_cast<std::int64_t>(texts.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = lexicon_classify(texts[static_cast<std::size_t>(i)], lexicon_);
  }
  return out;
}

namespace serial {

std::vector<ScoreVector> lexicon_classify_batch(std::span<const std::string> texts, const SentimentLexicon& lexicon) {
  std::vector<ScoreVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(lexicon_classify(t, lexicon));
  return out;
}

}  // namespace serial

double LabelCountHistogram::percentage(std::size_t bucket) const {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(counts.at(bucket)) / static_cast<double>(total);
}

const char* LabelCountHistogram::bucket_name(std::size_t bucket) {
  static constexpr const char* kNames[] = {"0", "1", "2", "3+"};
  return kNames[bucket];
}

LabelCountHistogram label_count_histogram(std::span<const LabelVector> labels) {
  LabelCountHistogram h;
  for (const auto& v : labels) ++h.counts[std::min<std::size_t>(v.count(), 3)];
  h.total = labels.size();
  return h;
}

}  // namespace longsent
