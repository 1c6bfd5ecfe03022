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

#include <array>
#include <bitset>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace longsent {

inline constexpr std::size_t kNumLabels = 10;

// Index order is part of every file and wire format. Do not reorder.
enum class SentimentLabel : std::size_t {
  kOptimistic = 0,
  kThankful,
  kEmpathetic,
  kPessimistic,
  kAnxious,
  kSad,
  kAnnoyed,
  kDenial,
  kOfficialReport,
  kJoking,
};

const std::array<SentimentLabel, kNumLabels>& all_labels();
std::string_view label_name(SentimentLabel label);  // "official_report"
/// Accepts "official_report", "official report", "Official Report", ...
std::optional<SentimentLabel> parse_label(std::string_view name);
constexpr std::size_t index_of(SentimentLabel label) { return static_cast<std::size_t>(label); }

class LabelVector {
 public:
  LabelVector() = default;
  LabelVector(std::initializer_list<SentimentLabel> labels);
  static LabelVector from_bits(std::span<const int> bits);  // UsageError unless 10 values in {0,1}

  bool test(SentimentLabel l) const { return bits_.test(index_of(l)); }
  bool test(std::size_t i) const { return bits_.test(i); }
  void set(SentimentLabel l, bool on = true) { bits_.set(index_of(l), on); }
  void set(std::size_t i, bool on = true) { bits_.set(i, on); }
  std::size_t count() const { return bits_.count(); }
  bool none() const { return bits_.none(); }
  std::vector<SentimentLabel> labels() const;
  std::array<int, kNumLabels> to_array() const;

  LabelVector without(const LabelVector& excluded) const;

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  std::bitset<kNumLabels> bits_;
};

using ScoreVector = std::array<double, kNumLabels>;

/// True when every entry is finite and within [0, 1].
bool valid_scores(const ScoreVector& scores);

/// Bit i is set iff scores[i] >= t. t must lie in (0, 1).
LabelVector threshold(const ScoreVector& scores, double t = 0.5);

using SentimentLexicon = std::unordered_map<std::string, LabelVector>;

/// `token<TAB>label[,label...]` lines.
SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& path);

/// score[i] = min(1, hits_i / 2), hits_i = token occurrences tagged with label i.
ScoreVector lexicon_classify(std::string_view text, const SentimentLexicon& lexicon);

/// A classifier maps a batch of normalized texts to one ScoreVector each.
class ClassifierBackend {
 public:
  virtual ~ClassifierBackend() = default;
  virtual std::vector<ScoreVector> classify(std::span<const std::string> texts) = 0;
};

class LexiconBackend final : public ClassifierBackend {
 public:
  explicit LexiconBackend(SentimentLexicon lexicon) : lexicon_(std::move(lexicon)) {}

  /// OpenMP over texts.
  std::vector<ScoreVector> classify(std::span<const std::string> texts) override;

  const SentimentLexicon& lexicon() const { return lexicon_; }

 private:
  SentimentLexicon lexicon_;
};

namespace serial {
std::vector<ScoreVector> lexicon_classify_batch(std::span<const std::string> texts,
                                                const SentimentLexicon& lexicon);
}  // namespace serial

struct LabelCountHistogram {
  // Buckets: 0, 1, 2 and 3+ labels.
  std::array<std::size_t, 4> counts{};
  std::size_t total = 0;

  double percentage(std::size_t bucket) const;
  static const char* bucket_name(std::size_t bucket);  // "0","1","2","3+"
};

LabelCountHistogram label_count_histogram(std::span<const LabelVector> labels);

}  // namespace longsent
