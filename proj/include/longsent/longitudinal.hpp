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
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "longsent/classifier.hpp"
#include "longsent/corpus.hpp"
#include "longsent/polarity.hpp"

namespace longsent {

/// A filtered post after classification and scoring.
struct ScoredPost {
  std::string id;
  Timestamp timestamp;
  CountryCode country;
  LabelVector labels;
  double custom_polarity = 0.0;
  double lexicon_polarity = 0.0;
};

struct BucketKey {
  CountryCode country;
  MonthKey month;

  friend auto operator<=>(const BucketKey&, const BucketKey&) = default;
  friend bool operator==(const BucketKey&, const BucketKey&) = default;
};

/// Post indices per (country, UTC month), each index in exactly one bucket.
using Buckets = std::map<BucketKey, std::vector<std::size_t>>;

Buckets bucket_by_month(std::span<const ScoredPost> posts);

/// Per-month values over a contiguous range; months without data hold
/// nullopt. `country` is empty for the all-country series.
struct MonthlySeries {
  std::optional<CountryCode> country;
  std::string metric_name;
  std::map<MonthKey, std::optional<double>> points;

  std::string scope() const;  // country code or "ALL"
};

struct CountSeries {
  std::vector<MonthlySeries> per_country;  // ordered by country code
  MonthlySeries global;
};

/// Countries default to those present in `buckets`. The global series is the
/// per-month sum over countries and is null where every country is null.
CountSeries monthly_counts(const Buckets& buckets, const MonthRange& range,
                           std::vector<CountryCode> countries = {});

/// Arithmetic mean of `value(post)` per bucket. Values are summed in sorted
/// order, so the result does not depend on post order.
std::vector<MonthlySeries> mean_series(std::span<const ScoredPost> posts, const Buckets& buckets,
                                       const MonthRange& range, const std::string& metric_name,
                                       const std::function<double(const ScoredPost&)>& value,
                                       std::vector<CountryCode> countries = {});

/// Custom-weight polarity recomputed with `exclude` removed from each post's
/// labels before scoring.
std::vector<MonthlySeries> mean_polarity_series(std::span<const ScoredPost> posts, const Buckets& buckets,
                                                const MonthRange& range, const PolarityWeights& weights,
                                                const LabelVector& exclude = {},
                                                std::vector<CountryCode> countries = {});

/// Mean of the stored lexicon polarity.
std::vector<MonthlySeries> mean_lexicon_polarity_series(std::span<const ScoredPost> posts, const Buckets& buckets,
                                                        const MonthRange& range,
                                                        std::vector<CountryCode> countries = {});

/// Percent of posts per country carrying each label in `labels`, over posts
/// with at least one label outside `exclude`. Null when that denominator is 0.
/// Overlapping `labels` and `exclude` is a UsageError.
using ShareTable = std::map<CountryCode, std::map<SentimentLabel, std::optional<double>>>;
ShareTable sentiment_share(std::span<const ScoredPost> posts, const LabelVector& labels, const LabelVector& exclude);

struct CooccurrenceMatrix {
  using Matrix = std::array<std::array<std::uint64_t, kNumLabels>, kNumLabels>;

  Matrix counts{};
  MonthRange period;

  std::uint64_t at(SentimentLabel a, SentimentLabel b) const { return counts[index_of(a)][index_of(b)]; }
};

/// Posts whose month falls in `period`. Diagonal: posts per label; off
/// diagonal: posts carrying both labels (both triangles).
CooccurrenceMatrix cooccurrence(std::span<const ScoredPost> posts, const MonthRange& period);

MonthRange calendar_year(int year);

/// Label totals per country, plus "all countries" under nullopt.
std::map<std::optional<CountryCode>, std::array<std::uint64_t, kNumLabels>> label_totals(
    std::span<const ScoredPost> posts);

struct Correlation {
  std::optional<double> r;  // nullopt when not computable
  std::size_t overlap = 0;  // months where both series have values
  std::string reason;       // why r is missing
};

/// Pearson r over months where both series are non-null. Needs at least 3
/// such months and nonzero variance in both.
Correlation correlate(const MonthlySeries& a, const MonthlySeries& b);

MonthlySeries case_series_to_monthly(const CaseSeries& cases, const MonthRange& range);

namespace serial {
CooccurrenceMatrix cooccurrence(std::span<const ScoredPost> posts, const MonthRange& period);
}  // namespace serial

}  // namespace longsent
