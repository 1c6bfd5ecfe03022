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

#include "longsent/longitudinal.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "longsent/error.hpp"

namespace longsent {

namespace {

std::vector<CountryCode> countries_or_present(std::vector<CountryCode> countries, const Buckets& buckets) {
  if (countries.empty()) {
    for (const auto& [key, _] : buckets) {
      if (countries.empty() || countries.back() != key.country) countries.push_back(key.country);
    }
  }
  std::sort(countries.begin(), countries.end());
  countries.erase(std::unique(countries.begin(), countries.end()), countries.end());
  return countries;
}

void add_pairs(const LabelVector& labels, CooccurrenceMatrix::Matrix& counts) {
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (!labels.test(i)) continue;
    ++counts[i][i];
    for (std::size_t j = i + 1; j < kNumLabels; ++j) {
      if (!labels.test(j)) continue;
      ++counts[i][j];
      ++counts[j][i];
    }
  }
}

}  // namespace

Buckets bucket_by_month(std::span<const ScoredPost> posts) {
  Buckets buckets;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    buckets[{posts[i].country, MonthKey::of(posts[i].timestamp)}].push_back(i);
  }
  return buckets;
}

std::string MonthlySeries::scope() const { return country ? country->code() : "ALL"; }

CountSeries monthly_counts(const Buckets& buckets, const MonthRange& range, std::vector<CountryCode> countries) {
  countries = countries_or_present(std::move(countries), buckets);
  const auto months = range.months();
  CountSeries out;
  out.global.metric_name = "post_count";
  for (const auto m : months) out.global.points[m] = std::nullopt;

  for (const auto& country : countries) {
    MonthlySeries series{country, "post_count", {}};
    for (const auto m : months) {
      const auto it = buckets.find({country, m});
      if (it == buckets.end() || it->second.empty()) {
        series.points[m] = std::nullopt;
        continue;
      }
      const auto n = static_cast<double>(it->second.size());
      series.points[m] = n;
      auto& total = out.global.points[m];
      total = total.value_or(0.0) + n;
    }
    out.per_country.push_back(std::move(series));
  }
  return out;
}

std::vector<MonthlySeries> mean_series(std::span<const ScoredPost> posts, const Buckets& buckets,
                                       const MonthRange& range, const std::string& metric_name,
                                       const std::function<double(const ScoredPost&)>& value,
                                       std::vector<CountryCode> countries) {
  countries = countries_or_present(std::move(countries), buckets);
  const auto months = range.months();
  const std::size_t cells = countries.size() * months.size();
  std::vector<std::optional<double>> means(cells);

  const auto n = static_cast<std::int64_t>(cells);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t c = 0; c < n; ++c) {
    const auto cell = static_cast<std::size_t>(c);
    const auto it = buckets.find({countries[cell / months.size()], months[cell % months.size()]});
    if (it == buckets.end() || it->second.empty()) continue;
    std::vector<double> values;
    values.reserve(it->second.size());
    for (const auto idx : it->second) values.push_back(value(posts[idx]));
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    means[cell] = sum / static_cast<double>(values.size());
  }

  std::vector<MonthlySeries> out;
  for (std::size_t ci = 0; ci < countries.size(); ++ci) {
    MonthlySeries series{countries[ci], metric_name, {}};
    for (std::size_t mi = 0; mi < months.size(); ++mi) series.points[months[mi]] = means[ci * months.size() + mi];
    out.push_back(std::move(series));
  }
  return out;
}

std::vector<MonthlySeries> mean_polarity_series(std::span<const ScoredPost> posts, const Buckets& buckets,
                                                const MonthRange& range, const PolarityWeights& weights,
                                                const LabelVector& exclude, std::vector<CountryCode> countries) {
  return mean_series(
      posts, buckets, range, "mean_custom_polarity",
      [&](const ScoredPost& p) { return custom_polarity(p.labels.without(exclude), weights); }, std::move(countries));
}

std::vector<MonthlySeries> mean_lexicon_polarity_series(std::span<const ScoredPost> posts, const Buckets& buckets,
                                                        const MonthRange& range, std::vector<CountryCode> countries) {
  return mean_series(
      posts, buckets, range, "mean_lexicon_polarity", [](const ScoredPost& p) { return p.lexicon_polarity; },
      std::move(countries));
}

ShareTable sentiment_share(std::span<const ScoredPost> posts, const LabelVector& labels, const LabelVector& exclude) {
  if (labels.without(exclude) != labels) throw UsageError("sentiment_share: a label is both selected and excluded");
  std::map<CountryCode, std::size_t> denominator;
  std::map<CountryCode, std::array<std::size_t, kNumLabels>> numerator;
  for (const auto& p : posts) {
    auto& num = numerator[p.country];
    auto& den = denominator[p.country];
    if (p.labels.without(exclude).none()) continue;
    ++den;
    for (std::size_t i = 0; i < kNumLabels; ++i) num[i] += (labels.test(i) && p.labels.test(i)) ? 1 : 0;
  }
  ShareTable table;
  for (const auto& [country, den] : denominator) {
    auto& row = table[country];
    for (const auto label : labels.labels()) {
      if (den == 0) {
        row[label] = std::nullopt;
      } else {
        row[label] = 100.0 * static_cast<double>(numerator[country][index_of(label)]) / static_cast<double>(den);
      }
    }
  }
  return table;
}

CooccurrenceMatrix cooccurrence(std::span<const ScoredPost> posts, const MonthRange& period) {
  const int threads = omp_get_max_threads();
  std::vector<CooccurrenceMatrix::Matrix> partial(static_cast<std::size_t>(threads));
  const auto n = static_cast<std::int64_t>(posts.size());
#pragma omp parallel
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto& p = posts[static_cast<std::size_t>(i)];
      if (period.contains(MonthKey::of(p.timestamp))) add_pairs(p.labels, local);
    }
  }
  CooccurrenceMatrix out;
  out.period = period;
  for (const auto& m : partial) {
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      for (std::size_t j = 0; j < kNumLabels; ++j) out.counts[i][j] += m[i][j];
    }
  }
  return out;
}

MonthRange calendar_year(int year) { return {{year, 1}, {year, 12}}; }

std::map<std::optional<CountryCode>, std::array<std::uint64_t, kNumLabels>> label_totals(
    std::span<const ScoredPost> posts) {
  std::map<std::optional<CountryCode>, std::array<std::uint64_t, kNumLabels>> out;
  auto& all = out[std::nullopt];
  for (const auto& p : posts) {
    auto& row = out[p.country];
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      if (!p.labels.test(i)) continue;
      ++row[i];
      ++all[i];
    }
  }
  return out;
}

Correlation correlate(const MonthlySeries& a, const MonthlySeries& b) {
  std::vector<double> xs, ys;
  for (const auto& [month, va] : a.points) {
    if (!va) continue;
    const auto it = b.points.find(month);
    if (it == b.points.end() || !it->second) continue;
    xs.push_back(*va);
    ys.push_back(*it->second);
  }
  Correlation result;
  result.overlap = xs.size();
  if (xs.size() < 3) {
    result.reason = "fewer than 3 overlapping months";
    return result;
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    result.reason = "zero variance";
    return result;
  }
  result.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return result;
}

MonthlySeries case_series_to_monthly(const CaseSeries& cases, const MonthRange& range) {
  MonthlySeries series{cases.country, "new_cases", {}};
  for (const auto m : range.months()) {
    const auto it = cases.monthly_new_cases.find(m);
    series.points[m] = it == cases.monthly_new_cases.end() ? std::nullopt
                                                           : std::optional<double>(static_cast<double>(it->second));
  }
  return series;
}

namespace serial {

CooccurrenceMatrix cooccurrence(std::span<const ScoredPost> posts, const MonthRange& period) {
  CooccurrenceMatrix out;
  out.period = period;
  for (const auto& p : posts) {
    if (period.contains(MonthKey::of(p.timestamp))) add_pairs(p.labels, out.counts);
  }
  return out;
}

}  // namespace serial

}  // namespace longsent
