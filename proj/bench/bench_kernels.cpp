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


// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "longsent/classifier.hpp"
#include "longsent/keyword_filter.hpp"
#include "longsent/longitudinal.hpp"
#include "longsent/metrics.hpp"
#include "longsent/ngram.hpp"
#include "longsent/normalizer.hpp"

namespace longsent {
namespace {

const std::vector<std::string>& vocab() {
  static const std::vector<std::string> words = {
      "china", "wuhan", "virus", "vaccine", "lol", "can't", "hope", "lies", "thanks", "worried", "the", "of",
      "chinese", "communist", "party", "lab", "leak", "@user", "#covid", "https://t.co/x", "\xF0\x9F\x99\x82"};
  return words;
}

std::vector<RawPost> make_posts(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, vocab().size() - 1), len(5, 30);
  std::vector<RawPost> posts;
  const auto au = *CountryCode::from_code("AU");
  for (std::size_t i = 0; i < n; ++i) {
    std::string text;
    for (std::size_t j = 0, k = len(rng); j < k; ++j) text += vocab()[pick(rng)] + " ";
    posts.push_back({std::to_string(i), text, std::chrono::sys_seconds{std::chrono::seconds(1600000000 + i * 600)}, au});
  }
  return posts;
}

const std::vector<RawPost>& raw_posts() {
  static const auto posts = make_posts(20000);
  return posts;
}

const std::vector<NormalizedPost>& normalized_posts() {
  static const auto posts = serial::normalize_corpus(raw_posts(), SubstitutionTable::builtin());
  return posts;
}

const std::vector<std::string>& texts() {
  static const auto t = [] {
    std::vector<std::string> out;
    for (const auto& p : normalized_posts()) out.push_back(p.text);
    return out;
  }();
  return t;
}

const SentimentLexicon& lexicon() {
  static const SentimentLexicon lex = {{"hope", {SentimentLabel::kOptimistic}},
                                       {"lies", {SentimentLabel::kAnnoyed, SentimentLabel::kDenial}},
                                       {"thanks", {SentimentLabel::kThankful}},
                                       {"worried", {SentimentLabel::kAnxious}}};
  return lex;
}

void BM_NormalizeSerial(benchmark::State& state) {
  const auto table = SubstitutionTable::builtin();
  const auto& input = raw_posts();
  for (auto _ : state) benchmark::DoNotOptimize(serial::normalize_corpus(input, table));
}
void BM_NormalizeParallel(benchmark::State& state) {
  const auto table = SubstitutionTable::builtin();
  const auto& input = raw_posts();
  for (auto _ : state) benchmark::DoNotOptimize(normalize_corpus(input, table));
}

void BM_FilterSerial(benchmark::State& state) {
  const auto k = KeywordSet::builtin();
  const auto& input = normalized_posts();
  for (auto _ : state) benchmark::DoNotOptimize(serial::filter_corpus(input, k));
}
void BM_FilterParallel(benchmark::State& state) {
  const auto k = KeywordSet::builtin();
  const auto& input = normalized_posts();
  for (auto _ : state) benchmark::DoNotOptimize(filter_corpus(input, k));
}

void BM_TrigramsSerial(benchmark::State& state) {
  const StopwordSet stop = {"the", "of"};
  const auto& input = normalized_posts();
  for (auto _ : state) benchmark::DoNotOptimize(serial::extract_ngrams(input, 3, stop));
}
void BM_TrigramsParallel(benchmark::State& state) {
  const StopwordSet stop = {"the", "of"};
  const auto& input = normalized_posts();
  for (auto _ : state) benchmark::DoNotOptimize(extract_ngrams(input, 3, stop));
}

void BM_LexiconSerial(benchmark::State& state) {
  const auto& input = texts();
  for (auto _ : state) benchmark::DoNotOptimize(serial::lexicon_classify_batch(input, lexicon()));
}
void BM_LexiconParallel(benchmark::State& state) {
  LexiconBackend backend(lexicon());
  const auto& input = texts();
  for (auto _ : state) benchmark::DoNotOptimize(backend.classify(input));
}

struct MetricData {
  std::vector<LabelVector> truth, pred;
  std::vector<ScoreVector> scores;
};

const MetricData& metric_data() {
  static const MetricData d = [] {
    MetricData m;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 100000; ++i) {
      LabelVector t;
      ScoreVector s{};
      for (std::size_t j = 0; j < kNumLabels; ++j) {
        t.set(j, u(rng) < 0.2);
        s[j] = u(rng);
      }
      m.truth.push_back(t);
      m.scores.push_back(s);
      m.pred.push_back(threshold(s, 0.5));
    }
    return m;
  }();
  return d;
}

void BM_MetricsSerial(benchmark::State& state) {
  const auto& d = metric_data();
  for (auto _ : state) benchmark::DoNotOptimize(metrics::serial::evaluate(d.truth, d.pred, d.scores));
}
void BM_MetricsParallel(benchmark::State& state) {
  const auto& d = metric_data();
  for (auto _ : state) benchmark::DoNotOptimize(metrics::evaluate(d.truth, d.pred, d.scores));
}

const std::vector<ScoredPost>& scored() {
  static const auto posts = [] {
    std::vector<ScoredPost> out;
    const auto& d = metric_data();
    const auto au = *CountryCode::from_code("AU");
    for (std::size_t i = 0; i < d.pred.size(); ++i) {
      out.push_back({std::to_string(i), std::chrono::sys_seconds{std::chrono::seconds(1590000000 + i * 300)}, au,
                     d.pred[i], 0, 0});
    }
    return out;
  }();
  return posts;
}

void BM_CooccurrenceSerial(benchmark::State& state) {
  const auto range = DateWindow::study_default().months();
  const auto& input = scored();
  for (auto _ : state) benchmark::DoNotOptimize(serial::cooccurrence(input, range));
}
void BM_CooccurrenceParallel(benchmark::State& state) {
  const auto range = DateWindow::study_default().months();
  const auto& input = scored();
  for (auto _ : state) benchmark::DoNotOptimize(cooccurrence(input, range));
}

BENCHMARK(BM_NormalizeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NormalizeParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FilterSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FilterParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrigramsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrigramsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LexiconSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LexiconParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MetricsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MetricsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CooccurrenceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CooccurrenceParallel)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace longsent

BENCHMARK_MAIN();
