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


#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "longsent/classifier.hpp"
#include "longsent/error.hpp"
#include "test_support.hpp"

namespace longsent {
namespace {

TEST(Labels, FixedOrderAndNames) {
  const auto& all = all_labels();
  ASSERT_EQ(all.size(), 10u);
  const char* names[] = {"optimistic", "thankful", "empathetic", "pessimistic", "anxious",
                         "sad",        "annoyed",  "denial",     "official_report", "joking"};
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    EXPECT_EQ(index_of(all[i]), i);
    EXPECT_EQ(label_name(all[i]), names[i]);
    EXPECT_EQ(parse_label(names[i]), all[i]);
  }
  EXPECT_EQ(parse_label("Official Report"), SentimentLabel::kOfficialReport);
  EXPECT_FALSE(parse_label("happy"));
}

TEST(Labels, VectorOperations) {
  LabelVector v{SentimentLabel::kAnnoyed, SentimentLabel::kDenial};
  EXPECT_EQ(v.count(), 2u);
  EXPECT_EQ(v.labels(), (std::vector<SentimentLabel>{SentimentLabel::kAnnoyed, SentimentLabel::kDenial}));
  EXPECT_EQ(v.without({SentimentLabel::kDenial}), LabelVector{SentimentLabel::kAnnoyed});
  std::vector<int> bits = {0, 0, 0, 0, 0, 0, 1, 1, 0, 0};
  EXPECT_EQ(LabelVector::from_bits(bits), v);
  std::vector<int> short_bits = {1, 0};
  EXPECT_THROW(LabelVector::from_bits(short_bits), UsageError);
  std::vector<int> bad_bits = {2, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_THROW(LabelVector::from_bits(bad_bits), UsageError);
}

TEST(Threshold, InclusiveAtCutoff) {
  ScoreVector s{0.5, 0.49999, 1.0, 0, 0, 0, 0, 0, 0, 0.7};
  auto v = threshold(s, 0.5);
  EXPECT_TRUE(v.test(std::size_t{0}));
  EXPECT_FALSE(v.test(std::size_t{1}));
  EXPECT_TRUE(v.test(std::size_t{2}));
  EXPECT_TRUE(v.test(std::size_t{9}));
  EXPECT_EQ(v.count(), 3u);
  EXPECT_THROW(threshold(s, 0.0), UsageError);
  EXPECT_THROW(threshold(s, 1.0), UsageError);
}

TEST(Threshold, ValidScores) {
  ScoreVector ok{};
  EXPECT_TRUE(valid_scores(ok));
  ok[3] = 1.5;
  EXPECT_FALSE(valid_scores(ok));
  ok[3] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(valid_scores(ok));
}

TEST(Lexicon, ScoresAreHalfHitsCapped) {
  SentimentLexicon lex = {{"hope", {SentimentLabel::kOptimistic}},
                          {"lies", {SentimentLabel::kAnnoyed, SentimentLabel::kDenial}}};
  auto s = lexicon_classify("hope lies lies lies unknown", lex);
  EXPECT_DOUBLE_EQ(s[index_of(SentimentLabel::kOptimistic)], 0.5);
  EXPECT_DOUBLE_EQ(s[index_of(SentimentLabel::kAnnoyed)], 1.0);
  EXPECT_DOUBLE_EQ(s[index_of(SentimentLabel::kDenial)], 1.0);
  EXPECT_DOUBLE_EQ(s[index_of(SentimentLabel::kSad)], 0.0);
  EXPECT_EQ(lexicon_classify("", lex), ScoreVector{});
}

TEST(Lexicon, BundledFileLoadsAndBadLabelsFail) {
  auto lex = load_sentiment_lexicon(testing::bundled_data() / "sentiment_lexicon.tsv");
  EXPECT_GT(lex.size(), 20u);
  testing::TempDir dir;
  std::ofstream(dir / "bad.tsv") << "word\thappyish\n";
  EXPECT_THROW(load_sentiment_lexicon(dir / "bad.tsv"), UsageError);
}

TEST(Lexicon, BackendParallelMatchesSerial) {
  auto lex = load_sentiment_lexicon(testing::bundled_data() / "sentiment_lexicon.tsv");
  std::vector<std::string> texts;
  std::vector<std::string> words;
  for (const auto& [w, _] : lex) words.push_back(w);
  std::sort(words.begin(), words.end());
  for (std::size_t i = 0; i < 4000; ++i) {
    texts.push_back(words[i % words.size()] + " filler " + words[(i * 7) % words.size()] + " " +
                    words[(i * 13) % words.size()]);
  }
  omp_set_num_threads(4);
  LexiconBackend backend(lex);
  EXPECT_EQ(backend.classify(texts), serial::lexicon_classify_batch(texts, lex));
}

TEST(Histogram, BucketsZeroOneTwoThreePlus) {
  std::vector<LabelVector> v = {{}, {SentimentLabel::kSad}, {SentimentLabel::kSad, SentimentLabel::kAnxious},
                                {SentimentLabel::kSad, SentimentLabel::kAnxious, SentimentLabel::kDenial},
                                {SentimentLabel::kSad, SentimentLabel::kAnxious, SentimentLabel::kDenial,
                                 SentimentLabel::kJoking},
                                {SentimentLabel::kJoking}};
  auto h = label_count_histogram(v);
  EXPECT_EQ(h.counts, (std::array<std::size_t, 4>{1, 2, 1, 2}));
  EXPECT_EQ(h.total, 6u);
  EXPECT_DOUBLE_EQ(h.percentage(1), 100.0 * 2 / 6);
  EXPECT_STREQ(LabelCountHistogram::bucket_name(3), "3+");
}

TEST(Lexicon, SingleJokingTokenIsSetAtDefaultThreshold) {
  SentimentLexicon lex = {{"haha", {SentimentLabel::kJoking}}};
  auto s = lexicon_classify("haha", lex);
  EXPECT_EQ(s[index_of(SentimentLabel::kJoking)], 0.5);
  EXPECT_EQ(threshold(s), LabelVector{SentimentLabel::kJoking});
}

}  // namespace
}  // namespace longsent
