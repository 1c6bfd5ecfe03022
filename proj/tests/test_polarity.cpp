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

#include <fstream>

#include "golden.hpp"
#include "longsent/error.hpp"
#include "longsent/polarity.hpp"
#include "test_support.hpp"

namespace longsent {
namespace {

using L = SentimentLabel;

TEST(Polarity, DefaultWeights) {
  PolarityWeights w;
  EXPECT_EQ(w[L::kOptimistic], 3);
  EXPECT_EQ(w[L::kThankful], 2);
  EXPECT_EQ(w[L::kEmpathetic], 0);
  EXPECT_EQ(w[L::kPessimistic], -3);
  EXPECT_EQ(w[L::kAnxious], -2);
  EXPECT_EQ(w[L::kSad], -2);
  EXPECT_EQ(w[L::kAnnoyed], -1);
  EXPECT_EQ(w[L::kDenial], -4);
  EXPECT_EQ(w[L::kOfficialReport], 0);
  EXPECT_EQ(w[L::kJoking], 1);
}

TEST(Polarity, PublishedSamples) {
  for (const auto& pair : golden::polarity_pairs()) {
    EXPECT_NEAR(custom_polarity(pair.labels), pair.score, 1e-9);
  }
}

TEST(Polarity, ClampsAndEmpty) {
  EXPECT_EQ(custom_polarity({}), 0.0);
  PolarityWeights heavy;
  heavy.weights.fill(6);
  EXPECT_EQ(custom_polarity({L::kSad, L::kJoking}, heavy), 1.0);
  heavy.weights.fill(-9);
  EXPECT_EQ(custom_polarity({L::kSad, L::kJoking}, heavy), -1.0);
}

TEST(Polarity, RangeOverEveryLabelSet) {
  for (unsigned mask = 0; mask < (1u << kNumLabels); ++mask) {
    LabelVector v;
    int sum = 0;
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      if (mask & (1u << i)) {
        v.set(i);
        sum += PolarityWeights{}.weights[i];
      }
    }
    const double p = custom_polarity(v);
    EXPECT_GE(p, -1.0);
    EXPECT_LE(p, 1.0);
    EXPECT_NEAR(p, std::max(-1.0, std::min(1.0, sum / 10.0)), 1e-15);
  }
}

TEST(Polarity, WeightOverrides) {
  auto w = PolarityWeights::from_json(R"({"joking": -1, "official_report": 2})");
  EXPECT_EQ(w[L::kJoking], -1);
  EXPECT_EQ(w[L::kOfficialReport], 2);
  EXPECT_EQ(w[L::kOptimistic], 3);
  EXPECT_THROW(PolarityWeights::from_json(R"({"happy": 1})"), UsageError);
  EXPECT_THROW(PolarityWeights::from_json(R"({"sad": 0.5})"), UsageError);
  EXPECT_THROW(PolarityWeights::from_json("[1,2]"), UsageError);
  auto bundled = PolarityWeights::load(testing::bundled_data() / "weights.json");
  EXPECT_EQ(bundled.weights, PolarityWeights{}.weights);
}

TEST(Polarity, LexiconMeanOfMatches) {
  PolarityLexicon lex = {{"good", 0.5}, {"bad", -1.0}};
  EXPECT_DOUBLE_EQ(lexicon_polarity("good good bad other", lex), 0.0);
  EXPECT_DOUBLE_EQ(lexicon_polarity("good other", lex), 0.5);
  EXPECT_DOUBLE_EQ(lexicon_polarity("nothing here", lex), 0.0);
  testing::TempDir dir;
  std::ofstream(dir / "bad.tsv") << "word\t1.5\n";
  EXPECT_THROW(load_polarity_lexicon(dir / "bad.tsv"), UsageError);
  EXPECT_GT(load_polarity_lexicon(testing::bundled_data() / "polarity_lexicon.tsv").size(), 20u);
}

TEST(Polarity, ParallelMatchesSerial) {
  const auto lex = load_polarity_lexicon(testing::bundled_data() / "polarity_lexicon.tsv");
  std::vector<LabelVector> labels;
  std::vector<std::string> texts;
  for (unsigned i = 0; i < 3000; ++i) {
    LabelVector v;
    for (std::size_t j = 0; j < kNumLabels; ++j) v.set(j, ((i * 2654435761u) >> j) & 1u);
    labels.push_back(v);
    texts.push_back(i % 2 ? "good hope terrible" : "sad worried thanks");
  }
  omp_set_num_threads(4);
  auto a = score_corpus(labels, texts, {}, lex);
  auto b = serial::score_corpus(labels, texts, {}, lex);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].custom, b[i].custom);
    EXPECT_EQ(a[i].lexicon, b[i].lexicon);
  }
  std::vector<std::string> short_texts(2);
  EXPECT_THROW(score_corpus(labels, short_texts, {}, lex), UsageError);
}

}  // namespace
}  // namespace longsent
