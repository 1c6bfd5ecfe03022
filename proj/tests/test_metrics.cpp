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
#include <limits>
#include <random>

#include "longsent/error.hpp"
#include "longsent/metrics.hpp"
#include "oracles.hpp"

namespace longsent {
namespace {

using oracle::Bits;

std::vector<Bits> bits(const std::vector<LabelVector>& v) {
  std::vector<Bits> out;
  for (const auto& x : v) out.push_back(oracle::bits_of(x));
  return out;
}

std::vector<oracle::Scores> raw(const std::vector<ScoreVector>& v) { return {v.begin(), v.end()}; }

LabelVector all_set() {
  LabelVector v;
  for (std::size_t i = 0; i < kNumLabels; ++i) v.set(i);
  return v;
}

TEST(Metrics, PerfectPrediction) {
  // Every label appears at least once so no per-label F1 is 0/0.
  std::vector<LabelVector> truth;
  std::vector<ScoreVector> scores;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    LabelVector v;
    v.set(i);
    v.set((i + 3) % kNumLabels);
    truth.push_back(v);
    ScoreVector s{};
    for (std::size_t j = 0; j < kNumLabels; ++j) s[j] = v.test(j) ? 0.9 : 0.1;
    scores.push_back(s);
  }
  auto r = metrics::evaluate(truth, truth, scores);
  EXPECT_EQ(r.hamming_loss, 0.0);
  EXPECT_EQ(r.jaccard_sample_avg, 1.0);
  EXPECT_EQ(r.lrap, 1.0);
  EXPECT_EQ(r.f1_macro, 1.0);
  EXPECT_EQ(r.f1_micro, 1.0);
  EXPECT_EQ(r.n_samples, kNumLabels);
}

TEST(Metrics, ComplementPrediction) {
  std::vector<LabelVector> truth = {{SentimentLabel::kSad}, {SentimentLabel::kJoking, SentimentLabel::kDenial}};
  std::vector<LabelVector> pred;
  for (const auto& t : truth) {
    LabelVector c;
    for (std::size_t i = 0; i < kNumLabels; ++i) c.set(i, !t.test(i));
    pred.push_back(c);
  }
  EXPECT_EQ(metrics::hamming_loss(truth, pred), 1.0);
  EXPECT_EQ(metrics::jaccard_sample_avg(truth, pred), 0.0);
  EXPECT_EQ(metrics::f1(truth, pred, metrics::Averaging::kMicro), 0.0);
}

TEST(Metrics, LrapFiveSixths) {
  // Truth {0, 2}; label 1 outranks label 2: (1/1 + 2/3) / 2.
  std::vector<LabelVector> truth = {{SentimentLabel::kOptimistic, SentimentLabel::kEmpathetic}};
  std::vector<ScoreVector> scores = {{0.9, 0.8, 0.7, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1}};
  EXPECT_NEAR(metrics::lrap(truth, scores), 5.0 / 6.0, 1e-12);
}

TEST(Metrics, LrapTiesCountAgainst) {
  std::vector<LabelVector> truth = {{SentimentLabel::kOptimistic}};
  std::vector<ScoreVector> scores = {{0.5, 0.5, 0, 0, 0, 0, 0, 0, 0, 0}};
  EXPECT_NEAR(metrics::lrap(truth, scores), 0.5, 1e-15);
}

TEST(Metrics, ZeroOverZeroConventions) {
  std::vector<LabelVector> none = {{}, {}};
  std::vector<ScoreVector> scores(2, ScoreVector{});
  EXPECT_EQ(metrics::jaccard_sample_avg(none, none), 1.0);
  EXPECT_EQ(metrics::lrap(none, scores), 1.0);
  EXPECT_EQ(metrics::f1(none, none, metrics::Averaging::kMicro), 0.0);
  EXPECT_EQ(metrics::f1(none, none, metrics::Averaging::kMacro), 0.0);
  std::vector<LabelVector> full = {all_set()};
  std::vector<ScoreVector> one(1, ScoreVector{});
  EXPECT_EQ(metrics::lrap(full, one), 1.0);
}

TEST(Metrics, ShapeErrors) {
  std::vector<LabelVector> a = {{}}, b = {{}, {}}, empty;
  std::vector<ScoreVector> s1(1, ScoreVector{});
  EXPECT_THROW(metrics::hamming_loss(a, b), UsageError);
  EXPECT_THROW(metrics::hamming_loss(empty, empty), UsageError);
  std::vector<ScoreVector> s2(2, ScoreVector{});
  EXPECT_THROW(metrics::evaluate(a, a, s2), UsageError);
  s1[0][0] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(metrics::lrap(a, s1), UsageError);
}

TEST(Metrics, MatchesOracleOnRandomInstances) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    auto c = oracle::random_case(rng);
    auto t = bits(c.truth), p = bits(c.pred);
    auto r = metrics::evaluate(c.truth, c.pred, c.scores);
    ASSERT_NEAR(r.hamming_loss, oracle::hamming(t, p), 1e-12);
    ASSERT_NEAR(r.jaccard_sample_avg, oracle::jaccard(t, p), 1e-12);
    ASSERT_NEAR(r.lrap, oracle::lrap(t, raw(c.scores)), 1e-12);
    ASSERT_NEAR(r.f1_macro, oracle::f1_macro(t, p), 1e-12);
    ASSERT_NEAR(r.f1_micro, oracle::f1_micro(t, p), 1e-12);
  }
}

TEST(Metrics, ParallelIsBitIdenticalToSerial) {
  std::mt19937_64 rng(8);
  omp_set_num_threads(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = oracle::random_case(rng, 3000);
    auto a = metrics::evaluate(c.truth, c.pred, c.scores);
    auto b = metrics::serial::evaluate(c.truth, c.pred, c.scores);
    EXPECT_EQ(a.to_json(), b.to_json());
  }
}

TEST(Metrics, ReportJsonKeyOrder) {
  metrics::EvalReport r;
  r.n_samples = 3;
  r.lrap = 0.5;
  const auto j = r.to_json();
  EXPECT_LT(j.find("hamming_loss"), j.find("jaccard_sample_avg"));
  EXPECT_LT(j.find("jaccard_sample_avg"), j.find("lrap"));
  EXPECT_LT(j.find("lrap"), j.find("f1_macro"));
  EXPECT_LT(j.find("f1_macro"), j.find("f1_micro"));
  EXPECT_LT(j.find("f1_micro"), j.find("n_samples"));
  EXPECT_NE(j.find("\"n_samples\": 3"), std::string::npos);
}

}  // namespace
}  // namespace longsent
