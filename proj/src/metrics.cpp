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

#include "longsent/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "longsent/error.hpp"

namespace longsent::metrics {

namespace {

void check_shapes(std::size_t truth, std::size_t other, const char* what) {
  if (truth != other) {
    throw UsageError(std::string(what) + ": shape mismatch (" + std::to_string(truth) + " vs " +
                     std::to_string(other) + " rows)");
  }
  if (truth == 0) throw UsageError(std::string(what) + ": needs at least one sample");
}

void check_finite(std::span<const ScoreVector> scores) {
  for (const auto& row : scores) {
    for (double s : row) {
      if (!std::isfinite(s)) throw UsageError("lrap: scores must be finite");
    }
  }
}

double jaccard_sample(const LabelVector& t, const LabelVector& p) {
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    inter += (t.test(i) && p.test(i)) ? 1 : 0;
    uni += (t.test(i) || p.test(i)) ? 1 : 0;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double lrap_sample(const LabelVector& t, const ScoreVector& s) {
  const std::size_t relevant = t.count();
  if (relevant == 0) return 1.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < kNumLabels; ++j) {
    if (!t.test(j)) continue;
    std::size_t at_or_above = 0, relevant_at_or_above = 0;
    for (std::size_t k = 0; k < kNumLabels; ++k) {
      if (s[k] >= s[j]) {
        ++at_or_above;
        relevant_at_or_above += t.test(k) ? 1 : 0;
      }
    }
    sum += static_cast<double>(relevant_at_or_above) / static_cast<double>(at_or_above);
  }
  return sum / static_cast<double>(relevant);
}

double mean_in_order(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

template <typename PerSample>
std::vector<double> per_sample_parallel(std::size_t n, PerSample&& f) {
  std::vector<double> values(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) values[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  return values;
}

double f1_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  const std::uint64_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(denom);
}

}  // namespace

std::string EvalReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["hamming_loss"] = hamming_loss;
  doc["jaccard_sample_avg"] = jaccard_sample_avg;
  doc["lrap"] = lrap;
  doc["f1_macro"] = f1_macro;
  doc["f1_micro"] = f1_micro;
  doc["n_samples"] = n_samples;
  return doc.dump(2) + "\n";
}

double hamming_loss(std::span<const LabelVector> truth, std::span<const LabelVector> pred) {
  check_shapes(truth.size(), pred.size(), "hamming_loss");
  std::uint64_t mismatches = 0;
  for (std::size_t r = 0; r < truth.size(); ++r) {
    for (std::size_t i = 0; i < kNumLabels; ++i) mismatches += truth[r].test(i) != pred[r].test(i) ? 1 : 0;
  }
  return static_cast<double>(mismatches) / static_cast<double>(kNumLabels * truth.size());
}

double jaccard_sample_avg(std::span<const LabelVector> truth, std::span<const LabelVector> pred) {
  check_shapes(truth.size(), pred.size(), "jaccard");
  return mean_in_order(per_sample_parallel(truth.size(), [&](std::size_t i) { return jaccard_sample(truth[i], pred[i]); }));
}

double lrap(std::span<const LabelVector> truth, std::span<const ScoreVector> scores) {
  check_shapes(truth.size(), scores.size(), "lrap");
  check_finite(scores);
  return mean_in_order(per_sample_parallel(truth.size(), [&](std::size_t i) { return lrap_sample(truth[i], scores[i]); }));
}

double f1(std::span<const LabelVector> truth, std::span<const LabelVector> pred, Averaging averaging) {
  check_shapes(truth.size(), pred.size(), "f1");
  std::array<std::uint64_t, kNumLabels> tp{}, fp{}, fn{};
  for (std::size_t r = 0; r < truth.size(); ++r) {
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      const bool t = truth[r].test(i), p = pred[r].test(i);
      tp[i] += (t && p) ? 1 : 0;
      fp[i] += (!t && p) ? 1 : 0;
      fn[i] += (t && !p) ? 1 : 0;
    }
  }
  if (averaging == Averaging::kMicro) {
    std::uint64_t TP = 0, FP = 0, FN = 0;
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      TP += tp[i];
      FP += fp[i];
      FN += fn[i];
    }
    return f1_from_counts(TP, FP, FN);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < kNumLabels; ++i) sum += f1_from_counts(tp[i], fp[i], fn[i]);
  return sum / static_cast<double>(kNumLabels);
}

EvalReport evaluate(std::span<const LabelVector> truth, std::span<const LabelVector> pred,
                    std::span<const ScoreVector> scores) {
  check_shapes(truth.size(), pred.size(), "evaluate");
  check_shapes(truth.size(), scores.size(), "evaluate");
  EvalReport r;
  r.hamming_loss = hamming_loss(truth, pred);
  r.jaccard_sample_avg = jaccard_sample_avg(truth, pred);
  r.lrap = lrap(truth, scores);
  r.f1_macro = f1(truth, pred, Averaging::kMacro);
  r.f1_micro = f1(truth, pred, Averaging::kMicro);
  r.n_samples = truth.size();
  return r;
}

namespace serial {

double jaccard_sample_avg(std::span<const LabelVector> truth, std::span<const LabelVector> pred) {
  check_shapes(truth.size(), pred.size(), "jaccard");
  std::vector<double> values;
  values.reserve(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) values.push_back(jaccard_sample(truth[i], pred[i]));
  return mean_in_order(values);
}

double lrap(std::span<const LabelVector> truth, std::span<const ScoreVector> scores) {
  check_shapes(truth.size(), scores.size(), "lrap");
  check_finite(scores);
  std::vector<double> values;
  values.reserve(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) values.push_back(lrap_sample(truth[i], scores[i]));
  return mean_in_order(values);
}

EvalReport evaluate(std::span<const LabelVector> truth, std::span<const LabelVector> pred,
                    std::span<const ScoreVector> scores) {
  check_shapes(truth.size(), pred.size(), "evaluate");
  check_shapes(truth.size(), scores.size(), "evaluate");
  EvalReport r;
  r.hamming_loss = metrics::hamming_loss(truth, pred);
  r.jaccard_sample_avg = serial::jaccard_sample_avg(truth, pred);
  r.lrap = serial::lrap(truth, scores);
  r.f1_macro = metrics::f1(truth, pred, Averaging::kMacro);
  r.f1_micro = metrics::f1(truth, pred, Averaging::kMicro);
  r.n_samples = truth.size();
  return r;
}

}  // namespace serial

}  // namespace longsent::metrics
