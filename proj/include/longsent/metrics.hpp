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

#include <cstddef>
#include <span>
#include <string>

#include "longsent/classifier.hpp"

namespace longsent::metrics {

// Conventions where the ratios are 0/0:
//   Jaccard sample with empty truth and prediction  -> 1.0
//   LRAP sample with empty truth                    -> 1.0
//   per-label F1 with TP = FP = FN = 0 (macro)      -> 0.0
//   micro F1 with TP = FP = FN = 0                  -> 0.0
// Shape mismatches and empty inputs raise UsageError.

struct EvalReport {
  double hamming_loss = 0.0;
  double jaccard_sample_avg = 0.0;
  double lrap = 0.0;
  double f1_macro = 0.0;
  double f1_micro = 0.0;
  std::size_t n_samples = 0;

  std::string to_json() const;  // flat object, fixed key order
};

enum class Averaging { kMacro, kMicro };

double hamming_loss(std::span<const LabelVector> truth, std::span<const LabelVector> pred);
double jaccard_sample_avg(std::span<const LabelVector> truth, std::span<const LabelVector> pred);
double lrap(std::span<const LabelVector> truth, std::span<const ScoreVector> scores);
double f1(std::span<const LabelVector> truth, std::span<const LabelVector> pred, Averaging averaging);

EvalReport evaluate(std::span<const LabelVector> truth, std::span<const LabelVector> pred,
                    std::span<const ScoreVector> scores);

// Per-sample work is spread with OpenMP; sums are taken in sample order so
// results are bit-identical to the serial versions below.
namespace serial {
double jaccard_sample_avg(std::span<const LabelVector> truth, std::span<const LabelVector> pred);
double lrap(std::span<const LabelVector> truth, std::span<const ScoreVector> scores);
EvalReport evaluate(std::span<const LabelVector> truth, std::span<const LabelVector> pred,
                    std::span<const ScoreVector> scores);
}  // namespace serial

}  // namespace longsent::metrics
