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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "longsent/classifier.hpp"

namespace longsent {

/// Signed integer weight per label.
struct PolarityWeights {
  std::array<int, kNumLabels> weights{3, 2, 0, -3, -2, -2, -1, -4, 0, 1};

  int operator[](SentimentLabel l) const { return weights[index_of(l)]; }

  /// JSON object mapping label name to integer. Labels not named keep their
  /// default. Unknown names or non-integer values are UsageErrors.
  static PolarityWeights load(const std::filesystem::path& path);
  static PolarityWeights from_json(std::string_view json);
};

/// clamp(sum of the weights of the set labels / 10, -1, 1).
double custom_polarity(const LabelVector& labels, const PolarityWeights& weights = {});

// Generic word-valence lexicon. This approximates an off-the-shelf polarity
// scorer; it does not reproduce any particular tool.
using PolarityLexicon = std::unordered_map<std::string, double>;

/// `token<TAB>value` lines with value in [-1, 1].
PolarityLexicon load_polarity_lexicon(const std::filesystem::path& path);

/// Mean value of the tokens found in the lexicon; 0 when none match.
double lexicon_polarity(std::string_view text, const PolarityLexicon& lexicon);

struct PolarityPair {
  double custom = 0.0;
  double lexicon = 0.0;
};

/// OpenMP over posts.
std::vector<PolarityPair> score_corpus(std::span<const LabelVector> labels, std::span<const std::string> texts,
                                       const PolarityWeights& weights, const PolarityLexicon& lexicon);

namespace serial {
std::vector<PolarityPair> score_corpus(std::span<const LabelVector> labels, std::span<const std::string> texts,
                                       const PolarityWeights& weights, const PolarityLexicon& lexicon);
}  // namespace serial

}  // namespace longsent
