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

#include "longsent/polarity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "longsent/error.hpp"
#include "longsent/io.hpp"

namespace longsent {

PolarityWeights PolarityWeights::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("weights are not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("weights must be a JSON object of label -> integer");
  PolarityWeights w;
  for (const auto& [name, value] : doc.items()) {
    const auto label = parse_label(name);
    if (!label) throw UsageError("weights: unknown label '" + name + "'");
    if (!value.is_number_integer()) throw UsageError("weights: value for '" + name + "' must be an integer");
    w.weights[index_of(*label)] = value.get<int>();
  }
  return w;
}

PolarityWeights PolarityWeights::load(const std::filesystem::path& path) {
  try {
    return from_json(io::read_file(path));
  } catch (const UsageError& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

double custom_polarity(const LabelVector& labels, const PolarityWeights& weights) {
  int sum = 0;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (labels.test(i)) sum += weights.weights[i];
  }
  return std::clamp(static_cast<double>(sum) / static_cast<double>(kNumLabels), -1.0, 1.0);
}

PolarityLexicon load_polarity_lexicon(const std::filesystem::path& path) {
  PolarityLexicon lexicon;
  for (const auto& e : io::read_tsv(path)) {
    const auto where = path.string() + ":" + std::to_string(e.line) + ": ";
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), value);
    if (ec != std::errc() || ptr != e.value.data() + e.value.size() || !(value >= -1.0 && value <= 1.0)) {
      throw UsageError(where + "value must be a number in [-1, 1]");
    }
    if (!lexicon.emplace(e.key, value).second) throw UsageError(where + "duplicate token '" + e.key + "'");
  }
  return lexicon;
}

double lexicon_polarity(std::string_view text, const PolarityLexicon& lexicon) {
  double sum = 0.0;
  std::size_t matched = 0;
  std::string token;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ') ++i;
    if (i == start) break;
    token.assign(text.substr(start, i - start));
    const auto it = lexicon.find(token);
    if (it == lexicon.end()) continue;
    sum += it->second;
    ++matched;
  }
  return matched == 0 ? 0.0 : sum / static_cast<double>(matched);
}

namespace {

void check_lengths(std::size_t labels, std::size_t texts) {
  if (labels != texts) throw UsageError("score_corpus: labels and texts differ in length");
}

}  // namespace

std::vector<PolarityPair> score_corpus(std::span<const LabelVector> labels, std::span<const std::string> texts,
                                       const PolarityWeights& weights, const PolarityLexicon& lexicon) {
  check_lengths(labels.size(), texts.size());
  std::vector<PolarityPair> out(labels.size());
  const auto n = static_cast<std::int64_t>(labels.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = {custom_polarity(labels[k], weights), lexicon_polarity(texts[k], lexicon)};
  }
  return out;
}

namespace serial {

std::vector<PolarityPair> score_corpus(std::span<const LabelVector> labels, std::span<const std::string> texts,
                                       const PolarityWeights& weights, const PolarityLexicon& lexicon) {
  check_lengths(labels.size(), texts.size());
  std::vector<PolarityPair> out;
  out.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.push_back({custom_polarity(labels[i], weights), lexicon_polarity(texts[i], lexicon)});
  }
  return out;
}

}  // namespace serial

}  // namespace longsent
