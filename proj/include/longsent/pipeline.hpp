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

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "longsent/classifier.hpp"
#include "longsent/corpus.hpp"
#include "longsent/remote_client.hpp"

namespace longsent {

enum class BackendKind { kLexicon, kRemote };

struct PipelineConfig {
  std::filesystem::path posts;
  std::optional<PostFormat> posts_format;  // from the extension when unset
  std::filesystem::path cases;             // optional
  std::filesystem::path eval_input;        // labeled file for `evaluate`

  // Resource files. Empty means the bundled file under data_dir().
  std::filesystem::path keywords;
  std::filesystem::path contractions;
  std::filesystem::path abbreviations;
  std::filesystem::path emojis;
  std::filesystem::path stopwords;
  std::filesystem::path sentiment_lexicon;
  std::filesystem::path polarity_lexicon;
  std::filesystem::path weights;  // optional override of the default weights

  BackendKind backend = BackendKind::kLexicon;
  RemoteOptions remote;
  double threshold = 0.5;
  DateWindow window = DateWindow::study_default();
  std::set<CountryCode> countries;  // empty keeps every country
  LabelVector exclude_labels{SentimentLabel::kOfficialReport};
  std::size_t top_k = 15;
  std::filesystem::path output_dir = "out";
  bool svg = false;
  int threads = 0;  // 0 leaves the OpenMP default

  /// Keys mirror the field names; relative paths resolve against
  /// `base_dir`. Unknown keys and wrongly typed values are UsageErrors.
  static PipelineConfig from_json(const std::string& json_text, const std::filesystem::path& base_dir);
  static PipelineConfig load(const std::filesystem::path& path);

  /// Fills empty resource paths with bundled defaults, then checks that
  /// every referenced file exists and the threshold is in (0, 1).
  void resolve_and_validate();
};

/// Directory holding the bundled tables; $LONGSENT_DATA_DIR overrides the
/// compiled-in location.
std::filesystem::path data_dir();

/// One line per post travelling between stages as JSONL.
struct PostRecord {
  std::string id;
  Timestamp timestamp;
  CountryCode country;
  std::string text;
  bool empty = false;
  std::optional<std::vector<std::string>> keywords;
  std::optional<ScoreVector> scores;
  std::optional<LabelVector> labels;
  std::optional<double> polarity_custom;
  std::optional<double> polarity_lexicon;
};

std::string record_to_json(const PostRecord& record);
PostRecord record_from_json(const std::string& line);
std::vector<PostRecord> read_records(const std::filesystem::path& path);
void write_records(const std::filesystem::path& path, const std::vector<PostRecord>& records);

/// Stage file names inside the output directory.
namespace artifact {
inline constexpr const char* kNormalized = "normalized.jsonl";
inline constexpr const char* kIngestSummary = "ingest_summary.csv";
inline constexpr const char* kFiltered = "filtered.jsonl";
inline constexpr const char* kKeywordHits = "keyword_hits.csv";
inline constexpr const char* kClassified = "classified.jsonl";
inline constexpr const char* kScored = "scored.jsonl";
inline constexpr const char* kEvalReport = "eval_report.json";
inline constexpr const char* kManifest = "manifest.json";
}  // namespace artifact

struct ArtifactEntry {
  std::string name;
  std::string path;    // relative to the output directory
  std::string schema;  // "<name>/v1"
  std::string columns; // CSV header or JSON shape summary
};

/// The data files behind every chart, in manifest order.
const std::vector<ArtifactEntry>& report_artifacts();

/// Runs the stages against one configuration. Each stage reads the previous
/// stage's file from the output directory unless `input` is given.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  const PipelineConfig& config() const { return config_; }

  void normalize(std::ostream& log, const std::filesystem::path& input = {});
  void filter(std::ostream& log, const std::filesystem::path& input = {});
  void ngram(std::ostream& log, const std::filesystem::path& input = {});
  void classify(std::ostream& log, const std::filesystem::path& input = {});
  void evaluate(std::ostream& log, const std::filesystem::path& input = {});
  void score(std::ostream& log, const std::filesystem::path& input = {});
  void aggregate(std::ostream& log, const std::filesystem::path& input = {});
  /// Every stage from raw posts to aggregates, then the manifest.
  void report(std::ostream& log);

 private:
  std::filesystem::path out(const char* name) const;
  std::unique_ptr<ClassifierBackend> make_backend() const;

  PipelineConfig config_;
};

/// `longsent <subcommand> --config <path> [overrides]`. Returns the exit
/// status; errors print one `error class=<c> message="..."` line to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace longsent
