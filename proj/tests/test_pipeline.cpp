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

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fake_endpoint.hpp"
#include "golden.hpp"
#include "longsent/error.hpp"
#include "longsent/io.hpp"
#include "longsent/pipeline.hpp"
#include "test_support.hpp"

namespace longsent {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

struct CliResult {
  int status;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "longsent");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

fs::path sample() { return testing::bundled_data() / "sample"; }

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) files[e.path().filename().string()] = io::read_file(e.path());
  return files;
}

TEST(Config, ParsesKeysAndResolvesRelativePaths) {
  TempDir dir;
  std::ofstream(dir / "posts.csv") << "id,text,timestamp,country\n";
  auto c = PipelineConfig::from_json(
      R"({"posts": "posts.csv", "threshold": 0.3, "countries": ["AU", "uk"], "exclude_labels": ["joking"],
          "backend": "remote", "endpoint": "http://127.0.0.1:1", "batch_size": 8, "top_k": 5,
          "window_begin": "2021-01-01", "window_end": "2021-06-30", "svg": true, "threads": 2})",
      dir.path());
  EXPECT_EQ(c.posts, dir / "posts.csv");
  EXPECT_EQ(c.threshold, 0.3);
  EXPECT_EQ(c.countries.size(), 2u);
  EXPECT_TRUE(c.countries.count(*CountryCode::from_code("GB")));
  EXPECT_EQ(c.exclude_labels, LabelVector{SentimentLabel::kJoking});
  EXPECT_EQ(c.backend, BackendKind::kRemote);
  EXPECT_EQ(c.remote.batch_size, 8u);
  EXPECT_EQ(c.top_k, 5u);
  EXPECT_EQ(c.window.months().months().size(), 6u);
  c.resolve_and_validate();
  EXPECT_EQ(c.keywords, data_dir() / "keywords.txt");
}

TEST(Config, RejectsBadValues) {
  const fs::path base = ".";
  EXPECT_THROW(PipelineConfig::from_json(R"({"bogus": 1})", base), UsageError);
  EXPECT_THROW(PipelineConfig::from_json(R"({"threshold": "high"})", base), UsageError);
  EXPECT_THROW(PipelineConfig::from_json(R"({"countries": ["ZZZ"]})", base), UsageError);
  EXPECT_THROW(PipelineConfig::from_json(R"({"exclude_labels": ["happy"]})", base), UsageError);
  EXPECT_THROW(PipelineConfig::from_json(R"({"backend": "gpu"})", base), UsageError);
  EXPECT_THROW(PipelineConfig::from_json(R"({"batch_size": 0})", base), UsageError);
  EXPECT_THROW(PipelineConfig::from_json("not json", base), UsageError);
  for (double t : {0.0, 1.0, -0.2, 1.5}) {
    PipelineConfig c;
    c.threshold = t;
    EXPECT_THROW(c.resolve_and_validate(), UsageError) << t;
  }
  PipelineConfig missing;
  missing.posts = "/nonexistent/posts.csv";
  EXPECT_THROW(missing.resolve_and_validate(), UsageError);
  PipelineConfig remote;
  remote.backend = BackendKind::kRemote;
  EXPECT_THROW(remote.resolve_and_validate(), UsageError);
}

TEST(Records, JsonRoundTrip) {
  PostRecord r;
  r.id = "x1";
  r.timestamp = testing::at(2021, 7, 4);
  r.country = *CountryCode::from_code("ID");
  r.text = "kung flu is not funny";
  r.keywords = std::vector<std::string>{"kung flu"};
  r.scores = ScoreVector{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  r.labels = LabelVector{SentimentLabel::kSad, SentimentLabel::kJoking};
  r.polarity_custom = -0.1;
  r.polarity_lexicon = 0.25;
  const auto line = record_to_json(r);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  auto back = record_from_json(line);
  EXPECT_EQ(record_to_json(back), line);
  EXPECT_EQ(back.labels, r.labels);
  EXPECT_EQ(back.scores, r.scores);
  EXPECT_THROW(record_from_json(R"({"id": "a"})"), IoError);
}

TEST(Cli, NormalizeReproducesGoldenRow) {
  TempDir dir;
  io::write_file(dir / "posts.csv", "id,text,timestamp,country\n" +
                                        io::csv_row({"r1", golden::kRow1In, "2021-04-01T10:00:00Z", "IN"}) +
                                        io::csv_row({"r2", golden::kRow2In, "2021-04-02T10:00:00Z", "AU"}));
  auto r = cli({"normalize", "--input", (dir / "posts.csv").string(), "--out-dir", (dir / "out").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  auto records = read_records(dir / "out" / artifact::kNormalized);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].text, golden::kRow1Out);
  EXPECT_EQ(records[1].text, golden::kRow2Out);
  EXPECT_EQ(io::read_file(dir / "out" / artifact::kIngestSummary), "country,ingested,deduplicated\nAU,1,1\nIN,1,1\n");
}

TEST(Cli, EvaluatePerfectPredictionFixture) {
  TempDir dir;
  std::string jsonl;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    nlohmann::json row;
    std::vector<int> bits(kNumLabels, 0);
    std::vector<double> scores(kNumLabels, 0.1);
    bits[i] = 1;
    scores[i] = 0.9;
    row["labels"] = bits;
    row["scores"] = scores;
    jsonl += row.dump() + "\n";
  }
  io::write_file(dir / "eval.jsonl", jsonl);
  auto r = cli({"evaluate", "--input", (dir / "eval.jsonl").string(), "--out-dir", dir.path().string()});
  ASSERT_EQ(r.status, 0) << r.err;
  auto report = nlohmann::json::parse(io::read_file(dir / artifact::kEvalReport));
  EXPECT_EQ(report["hamming_loss"].get<double>(), 0.0);
  EXPECT_EQ(report["f1_micro"].get<double>(), 1.0);
  EXPECT_EQ(report["n_samples"].get<int>(), 10);
}

TEST(Cli, EvaluateCsvWithTextUsesBackend) {
  TempDir dir;
  std::string csv = "text,optimistic,thankful,empathetic,pessimistic,anxious,sad,annoyed,denial,official report,joking\n";
  csv += "\"Thanks, so grateful!\",0,1,0,0,0,0,0,0,0,0\n";
  csv += "nothing at all,0,0,0,0,0,0,0,0,0,0\n";
  io::write_file(dir / "eval.csv", csv);
  auto r = cli({"evaluate", "--input", (dir / "eval.csv").string(), "--out-dir", dir.path().string()});
  ASSERT_EQ(r.status, 0) << r.err;
  auto report = nlohmann::json::parse(io::read_file(dir / artifact::kEvalReport));
  EXPECT_EQ(report["n_samples"].get<int>(), 2);
  EXPECT_EQ(report["hamming_loss"].get<double>(), 0.0);
}

TEST(Cli, ExitCodesAndErrorLines) {
  TempDir dir;
  auto usage = cli({"report", "--config", (sample() / "config.json").string(), "--threshold", "1.5",
                    "--out-dir", dir.path().string()});
  EXPECT_EQ(usage.status, 2);
  EXPECT_EQ(usage.err.rfind("error class=config message=\"", 0), 0u) << usage.err;
  EXPECT_EQ(std::count(usage.err.begin(), usage.err.end(), '\n'), 1);

  EXPECT_EQ(cli({"frobnicate"}).status, 2);
  EXPECT_EQ(cli({}).status, 2);
  EXPECT_EQ(cli({"report", "--config", (dir / "missing.json").string()}).status, 2);

  auto io_error = cli({"filter", "--out-dir", (dir / "empty").string()});
  EXPECT_EQ(io_error.status, 3);
  EXPECT_EQ(io_error.err.rfind("error class=io ", 0), 0u) << io_error.err;

  std::ofstream(dir / "bad.csv") << "id,text\n1,hello\n";
  EXPECT_EQ(cli({"normalize", "--input", (dir / "bad.csv").string(), "--out-dir", dir.path().string()}).status, 3);

  EXPECT_EQ(cli({"--help"}).status, 0);
}

TEST(Cli, RemoteFailureExitsWithFour) {
  testing::FakeEndpoint server([](const auto&, int) { return testing::FakeEndpoint::Reply{503, "down"}; });
  TempDir dir;
  ASSERT_EQ(cli({"normalize", "--config", (sample() / "config.json").string(), "--out-dir", dir.path().string()})
                .status,
            0);
  ASSERT_EQ(cli({"filter", "--out-dir", dir.path().string()}).status, 0);
  io::write_file(dir / "remote.json", R"({"backend": "remote", "max_attempts": 2, "backoff_ms": 1})");
  auto r = cli({"classify", "--config", (dir / "remote.json").string(), "--endpoint", server.url(), "--out-dir",
                dir.path().string()});
  EXPECT_EQ(r.status, 4);
  EXPECT_EQ(r.err.rfind("error class=remote ", 0), 0u) << r.err;
}

TEST(Cli, RemoteBackendClassifiesInOrder) {
  testing::FakeEndpoint server([](const auto& texts, int) { return testing::FakeEndpoint::ok(texts); });
  TempDir dir;
  const std::string out = dir.path().string();
  ASSERT_EQ(cli({"normalize", "--config", (sample() / "config.json").string(), "--out-dir", out}).status, 0);
  ASSERT_EQ(cli({"filter", "--out-dir", out}).status, 0);
  auto r = cli({"classify", "--backend", "remote", "--endpoint", server.url(), "--batch-size", "16", "--out-dir", out});
  ASSERT_EQ(r.status, 0) << r.err;
  auto records = read_records(dir / artifact::kClassified);
  ASSERT_FALSE(records.empty());
  EXPECT_EQ(static_cast<std::size_t>(server.requests()), (records.size() + 15) / 16);
  for (const auto& rec : records) {
    ASSERT_TRUE(rec.scores.has_value());
    EXPECT_EQ(*rec.scores, testing::fake_scores(rec.text));
    EXPECT_EQ(*rec.labels, threshold(*rec.scores, 0.5));
  }
}

TEST(Pipeline, StagesComposeToTheSameArtifactsAsReport) {
  TempDir a, b;
  const std::string config = (sample() / "config.json").string();
  ASSERT_EQ(cli({"report", "--config", config, "--out-dir", a.path().string()}).status, 0);
  for (const char* stage : {"normalize", "filter", "ngram", "classify", "score", "aggregate"}) {
    auto r = cli({stage, "--config", config, "--out-dir", b.path().string()});
    ASSERT_EQ(r.status, 0) << stage << ": " << r.err;
  }
  auto full = snapshot(a.path());
  auto staged = snapshot(b.path());
  full.erase(artifact::kManifest);
  EXPECT_EQ(full, staged);
}

TEST(Pipeline, ReportIsDeterministicAcrossRunsAndThreads) {
  TempDir a, b;
  const std::string config = (sample() / "config.json").string();
  ASSERT_EQ(cli({"report", "--config", config, "--out-dir", a.path().string(), "--threads", "1"}).status, 0);
  ASSERT_EQ(cli({"report", "--config", config, "--out-dir", b.path().string(), "--threads", "4"}).status, 0);
  EXPECT_EQ(snapshot(a.path()), snapshot(b.path()));
}

TEST(Pipeline, ManifestListsThirteenExistingArtifacts) {
  TempDir dir;
  ASSERT_EQ(cli({"report", "--config", (sample() / "config.json").string(), "--out-dir", dir.path().string()}).status,
            0);
  auto manifest = nlohmann::json::parse(io::read_file(dir / artifact::kManifest));
  ASSERT_EQ(manifest["artifacts"].size(), 13u);
  std::set<std::string> names;
  for (const auto& entry : manifest["artifacts"]) {
    const auto path = entry["path"].get<std::string>();
    EXPECT_FALSE(fs::path(path).is_absolute());
    EXPECT_TRUE(fs::exists(dir / path)) << path;
    EXPECT_EQ(entry["schema"].get<std::string>(), entry["name"].get<std::string>() + "/v1");
    names.insert(entry["name"].get<std::string>());
    const std::string content = io::read_file(dir / path);
    if (path.ends_with(".csv")) {
      EXPECT_EQ(content.substr(0, content.find('\n')), entry["columns"].get<std::string>()) << path;
      EXPECT_GT(std::count(content.begin(), content.end(), '\n'), 1) << path;
    }
  }
  EXPECT_EQ(names.size(), 13u);
}

TEST(Pipeline, SvgFlagWritesCharts) {
  TempDir dir;
  ASSERT_EQ(cli({"report", "--config", (sample() / "config.json").string(), "--out-dir", dir.path().string(), "--svg"})
                .status,
            0);
  for (const char* f : {"monthly_counts.svg", "mean_polarity_custom.svg", "label_totals.svg"}) {
    const auto svg = io::read_file(dir / f);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u) << f;
  }
}

TEST(Pipeline, CountryFilterAndKeywordOverride) {
  TempDir dir;
  io::write_file(dir / "kw.txt", "wuhan\n");
  io::write_file(dir / "c.json", "{\"posts\": \"" + (sample() / "posts.csv").string() + "\", \"countries\": [\"AU\"]}");
  auto r = cli({"report", "--config", (dir / "c.json").string(), "--keywords", (dir / "kw.txt").string(), "--out-dir",
                (dir / "out").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  for (const auto& rec : read_records(dir / "out" / artifact::kFiltered)) {
    EXPECT_EQ(rec.country.code(), "AU");
    EXPECT_EQ(*rec.keywords, std::vector<std::string>{"wuhan"});
  }
  EXPECT_EQ(io::read_file(dir / "out" / artifact::kKeywordHits).substr(0, 14), "keyword,posts\n");
}

}  // namespace
}  // namespace longsent
