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


#include "longsent/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "longsent/error.hpp"
#include "longsent/io.hpp"
#include "longsent/keyword_filter.hpp"
#include "longsent/longitudinal.hpp"
#include "longsent/metrics.hpp"
#include "longsent/ngram.hpp"
#include "longsent/normalizer.hpp"
#include "longsent/polarity.hpp"

#ifndef LONGSENT_DATA_DIR
#define LONGSENT_DATA_DIR "data"
#endif

namespace longsent {

namespace fs = std::filesystem;
using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

const char* kBigrams = "bigrams.csv";
const char* kTrigrams = "trigrams.csv";
const char* kTrigramsByCountry = "trigrams_by_country.csv";
const char* kTrigramsByMonth = "trigrams_by_month.csv";
const char* kMonthlyCounts = "monthly_counts.csv";
const char* kCaseSeries = "case_series.csv";
const char* kCorrelation = "correlation.csv";
const char* kLabelHistogram = "label_histogram.csv";
const char* kLabelTotals = "label_totals.csv";
const char* kCooccurrence = "cooccurrence.json";
const char* kSentimentShare = "sentiment_share.csv";
const char* kPolarityDistribution = "polarity_distribution.csv";
const char* kMeanPolarity = "mean_polarity.csv";

std::string dump(const ojson& doc) { return doc.dump(-1, ' ', false, json::error_handler_t::replace); }

fs::path resolve(const fs::path& base, const std::string& value) {
  fs::path p(value);
  if (p.empty() || p.is_absolute()) return p;
  return base / p;
}

std::string require_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw UsageError("config key \"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::int64_t require_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw UsageError("config key \"" + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

std::size_t require_positive(const json& v, const std::string& key) {
  auto n = require_int(v, key);
  if (n < 1) throw UsageError("config key \"" + key + "\" must be at least 1");
  return static_cast<std::size_t>(n);
}

BackendKind parse_backend(const std::string& name) {
  if (name == "lexicon") return BackendKind::kLexicon;
  if (name == "remote") return BackendKind::kRemote;
  throw UsageError("unknown backend \"" + name + "\" (expected lexicon or remote)");
}

CountryCode parse_country(const std::string& code) {
  auto c = CountryCode::from_code(code);
  if (!c) throw UsageError("unknown country code \"" + code + "\"");
  return *c;
}

SentimentLabel parse_label_or_throw(const std::string& name) {
  auto l = parse_label(name);
  if (!l) throw UsageError("unknown sentiment label \"" + name + "\"");
  return *l;
}

std::chrono::sys_days parse_day(const std::string& text, const std::string& key) {
  auto d = parse_date(text);
  if (!d) throw UsageError("config key \"" + key + "\" must be a YYYY-MM-DD date");
  return *d;
}

void check_file(const fs::path& p, const char* what) {
  if (p.empty()) return;
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) throw UsageError(std::string(what) + " file not found: " + p.string());
}

std::string optional_cell(const std::optional<double>& v) { return v ? io::format_double(*v) : std::string(); }

LabelVector labels_from_json(const json& v, const std::string& where) {
  if (!v.is_array()) throw IoError(where + ": labels must be an array");
  LabelVector out;
  bool bits = !v.empty() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number_integer(); });
  if (bits) {
    std::vector<int> raw;
    for (const auto& x : v) raw.push_back(x.get<int>());
    try {
      return LabelVector::from_bits(raw);
    } catch (const UsageError& e) {
      throw IoError(where + ": " + e.what());
    }
  }
  for (const auto& x : v) {
    if (!x.is_string()) throw IoError(where + ": labels must be names or 0/1 values");
    auto l = parse_label(x.get<std::string>());
    if (!l) throw IoError(where + ": unknown label \"" + x.get<std::string>() + "\"");
    out.set(*l);
  }
  return out;
}

ScoreVector scores_from_json(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != kNumLabels) throw IoError(where + ": scores must hold 10 numbers");
  ScoreVector s{};
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (!v[i].is_number()) throw IoError(where + ": scores must hold 10 numbers");
    s[i] = v[i].get<double>();
  }
  if (!valid_scores(s)) throw IoError(where + ": scores must lie in [0, 1]");
  return s;
}

std::string escape_message(std::string_view msg) {
  std::string out;
  for (char c : msg) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<NormalizedPost> as_normalized(const std::vector<PostRecord>& records) {
  std::vector<NormalizedPost> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    auto n = make_normalized(r.id, r.text);
    n.empty = r.empty || n.empty;
    out.push_back(std::move(n));
  }
  return out;
}

std::vector<CountryCode> report_countries(const PipelineConfig& config, std::span<const ScoredPost> posts) {
  std::set<CountryCode> set = config.countries;
  if (set.empty()) {
    for (const auto& c : CountryCode::study_countries()) set.insert(c);
    for (const auto& p : posts) set.insert(p.country);
  }
  return {set.begin(), set.end()};
}

// Minimal SVG output for eyeballing a run; not part of the manifest.
std::string svg_line_chart(const std::string& title, const std::vector<MonthlySeries>& series) {
  const double width = 720, height = 360, left = 60, right = 120, top = 30, bottom = 40;
  std::vector<MonthKey> months;
  double lo = 0, hi = 0;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [m, v] : s.points) {
      if (std::find(months.begin(), months.end(), m) == months.end()) months.push_back(m);
      if (!v) continue;
      if (!any) lo = hi = *v;
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
      any = true;
    }
  }
  std::sort(months.begin(), months.end());
  if (hi == lo) hi = lo + 1;
  auto x_of = [&](std::size_t i) {
    double span = months.size() > 1 ? static_cast<double>(months.size() - 1) : 1.0;
    return left + (width - left - right) * static_cast<double>(i) / span;
  };
  auto y_of = [&](double v) { return top + (height - top - bottom) * (hi - v) / (hi - lo); };
  static const char* palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d",
                                  "#666666"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  svg << "<text x=\"" << left << "\" y=\"18\" font-size=\"14\">" << title << "</text>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"4\" y=\"" << top + 4 << "\" font-size=\"10\">" << io::format_double(hi) << "</text>\n";
  svg << "<text x=\"4\" y=\"" << height - bottom << "\" font-size=\"10\">" << io::format_double(lo) << "</text>\n";
  if (!months.empty()) {
    svg << "<text x=\"" << left << "\" y=\"" << height - 10 << "\" font-size=\"10\">" << months.front().to_string()
        << "</text>\n";
    svg << "<text x=\"" << width - right - 40 << "\" y=\"" << height - 10 << "\" font-size=\"10\">"
        << months.back().to_string() << "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = palette[k % 8];
    std::string path;
    bool pen_down = false;
    for (std::size_t i = 0; i < months.size(); ++i) {
      auto it = series[k].points.find(months[i]);
      if (it == series[k].points.end() || !it->second) {
        pen_down = false;
        continue;
      }
      std::ostringstream pt;
      pt << (pen_down ? " L" : " M") << x_of(i) << ' ' << y_of(*it->second);
      path += pt.str();
      pen_down = true;
    }
    if (!path.empty()) svg << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color << "\"/>\n";
    svg << "<text x=\"" << width - right + 8 << "\" y=\"" << top + 14 * static_cast<double>(k + 1)
        << "\" font-size=\"11\" fill=\"" << color << "\">" << series[k].scope() << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string svg_bar_chart(const std::string& title, const std::vector<std::pair<std::string, double>>& bars) {
  const double width = 720, height = 360, left = 40, top = 30, bottom = 80;
  double hi = 0;
  for (const auto& b : bars) hi = std::max(hi, b.second);
  if (hi <= 0) hi = 1;
  double slot = bars.empty() ? 0 : (width - 2 * left) / static_cast<double>(bars.size());
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  svg << "<text x=\"" << left << "\" y=\"18\" font-size=\"14\">" << title << "</text>\n";
  for (std::size_t i = 0; i < bars.size(); ++i) {
    double h = (height - top - bottom) * bars[i].second / hi;
    double x = left + slot * static_cast<double>(i);
    svg << "<rect x=\"" << x + 2 << "\" y=\"" << height - bottom - h << "\" width=\"" << slot - 4 << "\" height=\""
        << h << "\" fill=\"#4a7ab5\"/>\n";
    svg << "<text x=\"" << x + 2 << "\" y=\"" << height - bottom + 14 << "\" font-size=\"9\" transform=\"rotate(30 "
        << x + 2 << ' ' << height - bottom + 14 << ")\">" << bars[i].first << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

PipelineConfig PipelineConfig::from_json(const std::string& json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");

  PipelineConfig c;
  std::optional<std::string> window_begin, window_end;
  for (const auto& [key, v] : doc.items()) {
    if (key == "posts") c.posts = resolve(base_dir, require_string(v, key));
    else if (key == "posts_format") c.posts_format = parse_post_format(require_string(v, key));
    else if (key == "cases") c.cases = resolve(base_dir, require_string(v, key));
    else if (key == "eval_input") c.eval_input = resolve(base_dir, require_string(v, key));
    else if (key == "keywords") c.keywords = resolve(base_dir, require_string(v, key));
    else if (key == "contractions") c.contractions = resolve(base_dir, require_string(v, key));
    else if (key == "abbreviations") c.abbreviations = resolve(base_dir, require_string(v, key));
    else if (key == "emojis") c.emojis = resolve(base_dir, require_string(v, key));
    else if (key == "stopwords") c.stopwords = resolve(base_dir, require_string(v, key));
    else if (key == "sentiment_lexicon") c.sentiment_lexicon = resolve(base_dir, require_string(v, key));
    else if (key == "polarity_lexicon") c.polarity_lexicon = resolve(base_dir, require_string(v, key));
    else if (key == "weights") c.weights = resolve(base_dir, require_string(v, key));
    else if (key == "output_dir") c.output_dir = resolve(base_dir, require_string(v, key));
    else if (key == "backend") c.backend = parse_backend(require_string(v, key));
    else if (key == "endpoint") c.remote.endpoint = require_string(v, key);
    else if (key == "batch_size") c.remote.batch_size = require_positive(v, key);
    else if (key == "max_in_flight") c.remote.max_in_flight = require_positive(v, key);
    else if (key == "max_attempts") c.remote.max_attempts = static_cast<int>(require_positive(v, key));
    else if (key == "timeout_seconds") c.remote.timeout = std::chrono::seconds(require_positive(v, key));
    else if (key == "backoff_ms") c.remote.initial_backoff = std::chrono::milliseconds(require_int(v, key));
    else if (key == "threshold") {
      if (!v.is_number()) throw UsageError("config key \"threshold\" must be a number");
      c.threshold = v.get<double>();
    } else if (key == "window_begin") window_begin = require_string(v, key);
    else if (key == "window_end") window_end = require_string(v, key);
    else if (key == "countries") {
      if (!v.is_array()) throw UsageError("config key \"countries\" must be an array of codes");
      for (const auto& x : v) c.countries.insert(parse_country(require_string(x, key)));
    } else if (key == "exclude_labels") {
      if (!v.is_array()) throw UsageError("config key \"exclude_labels\" must be an array of labels");
      c.exclude_labels = LabelVector{};
      for (const auto& x : v) c.exclude_labels.set(parse_label_or_throw(require_string(x, key)));
    } else if (key == "top_k") c.top_k = require_positive(v, key);
    else if (key == "svg") {
      if (!v.is_boolean()) throw UsageError("config key \"svg\" must be true or false");
      c.svg = v.get<bool>();
    } else if (key == "threads") c.threads = static_cast<int>(require_int(v, key));
    else throw UsageError("unknown config key \"" + key + "\"");
  }
  if (window_begin) c.window.begin = parse_day(*window_begin, "window_begin");
  if (window_end) c.window.end = parse_day(*window_end, "window_end");
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const IoError&) {
    throw UsageError("cannot read config file " + path.string());
  }
  return from_json(text, path.parent_path());
}

void PipelineConfig::resolve_and_validate() {
  const fs::path dir = data_dir();
  auto fill = [&](fs::path& p, const char* name) {
    if (p.empty()) p = dir / name;
  };
  fill(keywords, "keywords.txt");
  fill(contractions, "contractions.tsv");
  fill(abbreviations, "abbreviations.tsv");
  fill(emojis, "emojis.tsv");
  fill(stopwords, "stopwords.txt");
  fill(sentiment_lexicon, "sentiment_lexicon.tsv");
  fill(polarity_lexicon, "polarity_lexicon.tsv");

  check_file(posts, "posts");
  check_file(cases, "cases");
  check_file(eval_input, "evaluation");
  check_file(keywords, "keywords");
  check_file(contractions, "contractions");
  check_file(abbreviations, "abbreviations");
  check_file(emojis, "emojis");
  check_file(stopwords, "stopwords");
  check_file(sentiment_lexicon, "sentiment lexicon");
  check_file(polarity_lexicon, "polarity lexicon");
  check_file(weights, "weights");

  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw UsageError("threshold must lie in (0, 1), got " + io::format_double(threshold));
  }
  if (window.end < window.begin) throw UsageError("date window ends before it begins");
  if (backend == BackendKind::kRemote && remote.endpoint.empty()) {
    throw UsageError("the remote backend needs an endpoint");
  }
  if (remote.batch_size == 0 || remote.max_in_flight == 0 || remote.max_attempts < 1) {
    throw UsageError("batch_size, max_in_flight and max_attempts must be at least 1");
  }
  if (top_k == 0) throw UsageError("top_k must be at least 1");
  if (threads < 0) throw UsageError("threads must not be negative");
}

fs::path data_dir() {
  if (const char* env = std::getenv("LONGSENT_DATA_DIR"); env && *env) return env;
  return LONGSENT_DATA_DIR;
}

// ---------------------------------------------------------------------------
// Records

std::string record_to_json(const PostRecord& r) {
  ojson doc;
  doc["id"] = r.id;
  doc["timestamp"] = format_timestamp(r.timestamp);
  doc["country"] = r.country.code();
  doc["text"] = r.text;
  doc["empty"] = r.empty;
  if (r.keywords) doc["keywords"] = *r.keywords;
  if (r.scores) doc["scores"] = *r.scores;
  if (r.labels) {
    ojson arr = ojson::array();
    for (auto l : r.labels->labels()) arr.push_back(std::string(label_name(l)));
    doc["labels"] = arr;
  }
  if (r.polarity_custom) doc["polarity_custom"] = *r.polarity_custom;
  if (r.polarity_lexicon) doc["polarity_lexicon"] = *r.polarity_lexicon;
  return dump(doc);
}

PostRecord record_from_json(const std::string& line) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("record is not JSON: ") + e.what());
  }
  if (!doc.is_object()) throw IoError("record must be a JSON object");
  auto get_string = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_string()) throw IoError(std::string("record lacks string \"") + key + "\"");
    return doc[key].get<std::string>();
  };
  PostRecord r;
  r.id = get_string("id");
  auto ts = parse_timestamp(get_string("timestamp"));
  if (!ts) throw IoError("record " + r.id + " has a bad timestamp");
  r.timestamp = *ts;
  auto country = CountryCode::from_code(get_string("country"));
  if (!country) throw IoError("record " + r.id + " has an unknown country");
  r.country = *country;
  r.text = get_string("text");
  if (doc.contains("empty")) {
    if (!doc["empty"].is_boolean()) throw IoError("record " + r.id + ": \"empty\" must be a boolean");
    r.empty = doc["empty"].get<bool>();
  }
  const std::string where = "record " + r.id;
  if (doc.contains("keywords")) {
    if (!doc["keywords"].is_array()) throw IoError(where + ": keywords must be an array");
    std::vector<std::string> kw;
    for (const auto& k : doc["keywords"]) {
      if (!k.is_string()) throw IoError(where + ": keywords must be strings");
      kw.push_back(k.get<std::string>());
    }
    r.keywords = std::move(kw);
  }
  if (doc.contains("scores")) r.scores = scores_from_json(doc["scores"], where);
  if (doc.contains("labels")) r.labels = labels_from_json(doc["labels"], where);
  auto get_number = [&](const char* key) -> std::optional<double> {
    if (!doc.contains(key)) return std::nullopt;
    if (!doc[key].is_number()) throw IoError(where + ": \"" + key + "\" must be a number");
    return doc[key].get<double>();
  };
  r.polarity_custom = get_number("polarity_custom");
  r.polarity_lexicon = get_number("polarity_lexicon");
  return r;
}

std::vector<PostRecord> read_records(const fs::path& path) {
  const std::string content = io::read_file(path);
  std::vector<PostRecord> out;
  std::size_t line_no = 0;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (io::trim(line).empty()) continue;
    try {
      out.push_back(record_from_json(line));
    } catch (const IoError& e) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_records(const fs::path& path, const std::vector<PostRecord>& records) {
  std::string body;
  for (const auto& r : records) {
    body += record_to_json(r);
    body += '\n';
  }
  io::write_file(path, body);
}

const std::vector<ArtifactEntry>& report_artifacts() {
  static const std::vector<ArtifactEntry> entries = {
      {"monthly_counts", kMonthlyCounts, "monthly_counts/v1", "month,scope,count"},
      {"case_series", kCaseSeries, "case_series/v1", "month,country,new_cases"},
      {"correlation", kCorrelation, "correlation/v1", "country,r,overlap,reason"},
      {"bigrams", kBigrams, "bigrams/v1", "ngram,count"},
      {"trigrams", kTrigrams, "trigrams/v1", "ngram,count"},
      {"trigrams_by_country", kTrigramsByCountry, "trigrams_by_country/v1", "country,rank,ngram,count"},
      {"trigrams_by_month", kTrigramsByMonth, "trigrams_by_month/v1", "month,rank,ngram,count"},
      {"label_histogram", kLabelHistogram, "label_histogram/v1", "labels,posts,percentage"},
      {"label_totals", kLabelTotals, "label_totals/v1", "scope,label,posts"},
      {"cooccurrence", kCooccurrence, "cooccurrence/v1",
       "{labels:[10 names],periods:[{period,first,last,counts:[10x10]}]}"},
      {"sentiment_share", kSentimentShare, "sentiment_share/v1", "country,label,percentage"},
      {"polarity_distribution", kPolarityDistribution, "polarity_distribution/v1",
       "id,country,month,custom,lexicon"},
      {"mean_polarity", kMeanPolarity, "mean_polarity/v1", "month,scope,metric,value"},
  };
  return entries;
}

// ---------------------------------------------------------------------------
// Stages

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
  config_.resolve_and_validate();
  if (config_.threads > 0) omp_set_num_threads(config_.threads);
}

fs::path Pipeline::out(const char* name) const { return config_.output_dir / name; }

std::unique_ptr<ClassifierBackend> Pipeline::make_backend() const {
  if (config_.backend == BackendKind::kRemote) return std::make_unique<RemoteBackend>(config_.remote);
  return std::make_unique<LexiconBackend>(load_sentiment_lexicon(config_.sentiment_lexicon));
}

void Pipeline::normalize(std::ostream& log, const fs::path& input) {
  const fs::path source = input.empty() ? config_.posts : input;
  if (source.empty()) throw UsageError("no posts file given (set \"posts\" or pass --input)");
  const PostFormat format = config_.posts_format.value_or(guess_post_format(source));
  IngestResult ingest = ingest_posts(source, format, config_.window);
  for (const auto& w : ingest.warnings) log << "warning: " << w << '\n';

  std::vector<RawPost> selected;
  for (auto& p : ingest.posts) {
    if (config_.countries.empty() || config_.countries.count(p.country)) selected.push_back(std::move(p));
  }
  const auto unique = deduplicate(selected);

  std::string summary = "country,ingested,deduplicated\n";
  for (const auto& [country, counts] : summarize_counts(selected, unique)) {
    summary += io::csv_row({country.code(), std::to_string(counts.ingested), std::to_string(counts.deduplicated)});
  }
  io::write_file(out(artifact::kIngestSummary), summary);

  const auto table = SubstitutionTable::load(config_.contractions, config_.abbreviations, config_.emojis);
  const auto normalized = normalize_corpus(unique, table);
  std::vector<PostRecord> records;
  records.reserve(unique.size());
  for (std::size_t i = 0; i < unique.size(); ++i) {
    PostRecord r;
    r.id = unique[i].id;
    r.timestamp = unique[i].timestamp;
    r.country = unique[i].country;
    r.text = normalized[i].text;
    r.empty = normalized[i].empty;
    records.push_back(std::move(r));
  }
  write_records(out(artifact::kNormalized), records);
  log << "normalize: " << selected.size() << " ingested, " << ingest.skipped << " skipped, " << unique.size()
      << " after dedup\n";
}

void Pipeline::filter(std::ostream& log, const fs::path& input) {
  auto records = read_records(input.empty() ? out(artifact::kNormalized) : input);
  const auto keywords = KeywordSet::load(config_.keywords);
  const auto posts = as_normalized(records);
  const auto result = filter_corpus(posts, keywords);

  std::vector<PostRecord> kept;
  kept.reserve(result.kept.size());
  for (std::size_t k = 0; k < result.kept.size(); ++k) {
    PostRecord r = records[result.kept[k]];
    r.keywords = result.matches[k].keywords;
    kept.push_back(std::move(r));
  }
  write_records(out(artifact::kFiltered), kept);

  std::vector<std::string> names(keywords.single_tokens.begin(), keywords.single_tokens.end());
  for (const auto& phrase : keywords.phrases) {
    std::string joined;
    for (const auto& t : phrase) joined += (joined.empty() ? "" : " ") + t;
    names.push_back(joined);
  }
  std::sort(names.begin(), names.end());
  std::string hits = "keyword,posts\n";
  for (const auto& name : names) {
    auto it = result.hit_counts.find(name);
    hits += io::csv_row({name, std::to_string(it == result.hit_counts.end() ? 0 : it->second)});
  }
  io::write_file(out(artifact::kKeywordHits), hits);
  log << "filter: kept " << kept.size() << " of " << records.size() << " posts\n";
}

void Pipeline::ngram(std::ostream& log, const fs::path& input) {
  const auto records = read_records(input.empty() ? out(artifact::kFiltered) : input);
  const auto stopwords = load_stopwords(config_.stopwords);
  const auto posts = as_normalized(records);

  io::write_file(out(kBigrams), ngram_csv(top_k(extract_ngrams(posts, 2, stopwords), config_.top_k)));
  io::write_file(out(kTrigrams), ngram_csv(top_k(extract_ngrams(posts, 3, stopwords), config_.top_k)));

  std::map<CountryCode, std::vector<NormalizedPost>> by_country;
  std::map<MonthKey, std::vector<NormalizedPost>> by_month;
  for (std::size_t i = 0; i < records.size(); ++i) {
    by_country[records[i].country].push_back(posts[i]);
    by_month[MonthKey::of(records[i].timestamp)].push_back(posts[i]);
  }
  auto sliced = [&](const std::string& header, const auto& groups, auto label) {
    std::string csv = header;
    for (const auto& [key, group] : groups) {
      const auto ranked = top_k(extract_ngrams(group, 3, stopwords), config_.top_k);
      for (std::size_t r = 0; r < ranked.size(); ++r) {
        csv += io::csv_row({label(key), std::to_string(r + 1), ranked[r].joined(), std::to_string(ranked[r].count)});
      }
    }
    return csv;
  };
  io::write_file(out(kTrigramsByCountry), sliced("country,rank,ngram,count\n", by_country,
                                                  [](const CountryCode& c) { return c.code(); }));
  io::write_file(out(kTrigramsByMonth),
                 sliced("month,rank,ngram,count\n", by_month, [](const MonthKey& m) { return m.to_string(); }));
  log << "ngram: " << records.size() << " posts, " << by_country.size() << " countries, " << by_month.size()
      << " months\n";
}

void Pipeline::classify(std::ostream& log, const fs::path& input) {
  auto records = read_records(input.empty() ? out(artifact::kFiltered) : input);
  std::vector<std::string> texts;
  texts.reserve(records.size());
  for (const auto& r : records) texts.push_back(r.text);
  const auto scores = make_backend()->classify(texts);
  if (scores.size() != records.size()) throw ProtocolError("backend returned the wrong number of score rows");
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].scores = scores[i];
    records[i].labels = threshold(scores[i], config_.threshold);
  }
  write_records(out(artifact::kClassified), records);
  log << "classify: " << records.size() << " posts\n";
}

void Pipeline::evaluate(std::ostream& log, const fs::path& input) {
  const fs::path source = input.empty() ? config_.eval_input : input;
  if (source.empty()) throw UsageError("no evaluation file given (set \"eval_input\" or pass --input)");

  std::vector<std::string> texts;
  std::vector<LabelVector> truth;
  std::vector<std::optional<ScoreVector>> given;
  const std::string content = io::read_file(source);
  if (guess_post_format(source) == PostFormat::kJsonl) {
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (io::trim(line).empty()) continue;
      const std::string where = source.string() + ":" + std::to_string(line_no);
      json doc;
      try {
        doc = json::parse(line);
      } catch (const json::parse_error&) {
        throw IoError(where + ": not a JSON object");
      }
      if (!doc.is_object() || !doc.contains("labels")) throw IoError(where + ": needs \"labels\"");
      truth.push_back(labels_from_json(doc["labels"], where));
      if (doc.contains("scores")) {
        given.emplace_back(scores_from_json(doc["scores"], where));
        texts.emplace_back();
      } else {
        if (!doc.contains("text") || !doc["text"].is_string()) throw IoError(where + ": needs \"text\" or \"scores\"");
        given.emplace_back();
        texts.push_back(doc["text"].get<std::string>());
      }
    }
  } else {
    const auto rows = io::parse_csv(content);
    if (rows.empty()) throw IoError(source.string() + ": empty file");
    const auto& header = rows.front().fields;
    std::optional<std::size_t> text_col;
    std::array<std::optional<std::size_t>, kNumLabels> label_col;
    for (std::size_t i = 0; i < header.size(); ++i) {
      std::string h(io::trim(header[i]));
      std::transform(h.begin(), h.end(), h.begin(), [](unsigned char c) { return std::tolower(c); });
      if (h == "text" || h == "tweet") text_col = i;
      else if (auto l = parse_label(h)) label_col[index_of(*l)] = i;
    }
    if (!text_col) throw IoError(source.string() + ": header lacks a text column");
    for (std::size_t k = 0; k < kNumLabels; ++k) {
      if (!label_col[k]) {
        throw IoError(source.string() + ": header lacks the " + std::string(label_name(all_labels()[k])) + " column");
      }
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& f = rows[r].fields;
      const std::string where = source.string() + ":" + std::to_string(rows[r].line);
      if (f.size() != header.size()) throw IoError(where + ": wrong number of fields");
      LabelVector lv;
      for (std::size_t k = 0; k < kNumLabels; ++k) {
        std::string v(io::trim(f[*label_col[k]]));
        if (v == "1") lv.set(k);
        else if (v != "0") throw IoError(where + ": label values must be 0 or 1");
      }
      truth.push_back(lv);
      texts.push_back(f[*text_col]);
      given.emplace_back();
    }
  }
  if (truth.empty()) throw IoError(source.string() + ": no labeled rows");

  std::vector<std::string> pending;
  std::vector<std::size_t> pending_index;
  const auto table = SubstitutionTable::load(config_.contractions, config_.abbreviations, config_.emojis);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (given[i]) continue;
    pending.push_back(normalize_text(texts[i], table));
    pending_index.push_back(i);
  }
  std::vector<ScoreVector> scores(truth.size());
  if (!pending.empty()) {
    const auto predicted = make_backend()->classify(pending);
    for (std::size_t k = 0; k < pending.size(); ++k) scores[pending_index[k]] = predicted[k];
  }
  std::vector<LabelVector> pred(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (given[i]) scores[i] = *given[i];
    pred[i] = threshold(scores[i], config_.threshold);
  }
  const auto report = metrics::evaluate(truth, pred, scores);
  io::write_file(out(artifact::kEvalReport), report.to_json());
  log << "evaluate: " << report.n_samples << " samples, hamming_loss " << io::format_double(report.hamming_loss)
      << '\n';
}

void Pipeline::score(std::ostream& log, const fs::path& input) {
  auto records = read_records(input.empty() ? out(artifact::kClassified) : input);
  const PolarityWeights weights = config_.weights.empty() ? PolarityWeights{} : PolarityWeights::load(config_.weights);
  const auto lexicon = load_polarity_lexicon(config_.polarity_lexicon);
  std::vector<LabelVector> labels;
  std::vector<std::string> texts;
  for (const auto& r : records) {
    if (!r.labels) throw IoError("record " + r.id + " has no labels; run classify first");
    labels.push_back(*r.labels);
    texts.push_back(r.text);
  }
  const auto pairs = score_corpus(labels, texts, weights, lexicon);
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].polarity_custom = pairs[i].custom;
    records[i].polarity_lexicon = pairs[i].lexicon;
  }
  write_records(out(artifact::kScored), records);
  log << "score: " << records.size() << " posts\n";
}

void Pipeline::aggregate(std::ostream& log, const fs::path& input) {
  const auto records = read_records(input.empty() ? out(artifact::kScored) : input);
  std::vector<ScoredPost> posts;
  posts.reserve(records.size());
  for (const auto& r : records) {
    if (!r.labels || !r.polarity_custom || !r.polarity_lexicon) {
      throw IoError("record " + r.id + " lacks labels or polarity; run score first");
    }
    posts.push_back({r.id, r.timestamp, r.country, *r.labels, *r.polarity_custom, *r.polarity_lexicon});
  }
  const PolarityWeights weights = config_.weights.empty() ? PolarityWeights{} : PolarityWeights::load(config_.weights);
  const MonthRange range = config_.window.months();
  const auto countries = report_countries(config_, posts);
  const Buckets buckets = bucket_by_month(posts);

  // Post counts.
  const CountSeries counts = monthly_counts(buckets, range, countries);
  {
    std::string csv = "month,scope,count\n";
    std::vector<const MonthlySeries*> all{&counts.global};
    for (const auto& s : counts.per_country) all.push_back(&s);
    for (const auto* s : all) {
      for (const auto& [m, v] : s->points) csv += io::csv_row({m.to_string(), s->scope(), optional_cell(v)});
    }
    io::write_file(out(kMonthlyCounts), csv);
  }

  // Case series and correlation with post counts.
  {
    std::string cases_csv = "month,country,new_cases\n";
    std::string corr_csv = "country,r,overlap,reason\n";
    std::map<CountryCode, MonthlySeries> case_monthly;
    if (!config_.cases.empty()) {
      const auto ingest = ingest_cases(config_.cases, std::set<CountryCode>(countries.begin(), countries.end()));
      for (const auto& w : ingest.warnings) log << "warning: " << w << '\n';
      for (const auto& series : ingest.series) {
        auto monthly = case_series_to_monthly(series, range);
        for (const auto& [m, v] : monthly.points) {
          cases_csv += io::csv_row({m.to_string(), series.country.code(), optional_cell(v)});
        }
        case_monthly.emplace(series.country, std::move(monthly));
      }
    }
    for (const auto& s : counts.per_country) {
      auto it = case_monthly.find(*s.country);
      Correlation c;
      if (it == case_monthly.end()) c.reason = "no case data";
      else c = correlate(s, it->second);
      corr_csv += io::csv_row({s.scope(), optional_cell(c.r), std::to_string(c.overlap), c.reason});
    }
    io::write_file(out(kCaseSeries), cases_csv);
    io::write_file(out(kCorrelation), corr_csv);
  }

  // Labels per post.
  std::vector<LabelVector> labels;
  labels.reserve(posts.size());
  for (const auto& p : posts) labels.push_back(p.labels);
  const auto histogram = label_count_histogram(labels);
  {
    std::string csv = "labels,posts,percentage\n";
    for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
      csv += io::csv_row({LabelCountHistogram::bucket_name(b), std::to_string(histogram.counts[b]),
                          histogram.total ? io::format_double(histogram.percentage(b)) : std::string()});
    }
    io::write_file(out(kLabelHistogram), csv);
  }

  const auto totals = label_totals(posts);
  {
    std::string csv = "scope,label,posts\n";
    for (const auto& [scope, row] : totals) {
      for (std::size_t k = 0; k < kNumLabels; ++k) {
        csv += io::csv_row({scope ? scope->code() : std::string("ALL"), std::string(label_name(all_labels()[k])),
                            std::to_string(row[k])});
      }
    }
    io::write_file(out(kLabelTotals), csv);
  }

  {
    ojson doc;
    ojson names = ojson::array();
    for (auto l : all_labels()) names.push_back(std::string(label_name(l)));
    doc["labels"] = names;
    doc["periods"] = ojson::array();
    const int first_year = range.first.year, last_year = range.last.year;
    for (int year = first_year; year <= last_year; ++year) {
      const auto m = cooccurrence(posts, calendar_year(year));
      ojson period;
      period["period"] = std::to_string(year);
      period["first"] = m.period.first.to_string();
      period["last"] = m.period.last.to_string();
      period["counts"] = m.counts;
      doc["periods"].push_back(period);
    }
    io::write_file(out(kCooccurrence), dump(doc) + "\n");
  }

  {
    LabelVector shown;
    for (auto l : all_labels()) {
      if (!config_.exclude_labels.test(l)) shown.set(l);
    }
    const auto share = sentiment_share(posts, shown, config_.exclude_labels);
    std::string csv = "country,label,percentage\n";
    for (const auto& [country, row] : share) {
      for (const auto& [label, value] : row) {
        csv += io::csv_row({country.code(), std::string(label_name(label)), optional_cell(value)});
      }
    }
    io::write_file(out(kSentimentShare), csv);
  }

  {
    std::string csv = "id,country,month,custom,lexicon\n";
    for (const auto& p : posts) {
      csv += io::csv_row({p.id, p.country.code(), MonthKey::of(p.timestamp).to_string(),
                          io::format_double(p.custom_polarity), io::format_double(p.lexicon_polarity)});
    }
    io::write_file(out(kPolarityDistribution), csv);
  }

  const auto custom = mean_polarity_series(posts, buckets, range, weights, config_.exclude_labels, countries);
  const auto lexical = mean_lexicon_polarity_series(posts, buckets, range, countries);
  {
    std::string csv = "month,scope,metric,value\n";
    for (const auto* group : {&custom, &lexical}) {
      for (const auto& s : *group) {
        for (const auto& [m, v] : s.points) csv += io::csv_row({m.to_string(), s.scope(), s.metric_name, optional_cell(v)});
      }
    }
    io::write_file(out(kMeanPolarity), csv);
  }

  if (config_.svg) {
    std::vector<MonthlySeries> count_lines{counts.global};
    count_lines.insert(count_lines.end(), counts.per_country.begin(), counts.per_country.end());
    io::write_file(out("monthly_counts.svg"), svg_line_chart("Posts per month", count_lines));
    io::write_file(out("mean_polarity_custom.svg"), svg_line_chart("Mean custom polarity", custom));
    io::write_file(out("mean_polarity_lexicon.svg"), svg_line_chart("Mean lexicon polarity", lexical));
    std::vector<std::pair<std::string, double>> bars;
    if (auto it = totals.find(std::nullopt); it != totals.end()) {
      for (std::size_t k = 0; k < kNumLabels; ++k) {
        bars.emplace_back(std::string(label_name(all_labels()[k])), static_cast<double>(it->second[k]));
      }
    }
    io::write_file(out("label_totals.svg"), svg_bar_chart("Posts per label", bars));
  }
  log << "aggregate: " << posts.size() << " posts, " << countries.size() << " countries\n";
}

void Pipeline::report(std::ostream& log) {
  normalize(log);
  filter(log);
  ngram(log);
  classify(log);
  score(log);
  aggregate(log);

  ojson doc;
  doc["schema"] = "manifest/v1";
  doc["artifacts"] = ojson::array();
  for (const auto& a : report_artifacts()) {
    if (!fs::exists(out(a.path.c_str()))) throw IoError("missing artifact " + a.path);
    ojson entry;
    entry["name"] = a.name;
    entry["path"] = a.path;
    entry["schema"] = a.schema;
    entry["columns"] = a.columns;
    doc["artifacts"].push_back(entry);
  }
  io::write_file(out(artifact::kManifest), doc.dump(2) + "\n");
  log << "report: manifest lists " << report_artifacts().size() << " artifacts\n";
}

// ---------------------------------------------------------------------------
// Command line

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Longitudinal sentiment pipeline for social-media posts"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, input, out_dir, backend, endpoint, keywords;
  std::optional<double> threshold;
  std::optional<std::size_t> batch_size, top_k;
  std::optional<int> threads;
  bool svg = false;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--input", input, "Stage input file (defaults to the previous stage's output)");
  app.add_option("--out-dir", out_dir, "Output directory");
  app.add_option("--threshold", threshold, "Label threshold in (0, 1)");
  app.add_option("--backend", backend, "lexicon or remote");
  app.add_option("--endpoint", endpoint, "Remote classifier base URL");
  app.add_option("--batch-size", batch_size, "Texts per remote request");
  app.add_option("--keywords", keywords, "Keyword file, one keyword per line");
  app.add_option("--top-k", top_k, "Rows per n-gram ranking");
  app.add_flag("--svg", svg, "Also write basic SVG charts");
  app.add_option("--threads", threads, "OpenMP thread count");

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"normalize", "Raw posts to normalized JSONL"},
      {"filter", "Keep posts with a keyword"},
      {"ngram", "Top bigrams and trigrams per slice"},
      {"classify", "Attach sentiment scores and labels"},
      {"evaluate", "Score a labeled file"},
      {"score", "Attach polarity scores"},
      {"aggregate", "Monthly series, shares and co-occurrence"},
      {"report", "Run every stage and write the manifest"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  auto fail = [&](const char* cls, const std::string& message, int status) {
    err << "error class=" << cls << " message=\"" << escape_message(message) << "\"\n";
    return status;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail(error_class_name(ErrorClass::kUsage), e.what(), exit_status(ErrorClass::kUsage));
  }

  try {
    PipelineConfig config = config_path.empty() ? PipelineConfig{} : PipelineConfig::load(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (threshold) config.threshold = *threshold;
    if (!backend.empty()) config.backend = parse_backend(backend);
    if (!endpoint.empty()) config.remote.endpoint = endpoint;
    if (batch_size) {
      if (*batch_size == 0) throw UsageError("--batch-size must be at least 1");
      config.remote.batch_size = *batch_size;
    }
    if (!keywords.empty()) config.keywords = keywords;
    if (top_k) config.top_k = *top_k;
    if (svg) config.svg = true;
    if (threads) config.threads = *threads;

    Pipeline pipeline(std::move(config));
    const std::string name = app.get_subcommands().front()->get_name();
    const fs::path in(input);
    if (name == "normalize") pipeline.normalize(out, in);
    else if (name == "filter") pipeline.filter(out, in);
    else if (name == "ngram") pipeline.ngram(out, in);
    else if (name == "classify") pipeline.classify(out, in);
    else if (name == "evaluate") pipeline.evaluate(out, in);
    else if (name == "score") pipeline.score(out, in);
    else if (name == "aggregate") pipeline.aggregate(out, in);
    else pipeline.report(out);
    return 0;
  } catch (const Error& e) {
    return fail(error_class_name(e.kind()), e.what(), exit_status(e.kind()));
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
}

}  // namespace longsent
