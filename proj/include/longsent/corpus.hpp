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

#include <chrono>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace longsent {

using Timestamp = std::chrono::sys_seconds;

/// Country of a post. The six countries of the study are named variants;
/// anything else is carried as an upper-case ISO-3166 alpha-2 code.
class CountryCode {
 public:
  enum class Kind { kAU, kBR, kIN, kID, kJP, kGB, kOther };

  CountryCode() = default;
  explicit CountryCode(Kind kind);

  /// Accepts an alpha-2 code (case-insensitive; "UK" is taken as GB).
  static std::optional<CountryCode> from_code(std::string_view code);
  /// Accepts an English country name as used by public case dashboards
  /// ("Australia", "United Kingdom", ...) or falls back to from_code.
  static std::optional<CountryCode> from_name(std::string_view name);

  static const std::vector<CountryCode>& study_countries();

  Kind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }
  std::string display_name() const;

  friend bool operator==(const CountryCode& a, const CountryCode& b) { return a.code_ == b.code_; }
  friend std::strong_ordering operator<=>(const CountryCode& a, const CountryCode& b) {
    return a.code_ <=> b.code_;
  }

 private:
  Kind kind_ = Kind::kOther;
  std::string code_ = "ZZ";
};

struct MonthKey {
  int year = 1970;
  int month = 1;  // 1..12

  static MonthKey of(Timestamp t);
  /// "YYYY-MM"; nullopt on anything else.
  static std::optional<MonthKey> parse(std::string_view text);

  MonthKey next() const;
  std::string to_string() const;

  friend auto operator<=>(const MonthKey&, const MonthKey&) = default;
};

/// Inclusive range of months.
struct MonthRange {
  MonthKey first;
  MonthKey last;

  std::vector<MonthKey> months() const;
  bool contains(MonthKey m) const { return first <= m && m <= last; }
};

/// Inclusive UTC date window; `end` covers its whole day.
struct DateWindow {
  std::chrono::sys_days begin;
  std::chrono::sys_days end;

  static DateWindow study_default();  // 2020-03-01 .. 2022-02-28
  bool contains(Timestamp t) const;
  MonthRange months() const;
};

std::optional<std::chrono::sys_days> parse_date(std::string_view text);  // YYYY-MM-DD
/// RFC 3339 date-time: `YYYY-MM-DD[T ]hh:mm:ss[.frac](Z|+hh:mm|-hh:mm)`.
/// A bare date or a missing offset is taken as UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);  // YYYY-MM-DDThh:mm:ssZ

struct RawPost {
  std::string id;
  std::string text;
  Timestamp timestamp;
  CountryCode country;

  friend bool operator==(const RawPost&, const RawPost&) = default;
};

enum class PostFormat { kCsv, kJsonl };

/// "csv" / "jsonl" (case-insensitive); UsageError otherwise.
PostFormat parse_post_format(std::string_view tag);
/// Format from the file extension (.jsonl/.json -> jsonl, else csv).
PostFormat guess_post_format(const std::filesystem::path& path);

struct IngestResult {
  std::vector<RawPost> posts;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;  // one line per skipped row
};

/// Reads every parseable record in file order. Rows with a bad timestamp,
/// unknown country, empty id, wrong field count or a date outside `window`
/// are skipped with a warning. An unreadable file or a CSV header missing
/// one of id,text,timestamp,country raises IoError.
IngestResult ingest_posts(const std::filesystem::path& path, PostFormat format,
                          const DateWindow& window = DateWindow::study_default());

IngestResult parse_posts(std::string_view content, PostFormat format,
                         const DateWindow& window = DateWindow::study_default());

std::string serialize_posts(const std::vector<RawPost>& posts, PostFormat format);

/// Collapses whitespace runs to one space and trims both ends.
std::string collapse_whitespace(std::string_view text);

/// Keeps the first post per id, then drops later posts whose
/// whitespace-collapsed text equals that of an earlier kept post.
/// Input order is preserved.
std::vector<RawPost> deduplicate(const std::vector<RawPost>& posts);

struct CountrySummary {
  std::size_t ingested = 0;
  std::size_t deduplicated = 0;
};

std::map<CountryCode, CountrySummary> summarize_counts(const std::vector<RawPost>& ingested,
                                                       const std::vector<RawPost>& deduplicated);

struct CaseSeries {
  CountryCode country;
  std::map<MonthKey, std::int64_t> monthly_new_cases;
};

struct CaseIngestResult {
  std::vector<CaseSeries> series;  // one per requested country, ordered by code
  std::size_t clamped_months = 0;
  std::vector<std::string> warnings;
};

/// Reads a wide cumulative-cases CSV: one row per region, a country column
/// ("Country/Region", "Country_Region" or "country") and one column per date
/// (M/D/YY or YYYY-MM-DD). Rows of one country are summed per date. Monthly
/// new cases are the difference between the cumulative value on the last
/// available day of a month and that of the previous month, clamped at zero.
/// The first month in the file has no predecessor and yields no value.
/// An empty filter selects the six study countries.
CaseIngestResult ingest_cases(const std::filesystem::path& path,
                              const std::set<CountryCode>& country_filter = {});
CaseIngestResult parse_cases(std::string_view content,
                             const std::set<CountryCode>& country_filter = {});

}  // namespace longsent
