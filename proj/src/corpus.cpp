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

#include "longsent/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "longsent/error.hpp"
#include "longsent/io.hpp"

namespace longsent {

namespace chr = std::chrono;

namespace {

struct StudyCountry {
  CountryCode::Kind kind;
  const char* code;
  const char* name;
};

constexpr std::array<StudyCountry, 6> kStudyCountries{{
    {CountryCode::Kind::kAU, "AU", "Australia"},
    {CountryCode::Kind::kBR, "BR", "Brazil"},
    {CountryCode::Kind::kIN, "IN", "India"},
    {CountryCode::Kind::kID, "ID", "Indonesia"},
    {CountryCode::Kind::kJP, "JP", "Japan"},
    {CountryCode::Kind::kGB, "GB", "United Kingdom"},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// Parses exactly `width` digits at `pos`.
bool digits(std::string_view s, std::size_t pos, std::size_t width, int& value) {
  if (pos + width > s.size()) return false;
  value = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    value = value * 10 + (s[i] - '0');
  }
  return true;
}

std::optional<chr::sys_days> make_date(int y, int m, int d) {
  const chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                                chr::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return chr::sys_days{ymd};
}

// M/D/YY or M/D/YYYY, as used by public case dashboards.
std::optional<chr::sys_days> parse_slash_date(std::string_view s) {
  const auto parts = io::split(s, '/');
  if (parts.size() != 3) return std::nullopt;
  int v[3];
  for (int i = 0; i < 3; ++i) {
    const auto& p = parts[static_cast<std::size_t>(i)];
    if (p.empty() || p.size() > 4) return std::nullopt;
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v[i]);
    if (ec != std::errc() || ptr != p.data() + p.size()) return std::nullopt;
  }
  int year = v[2];
  if (parts[2].size() == 2) year += 2000;
  return make_date(year, v[0], v[1]);
}

std::optional<chr::sys_days> parse_any_date(std::string_view s) {
  s = io::trim(s);
  if (auto d = parse_date(s)) return d;
  return parse_slash_date(s);
}

}  // namespace

// ---------------------------------------------------------------- CountryCode

CountryCode::CountryCode(Kind kind) : kind_(kind) {
  for (const auto& c : kStudyCountries) {
    if (c.kind == kind) code_ = c.code;
  }
}

std::optional<CountryCode> CountryCode::from_code(std::string_view code) {
  const std::string up = upper(io::trim(code));
  if (up == "UK") return CountryCode(Kind::kGB);
  for (const auto& c : kStudyCountries) {
    if (up == c.code) return CountryCode(c.kind);
  }
  if (up.size() != 2 || !std::isalpha(static_cast<unsigned char>(up[0])) ||
      !std::isalpha(static_cast<unsigned char>(up[1]))) {
    return std::nullopt;
  }
  CountryCode other;
  other.kind_ = Kind::kOther;
  other.code_ = up;
  return other;
}

std::optional<CountryCode> CountryCode::from_name(std::string_view name) {
  const std::string low = lower(io::trim(name));
  for (const auto& c : kStudyCountries) {
    if (low == lower(c.name)) return CountryCode(c.kind);
  }
  if (low == "great britain" || low == "england") return CountryCode(Kind::kGB);
  return from_code(name);
}

const std::vector<CountryCode>& CountryCode::study_countries() {
  static const std::vector<CountryCode> all = [] {
    std::vector<CountryCode> v;
    for (const auto& c : kStudyCountries) v.emplace_back(c.kind);
    std::sort(v.begin(), v.end());
    return v;
  }();
  return all;
}

std::string CountryCode::display_name() const {
  for (const auto& c : kStudyCountries) {
    if (c.kind == kind_) return c.name;
  }
  return code_;
}

// ------------------------------------------------------------------- MonthKey

MonthKey MonthKey::of(Timestamp t) {
  const chr::year_month_day ymd{chr::floor<chr::days>(t)};
  return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month()))};
}

std::optional<MonthKey> MonthKey::parse(std::string_view text) {
  int y = 0, m = 0;
  if (text.size() != 7 || text[4] != '-' || !digits(text, 0, 4, y) || !digits(text, 5, 2, m)) return std::nullopt;
  if (m < 1 || m > 12) return std::nullopt;
  return MonthKey{y, m};
}

MonthKey MonthKey::next() const {
  return month == 12 ? MonthKey{year + 1, 1} : MonthKey{year, month + 1};
}

std::string MonthKey::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

std::vector<MonthKey> MonthRange::months() const {
  std::vector<MonthKey> out;
  for (MonthKey m = first; m <= last; m = m.next()) out.push_back(m);
  return out;
}

DateWindow DateWindow::study_default() {
  return {*make_date(2020, 3, 1), *make_date(2022, 2, 28)};
}

bool DateWindow::contains(Timestamp t) const {
  const auto day = chr::floor<chr::days>(t);
  return begin <= day && day <= end;
}

MonthRange DateWindow::months() const {
  return {MonthKey::of(Timestamp{begin}), MonthKey::of(Timestamp{end})};
}

std::optional<chr::sys_days> parse_date(std::string_view s) {
  int y = 0, m = 0, d = 0;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!digits(s, 0, 4, y) || !digits(s, 5, 2, m) || !digits(s, 8, 2, d)) return std::nullopt;
  return make_date(y, m, d);
}

std::optional<Timestamp> parse_timestamp(std::string_view s) {
  s = io::trim(s);
  if (s.size() < 10) return std::nullopt;
  const auto day = parse_date(s.substr(0, 10));
  if (!day) return std::nullopt;
  Timestamp t{*day};
  std::size_t pos = 10;
  if (pos == s.size()) return t;
  if (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ') return std::nullopt;
  ++pos;
  int hh = 0, mm = 0, ss = 0;
  if (!digits(s, pos, 2, hh) || pos + 2 >= s.size() || s[pos + 2] != ':' || !digits(s, pos + 3, 2, mm)) {
    return std::nullopt;
  }
  pos += 5;
  if (pos < s.size() && s[pos] == ':') {
    if (!digits(s, pos + 1, 2, ss)) return std::nullopt;
    pos += 3;
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  ss = std::min(ss, 59);
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) return std::nullopt;
  }
  t += chr::hours{hh} + chr::minutes{mm} + chr::seconds{ss};
  if (pos == s.size()) return t;
  if ((s[pos] == 'Z' || s[pos] == 'z') && pos + 1 == s.size()) return t;
  if (s[pos] == '+' || s[pos] == '-') {
    const int sign = s[pos] == '+' ? 1 : -1;
    int oh = 0, om = 0;
    if (!digits(s, pos + 1, 2, oh)) return std::nullopt;
    std::size_t mpos = pos + 3;
    if (mpos < s.size() && s[mpos] == ':') ++mpos;
    if (!digits(s, mpos, 2, om) || mpos + 2 != s.size() || oh > 23 || om > 59) return std::nullopt;
    return t - sign * (chr::hours{oh} + chr::minutes{om});
  }
  return std::nullopt;
}

std::string format_timestamp(Timestamp t) {
  const auto day = chr::floor<chr::days>(t);
  const chr::year_month_day ymd{day};
  const chr::hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

// ----------------------------------------------------------------- ingestion

PostFormat parse_post_format(std::string_view tag) {
  const std::string low = lower(io::trim(tag));
  if (low == "csv") return PostFormat::kCsv;
  if (low == "jsonl") return PostFormat::kJsonl;
  throw UsageError("unknown post format '" + std::string(tag) + "' (expected csv or jsonl)");
}

PostFormat guess_post_format(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  return (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") ? PostFormat::kJsonl : PostFormat::kCsv;
}

namespace {

// Shared validation for one candidate row; returns a warning on rejection.
std::optional<std::string> build_post(std::string id, std::string text, std::string_view ts,
                                      std::string_view country, const DateWindow& window, RawPost& out) {
  if (io::trim(id).empty()) return "empty id";
  const auto t = parse_timestamp(ts);
  if (!t) return "unparseable timestamp '" + std::string(ts) + "'";
  if (!window.contains(*t)) return "timestamp " + format_timestamp(*t) + " outside window";
  const auto c = CountryCode::from_name(country);
  if (!c) return "unknown country '" + std::string(country) + "'";
  out = RawPost{std::string(io::trim(id)), std::move(text), *t, *c};
  return std::nullopt;
}

IngestResult parse_csv_posts(std::string_view content, const DateWindow& window) {
  IngestResult result;
  auto records = io::parse_csv(content);
  if (records.empty()) return result;

  const auto& header = records.front().fields;
  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::string name = lower(io::trim(header[i]));
    if (i == 0 && name.rfind("\xEF\xBB\xBF", 0) == 0) name.erase(0, 3);  // BOM
    column.emplace(name, i);
  }
  for (const char* required : {"id", "text", "timestamp", "country"}) {
    if (!column.count(required)) throw IoError(std::string("post CSV header lacks column '") + required + "'");
  }
  const std::size_t id_col = column["id"], text_col = column["text"], ts_col = column["timestamp"],
                    country_col = column["country"];

  for (std::size_t r = 1; r < records.size(); ++r) {
    auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      ++result.skipped;
      result.warnings.push_back("line " + std::to_string(rec.line) + ": expected " + std::to_string(header.size()) +
                                " fields, got " + std::to_string(rec.fields.size()));
      continue;
    }
    RawPost post;
    if (auto why = build_post(std::move(rec.fields[id_col]), std::move(rec.fields[text_col]), rec.fields[ts_col],
                              rec.fields[country_col], window, post)) {
      ++result.skipped;
      result.warnings.push_back("line " + std::to_string(rec.line) + ": " + *why);
      continue;
    }
    result.posts.push_back(std::move(post));
  }
  return result;
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  return {};
}

IngestResult parse_jsonl_posts(std::string_view content, const DateWindow& window) {
  IngestResult result;
  std::size_t n = 0;
  for (const auto& raw : io::split(content, '\n')) {
    ++n;
    if (io::trim(raw).empty()) continue;
    const auto where = "line " + std::to_string(n) + ": ";
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error&) {
      ++result.skipped;
      result.warnings.push_back(where + "malformed JSON");
      continue;
    }
    if (!obj.is_object() || !obj.contains("id") || !obj.contains("text") || !obj.contains("timestamp") ||
        !obj.contains("country") || !obj["text"].is_string() || !obj["timestamp"].is_string() ||
        !obj["country"].is_string()) {
      ++result.skipped;
      result.warnings.push_back(where + "missing or mistyped id/text/timestamp/country");
      continue;
    }
    RawPost post;
    if (auto why = build_post(json_scalar(obj["id"]), obj["text"].get<std::string>(),
                              obj["timestamp"].get<std::string>(), obj["country"].get<std::string>(), window, post)) {
      ++result.skipped;
      result.warnings.push_back(where + *why);
      continue;
    }
    result.posts.push_back(std::move(post));
  }
  return result;
}

}  // namespace

IngestResult parse_posts(std::string_view content, PostFormat format, const DateWindow& window) {
  return format == PostFormat::kCsv ? parse_csv_posts(content, window) : parse_jsonl_posts(content, window);
}

IngestResult ingest_posts(const std::filesystem::path& path, PostFormat format, const DateWindow& window) {
  return parse_posts(io::read_file(path), format, window);
}

std::string serialize_posts(const std::vector<RawPost>& posts, PostFormat format) {
  std::string out;
  if (format == PostFormat::kCsv) {
    out = "id,text,timestamp,country\n";
    for (const auto& p : posts) out += io::csv_row({p.id, p.text, format_timestamp(p.timestamp), p.country.code()});
    return out;
  }
  for (const auto& p : posts) {
    nlohmann::ordered_json obj;
    obj["id"] = p.id;
    obj["text"] = p.text;
    obj["timestamp"] = format_timestamp(p.timestamp);
    obj["country"] = p.country.code();
    out += obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out.push_back('\n');
  }
  return out;
}

// ------------------------------------------------------------- deduplication

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<RawPost> deduplicate(const std::vector<RawPost>& posts) {
  std::unordered_set<std::string> seen_ids;
  std::unordered_set<std::string> seen_texts;
  std::vector<RawPost> kept;
  for (const auto& p : posts) {
    if (!seen_ids.insert(p.id).second) continue;
    if (!seen_texts.insert(collapse_whitespace(p.text)).second) continue;
    kept.push_back(p);
  }
  return kept;
}

std::map<CountryCode, CountrySummary> summarize_counts(const std::vector<RawPost>& ingested,
                                                       const std::vector<RawPost>& deduplicated) {
  std::map<CountryCode, CountrySummary> out;
  for (const auto& p : ingested) ++out[p.country].ingested;
  for (const auto& p : deduplicated) ++out[p.country].deduplicated;
  return out;
}

// --------------------------------------------------------------- case series

CaseIngestResult parse_cases(std::string_view content, const std::set<CountryCode>& country_filter) {
  const std::set<CountryCode> wanted =
      country_filter.empty()
          ? std::set<CountryCode>(CountryCode::study_countries().begin(), CountryCode::study_countries().end())
          : country_filter;

  CaseIngestResult result;
  const auto records = io::parse_csv(content);
  if (records.empty()) throw IoError("case CSV is empty");

  const auto& header = records.front().fields;
  std::optional<std::size_t> country_col;
  std::vector<std::pair<std::size_t, chr::sys_days>> date_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = lower(io::trim(header[i]));
    if (name == "country/region" || name == "country_region" || name == "country") {
      country_col = i;
    } else if (auto d = parse_any_date(header[i])) {
      date_cols.emplace_back(i, *d);
    }
  }
  if (!country_col) throw IoError("case CSV header lacks a country column");
  if (date_cols.empty()) throw IoError("case CSV header has no date columns");
  std::sort(date_cols.begin(), date_cols.end(), [](const auto& a, const auto& b) { return a.second < b.second; });

  // Cumulative totals per country per date column (sorted order).
  std::map<CountryCode, std::vector<double>> totals;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& fields = records[r].fields;
    if (fields.size() <= *country_col) continue;
    const auto country = CountryCode::from_name(fields[*country_col]);
    if (!country || !wanted.count(*country)) continue;
    auto& acc = totals[*country];
    acc.resize(date_cols.size(), 0.0);
    double carry = 0.0;
    for (std::size_t k = 0; k < date_cols.size(); ++k) {
      const std::size_t col = date_cols[k].first;
      if (col < fields.size()) {
        const auto v = io::trim(fields[col]);
        double parsed = 0.0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), parsed);
        if (!v.empty() && ec == std::errc() && ptr == v.data() + v.size()) carry = parsed;
      }
      acc[k] += carry;
    }
  }

  for (const auto& country : wanted) {
    CaseSeries series{country, {}};
    const auto it = totals.find(country);
    if (it == totals.end()) {
      result.warnings.push_back("no case rows for " + country.code());
      result.series.push_back(std::move(series));
      continue;
    }
    // Cumulative value on the last available day of each month.
    std::map<MonthKey, double> month_end;
    for (std::size_t k = 0; k < date_cols.size(); ++k) {
      month_end[MonthKey::of(Timestamp{date_cols[k].second})] = it->second[k];
    }
    const MonthRange span{month_end.begin()->first, month_end.rbegin()->first};
    double previous = month_end.begin()->second;
    for (const MonthKey m : span.months()) {
      if (m == span.first) continue;
      const auto found = month_end.find(m);
      const double current = found == month_end.end() ? previous : found->second;
      auto diff = static_cast<std::int64_t>(std::llround(current - previous));
      if (diff < 0) {
        ++result.clamped_months;
        result.warnings.push_back(country.code() + " " + m.to_string() + ": cumulative count fell by " +
                                  std::to_string(-diff) + ", clamped to 0");
        diff = 0;
      }
      series.monthly_new_cases[m] = diff;
      previous = current;
    }
    result.series.push_back(std::move(series));
  }
  return result;
}

CaseIngestResult ingest_cases(const std::filesystem::path& path, const std::set<CountryCode>& country_filter) {
  return parse_cases(io::read_file(path), country_filter);
}

}  // namespace longsent
