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

// Small file, CSV and number-formatting helpers shared by every stage.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace longsent::io {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

struct CsvRecord {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// RFC 4180: quoted fields may hold commas, doubled quotes and newlines.
// Accepts both LF and CRLF line ends. Blank lines produce no record.
std::vector<CsvRecord> parse_csv(std::string_view text);

std::string csv_field(std::string_view value);
std::string csv_row(const std::vector<std::string>& fields);

// Shortest representation that round-trips to the same double.
std::string format_double(double value);

struct TsvEntry {
  std::size_t line = 0;
  std::string key;
  std::string value;
};

// `key<TAB>value` lines. Blank lines and lines starting with '#' are skipped.
// A line without a tab is an IoError naming the file and line.
std::vector<TsvEntry> read_tsv(const std::filesystem::path& path);

// One entry per non-blank, non-comment line, surrounding whitespace trimmed.
std::vector<std::pair<std::size_t, std::string>> read_lines(const std::filesystem::path& path);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace longsent::io
