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
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "longsent/corpus.hpp"

namespace longsent {

struct NormalizedPost {
  std::string post_id;
  std::string text;                 // [a-z0-9 ], single spaces, no edge spaces
  std::vector<std::string> tokens;  // text split on ' '
  bool empty = false;

  friend bool operator==(const NormalizedPost&, const NormalizedPost&) = default;
};

/// Builds a NormalizedPost from already-normalized text.
NormalizedPost make_normalized(std::string post_id, std::string_view text);

/// Replacement tables for slang, contractions and emoji.
///
/// Contraction keys are stored lower-case with ASCII apostrophes; emoji keys
/// are raw UTF-8 codepoint sequences. Every expansion is lower-case ASCII.
class SubstitutionTable {
 public:
  /// The published minimum: the pairs every table must contain.
  static SubstitutionTable builtin();
  /// Loads `key<TAB>expansion` files. Duplicate keys or non lower-case
  /// expansions are UsageErrors naming the offending line. Emoji keys may be
  /// written literally or as `U+1F642` (space separated for sequences).
  static SubstitutionTable load(const std::filesystem::path& contractions,
                                const std::filesystem::path& abbreviations,
                                const std::filesystem::path& emojis);

  void add_contraction(std::string_view key, std::string_view expansion);
  void add_abbreviation(std::string_view key, std::string_view expansion);
  void add_emoji(std::string_view utf8_key, std::string_view word);

  const std::map<std::string, std::string>& contractions() const { return contractions_; }
  const std::map<std::string, std::vector<std::string>>& abbreviations() const { return abbreviations_; }
  const std::map<std::string, std::string>& emojis() const { return emojis_; }

  std::size_t longest_emoji_bytes() const { return longest_emoji_; }

 private:
  std::map<std::string, std::string> contractions_;
  std::map<std::string, std::vector<std::string>> abbreviations_;
  std::map<std::string, std::string> emojis_;
  std::size_t longest_emoji_ = 0;
};

/// Deletes @mentions and URLs (http://, https://, www., t.co/) up to the next
/// whitespace. A '#' that starts a word is deleted; one glued to a preceding
/// word ("inflation#covid") becomes a space so the two words stay apart.
std::string strip_entities(std::string_view text);

/// Mapped emoji become " word ". Curly apostrophes fold to ASCII '\'' and
/// Unicode spaces/dashes/ellipses become ' '. Every other non-ASCII codepoint
/// (unmapped emoji, variation selectors, joiners, accented letters) is
/// deleted, as are bytes that are not valid UTF-8. Output is pure ASCII.
std::string map_emojis(std::string_view text, const SubstitutionTable& table);

/// Replaces contractions on word boundaries, longest match first,
/// case-insensitively; accepts ’ as well as '.
std::string expand_contractions(std::string_view text, const SubstitutionTable& table);

/// Exact-token replacement; multi-word expansions are spliced in place.
std::vector<std::string> expand_abbreviations(std::span<const std::string> tokens,
                                              const SubstitutionTable& table);

/// Full cleaning pipeline:
///   strip_entities -> map_emojis -> expand_contractions -> lowercase ->
///   punctuated abbreviations ("covid-19") -> non-[a-z0-9] to space ->
///   tokenize -> expand_abbreviations -> join.
/// A post that cleans to nothing comes back flagged `empty`.
NormalizedPost normalize(const RawPost& post, const SubstitutionTable& table);
std::string normalize_text(std::string_view text, const SubstitutionTable& table);

/// OpenMP over posts; result order matches input order.
std::vector<NormalizedPost> normalize_corpus(std::span<const RawPost> posts,
                                             const SubstitutionTable& table);

namespace serial {
std::vector<NormalizedPost> normalize_corpus(std::span<const RawPost> posts,
                                             const SubstitutionTable& table);
}  // namespace serial

}  // namespace longsent
