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

#include "longsent/normalizer.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>

#include "longsent/error.hpp"
#include "longsent/io.hpp"

namespace longsent {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
char to_lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool is_clean_phrase(std::string_view s) {
  if (s.empty() || s.front() == ' ' || s.back() == ' ') return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ' ')) return false;
  }
  return s.find("  ") == std::string_view::npos;
}

struct Decoded {
  std::int32_t codepoint;  // -1 for an invalid sequence
  std::size_t length;
};

Decoded decode_utf8(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = 0;
  std::int32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {-1, 1};
  }
  if (i + len > s.size()) return {-1, 1};
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {-1, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// "U+1F642" or "U+2639 U+FE0F" to UTF-8; anything else is taken literally.
std::string emoji_key(std::string_view spec) {
  spec = io::trim(spec);
  if (spec.size() < 3 || (spec.substr(0, 2) != "U+" && spec.substr(0, 2) != "u+")) return std::string(spec);
  std::string out;
  for (const auto& part : io::split(spec, ' ')) {
    if (part.empty()) continue;
    if (part.size() < 3 || (part[0] != 'U' && part[0] != 'u') || part[1] != '+') {
      throw UsageError("bad codepoint notation '" + part + "'");
    }
    std::uint32_t cp = 0;
    auto [ptr, ec] = std::from_chars(part.data() + 2, part.data() + part.size(), cp, 16);
    if (ec != std::errc() || ptr != part.data() + part.size() || cp > 0x10FFFF) {
      throw UsageError("bad codepoint notation '" + part + "'");
    }
    append_utf8(out, cp);
  }
  return out;
}

// Curly apostrophes fold to ASCII so keys and text compare equal.
bool is_apostrophe(std::int32_t cp) { return cp == '\'' || cp == 0x2018 || cp == 0x2019 || cp == 0x02BC; }

bool is_unicode_separator(std::int32_t cp) {
  return cp == 0x00A0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) || (cp >= 0x2010 && cp <= 0x2015) ||
         cp == 0x201C || cp == 0x201D || cp == 0x2022 || cp == 0x2026 || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ') ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

// Replaces table keys that carry punctuation ("covid-19") before the
// punctuation itself is turned into spaces. Input is lower-case.
std::string expand_punctuated_abbreviations(std::string_view text, const SubstitutionTable& table) {
  std::vector<std::pair<std::string_view, const std::vector<std::string>*>> keys;
  for (const auto& [key, expansion] : table.abbreviations()) {
    if (std::any_of(key.begin(), key.end(), [](char c) { return !is_alnum(c); })) keys.emplace_back(key, &expansion);
  }
  if (keys.empty()) return std::string(text);
  std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });

  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    bool replaced = false;
    if (i == 0 || !is_alnum(text[i - 1])) {
      for (const auto& [key, expansion] : keys) {
        if (text.substr(i).substr(0, key.size()) != key) continue;
        const std::size_t end = i + key.size();
        if (end < text.size() && is_alnum(text[end])) continue;
        out.push_back(' ');
        out += join_tokens(*expansion);
        out.push_back(' ');
        i = end;
        replaced = true;
        break;
      }
    }
    if (!replaced) out.push_back(text[i++]);
  }
  return out;
}

}  // namespace

NormalizedPost make_normalized(std::string post_id, std::string_view text) {
  NormalizedPost post;
  post.post_id = std::move(post_id);
  post.tokens = split_tokens(text);
  post.text = join_tokens(post.tokens);
  post.empty = post.tokens.empty();
  return post;
}

// ------------------------------------------------------------ substitutions

void SubstitutionTable::add_contraction(std::string_view key, std::string_view expansion) {
  std::string canonical;
  for (std::size_t i = 0; i < key.size();) {
    const auto d = decode_utf8(key, i);
    if (is_apostrophe(d.codepoint)) {
      canonical.push_back('\'');
    } else if (d.codepoint >= 0 && d.codepoint < 0x80 && std::isalpha(d.codepoint)) {
      canonical.push_back(to_lower(static_cast<char>(d.codepoint)));
    } else {
      throw UsageError("contraction key '" + std::string(key) + "' may only hold letters and apostrophes");
    }
    i += d.length;
  }
  if (canonical.empty()) throw UsageError("empty contraction key");
  if (!is_clean_phrase(expansion)) {
    throw UsageError("contraction expansion '" + std::string(expansion) + "' is not lower-case ASCII");
  }
  if (!contractions_.emplace(canonical, std::string(expansion)).second) {
    throw UsageError("duplicate contraction key '" + canonical + "'");
  }
}

void SubstitutionTable::add_abbreviation(std::string_view key, std::string_view expansion) {
  const std::string k(io::trim(key));
  if (k.empty() || k.find(' ') != std::string::npos ||
      std::any_of(k.begin(), k.end(), [](char c) { return std::isupper(static_cast<unsigned char>(c)) || c < 0; })) {
    throw UsageError("abbreviation key '" + k + "' must be one lower-case ASCII token");
  }
  if (!is_clean_phrase(expansion)) {
    throw UsageError("abbreviation expansion '" + std::string(expansion) + "' is not lower-case ASCII");
  }
  if (!abbreviations_.emplace(k, split_tokens(expansion)).second) {
    throw UsageError("duplicate abbreviation key '" + k + "'");
  }
}

void SubstitutionTable::add_emoji(std::string_view utf8_key, std::string_view word) {
  const std::string key = emoji_key(utf8_key);
  if (key.empty()) throw UsageError("empty emoji key");
  if (!is_clean_phrase(word)) throw UsageError("emoji word '" + std::string(word) + "' is not lower-case ASCII");
  if (!emojis_.emplace(key, std::string(word)).second) {
    throw UsageError("duplicate emoji key '" + std::string(utf8_key) + "'");
  }
  longest_emoji_ = std::max(longest_emoji_, key.size());
}

SubstitutionTable SubstitutionTable::builtin() {
  SubstitutionTable t;
  t.add_contraction("ain't", "am not");
  t.add_contraction("i'll've", "i will have");
  t.add_abbreviation("lol", "laughing out loud");
  t.add_abbreviation("u2", "you too");
  t.add_abbreviation("rt", "retweet");
  t.add_abbreviation("asap", "as soon as possible");
  t.add_abbreviation("covid-19", "coronavirus");
  t.add_emoji("U+1F642", "smile");
  t.add_emoji("U+1F641", "sad");
  return t;
}

SubstitutionTable SubstitutionTable::load(const std::filesystem::path& contractions,
                                          const std::filesystem::path& abbreviations,
                                          const std::filesystem::path& emojis) {
  SubstitutionTable t;
  auto with_location = [](const std::filesystem::path& path, const io::TsvEntry& e, auto&& add) {
    try {
      add(e.key, e.value);
    } catch (const UsageError& err) {
      throw UsageError(path.string() + ":" + std::to_string(e.line) + ": " + err.what());
    }
  };
  for (const auto& e : io::read_tsv(contractions)) {
    with_location(contractions, e, [&](auto& k, auto& v) { t.add_contraction(k, v); });
  }
  for (const auto& e : io::read_tsv(abbreviations)) {
    with_location(abbreviations, e, [&](auto& k, auto& v) { t.add_abbreviation(k, v); });
  }
  for (const auto& e : io::read_tsv(emojis)) {
    with_location(emojis, e, [&](auto& k, auto& v) { t.add_emoji(k, v); });
  }
  // An expansion that is itself a key would make normalization non-idempotent.
  for (const auto& [key, expansion] : t.abbreviations_) {
    for (const auto& token : expansion) {
      if (t.abbreviations_.count(token)) {
        throw UsageError(abbreviations.string() + ": expansion of '" + key + "' contains key '" + token + "'");
      }
    }
  }
  return t;
}

// ------------------------------------------------------------------- stages

std::string strip_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  auto starts_url = [&](std::size_t pos) {
    if (pos > 0 && is_alnum(text[pos - 1])) return false;
    std::string head;
    for (std::size_t k = pos; k < text.size() && k < pos + 8; ++k) head.push_back(to_lower(text[k]));
    return head.rfind("http://", 0) == 0 || head.rfind("https://", 0) == 0 || head.rfind("www.", 0) == 0 ||
           head.rfind("t.co/", 0) == 0;
  };
  auto is_handle_char = [](char c) { return is_alnum(c) || c == '_'; };

  while (i < text.size()) {
    const char c = text[i];
    if (c == '@' && i + 1 < text.size() && is_handle_char(text[i + 1])) {
      ++i;
      while (i < text.size() && is_handle_char(text[i])) ++i;
      continue;
    }
    if (starts_url(i)) {
      while (i < text.size() && !is_space(text[i])) ++i;
      continue;
    }
    if (c == '#') {
      if (!out.empty() && !is_space(out.back())) out.push_back(' ');
      ++i;
      continue;
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

std::string map_emojis(std::string_view text, const SubstitutionTable& table) {
  std::string out;
  out.reserve(text.size());
  const auto& emojis = table.emojis();
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b = static_cast<unsigned char>(text[i]);
    if (b < 0x80) {
      out.push_back(text[i++]);
      continue;
    }
    // Longest mapped sequence starting here.
    bool mapped = false;
    for (std::size_t len = std::min(table.longest_emoji_bytes(), text.size() - i); len > 0; --len) {
      const auto it = emojis.find(std::string(text.substr(i, len)));
      if (it != emojis.end()) {
        out.push_back(' ');
        out += it->second;
        out.push_back(' ');
        i += len;
        mapped = true;
        break;
      }
    }
    if (mapped) continue;
    const auto d = decode_utf8(text, i);
    if (is_apostrophe(d.codepoint)) {
      out.push_back('\'');
    } else if (is_unicode_separator(d.codepoint)) {
      out.push_back(' ');
    }
    i += d.length;
  }
  return out;
}

std::string expand_contractions(std::string_view text, const SubstitutionTable& table) {
  constexpr std::size_t kMaxRun = 32;
  const auto& contractions = table.contractions();
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (i == 0 || !is_alnum(text[i - 1])) {
      // Canonical (lower-case, ASCII apostrophe) run of letters and
      // apostrophes, with the byte offset after each canonical char.
      std::string run;
      std::vector<std::size_t> ends;
      std::size_t k = i;
      while (k < text.size() && run.size() < kMaxRun) {
        if (std::isalpha(static_cast<unsigned char>(text[k]))) {
          run.push_back(to_lower(text[k]));
          ++k;
        } else if (text[k] == '\'') {
          run.push_back('\'');
          ++k;
        } else if (static_cast<unsigned char>(text[k]) >= 0x80) {
          const auto d = decode_utf8(text, k);
          if (!is_apostrophe(d.codepoint)) break;
          run.push_back('\'');
          k += d.length;
        } else {
          break;
        }
        ends.push_back(k);
      }
      bool replaced = false;
      for (std::size_t len = run.size(); len > 0; --len) {
        const std::size_t end = ends[len - 1];
        if (end < text.size() && (std::isalpha(static_cast<unsigned char>(text[end])) ||
                                  std::isdigit(static_cast<unsigned char>(text[end])))) {
          continue;  // would split a word
        }
        const auto it = contractions.find(run.substr(0, len));
        if (it == contractions.end()) continue;
        out += it->second;
        i = end;
        replaced = true;
        break;
      }
      if (replaced) continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::vector<std::string> expand_abbreviations(std::span<const std::string> tokens, const SubstitutionTable& table) {
  const auto& abbreviations = table.abbreviations();
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    const auto it = abbreviations.find(token);
    if (it == abbreviations.end()) {
      out.push_back(token);
    } else {
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  return out;
}

std::string normalize_text(std::string_view text, const SubstitutionTable& table) {
  std::string s = strip_entities(text);
  s = map_emojis(s, table);
  s = expand_contractions(s, table);
  for (auto& c : s) c = to_lower(c);
  s = expand_punctuated_abbreviations(s, table);
  for (auto& c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) c = ' ';
  }
  const auto tokens = expand_abbreviations(split_tokens(s), table);
  return join_tokens(tokens);
}

NormalizedPost normalize(const RawPost& post, const SubstitutionTable& table) {
  return make_normalized(post.id, normalize_text(post.text, table));
}

std::vector<NormalizedPost> normalize_corpus(std::span<const RawPost> posts, const SubstitutionTable& table) {
  std::vector<NormalizedPost> out(posts.size());
  const auto n = static_cast<std::int64_t>(posts.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = normalize(posts[static_cast<std::size_t>(i)], table);
  }
  return out;
}

namespace serial {

std::vector<NormalizedPost> normalize_corpus(std::span<const RawPost> posts, const SubstitutionTable& table) {
  std::vector<NormalizedPost> out;
  out.reserve(posts.size());
  for (const auto& p : posts) out.push_back(normalize(p, table));
  return out;
}

}  // namespace serial

}  // namespace longsent
