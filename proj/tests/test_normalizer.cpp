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
#include <omp.h>

#include <fstream>
#include <random>

#include "longsent/error.hpp"
#include "longsent/normalizer.hpp"
#include "golden.hpp"
#include "test_support.hpp"

namespace longsent {
namespace {

SubstitutionTable bundled() {
  const auto dir = testing::bundled_data();
  return SubstitutionTable::load(dir / "contractions.tsv", dir / "abbreviations.tsv", dir / "emojis.tsv");
}

TEST(Normalizer, GoldenRowsWithBundledTables) {
  const auto table = bundled();
  EXPECT_EQ(normalize_text(golden::kRow1In, table), golden::kRow1Out);
  EXPECT_EQ(normalize_text(golden::kRow2In, table), golden::kRow2Out);
  const auto builtin = SubstitutionTable::builtin();
  EXPECT_EQ(normalize_text(golden::kRow1In, builtin), golden::kRow1Out);
}

TEST(Normalizer, HashtagRowWithBundledTables) {
  const char* in =
      "Unlike other central banks which regulate policy through interest rates, the #PBOC uses their #RRR "
      "facility to maintain the monetary policy.\n\n#orbex_fx #investing #trading #forex #forextrader "
      "#forextrading #China #inflation#covid #omicronvariant #housing   https://t.co/nB8ozIWWq9";
  EXPECT_EQ(normalize_text(in, bundled()),
            "unlike other central banks which regulate policy through interest rates the pboc uses their rrr "
            "facility to maintain the monetary policy orbex fx investing trading forex forextrader forextrading "
            "china inflation coronavirus omicronvariant housing");
}

TEST(Normalizer, PublishedPairsWithBuiltinTable) {
  const auto t = SubstitutionTable::builtin();
  EXPECT_EQ(normalize_text("ain't", t), "am not");
  EXPECT_EQ(normalize_text("ain\xE2\x80\x99t", t), "am not");
  EXPECT_EQ(normalize_text("I'll've", t), "i will have");
  EXPECT_EQ(normalize_text("i\xE2\x80\x99ll\xE2\x80\x99ve", t), "i will have");
  EXPECT_EQ(normalize_text("lol", t), "laughing out loud");
  EXPECT_EQ(normalize_text("u2", t), "you too");
  EXPECT_EQ(normalize_text("RT", t), "retweet");
  EXPECT_EQ(normalize_text("asap", t), "as soon as possible");
  EXPECT_EQ(normalize_text("COVID-19", t), "coronavirus");
  EXPECT_EQ(normalize_text("\xF0\x9F\x99\x82", t), "smile");
  EXPECT_EQ(normalize_text("\xF0\x9F\x99\x81", t), "sad");
  for (const auto& pair : golden::substitution_pairs()) EXPECT_EQ(normalize_text(pair.in, t), pair.out) << pair.in;
}

TEST(Normalizer, BundledTablesContainThePublishedPairs) {
  const auto b = bundled();
  const auto builtin = SubstitutionTable::builtin();
  for (const auto& [k, v] : builtin.contractions()) EXPECT_EQ(b.contractions().at(k), v) << k;
  for (const auto& [k, v] : builtin.abbreviations()) EXPECT_EQ(b.abbreviations().at(k), v) << k;
  for (const auto& [k, v] : builtin.emojis()) EXPECT_EQ(b.emojis().at(k), v) << k;
}

TEST(Normalizer, StripsEntities) {
  EXPECT_EQ(strip_entities("hi @bob see https://x.co/a and www.y.com ok"), "hi  see  and  ok");
  EXPECT_EQ(strip_entities("#tag word#other"), "tag word other");
  EXPECT_EQ(normalize_text("t.co/abc RT @x: hello", SubstitutionTable::builtin()), "retweet hello");
}

TEST(Normalizer, AbbreviationsMatchWholeTokensOnly) {
  const auto t = SubstitutionTable::builtin();
  EXPECT_EQ(normalize_text("lollipop", t), "lollipop");
  EXPECT_EQ(normalize_text("smart trolls", t), "smart trolls");
  EXPECT_EQ(normalize_text("lol, lol!", t), "laughing out loud laughing out loud");
}

TEST(Normalizer, UnmappedEmojiAndAccentsAreDropped) {
  const auto t = SubstitutionTable::builtin();
  EXPECT_EQ(normalize_text("caf\xC3\xA9 \xF0\x9F\xA6\x84 ok", t), "caf ok");
  EXPECT_EQ(normalize_text("bad \xFF\xFE bytes", t), "bad bytes");
  EXPECT_EQ(normalize_text("a\xE2\x80\x94" "b\xE2\x80\xA6" "c", t), "a b c");
}

TEST(Normalizer, EmptyPostsAreFlagged) {
  RawPost p{"x", "@someone https://t.co/zzz", testing::at(2021, 1, 1), *CountryCode::from_code("AU")};
  auto n = normalize(p, SubstitutionTable::builtin());
  EXPECT_TRUE(n.empty);
  EXPECT_EQ(n.text, "");
  EXPECT_TRUE(n.tokens.empty());
}

TEST(Normalizer, OutputAlphabetAndIdempotence) {
  const auto table = bundled();
  std::mt19937_64 rng(11);
  const std::vector<std::string> pieces = {"Lol", "ain't", "COVID-19", "@u", "#Tag", "https://t.co/x", "\xF0\x9F\x99\x82",
                                           "can't", "RT", ",", "...", "  ", "\t", "Wuhan", "asap", "\xE2\x80\x99",
                                           "don\xE2\x80\x99t", "caf\xC3\xA9", "!!!", "u2", "x#y", "12-34"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1), len(0, 12);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    for (std::size_t i = 0, n = len(rng); i < n; ++i) text += pieces[pick(rng)] + (i % 3 ? " " : "");
    const std::string once = normalize_text(text, table);
    for (char c : once) EXPECT_TRUE((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ' ') << text;
    EXPECT_EQ(once.find("  "), std::string::npos);
    EXPECT_TRUE(once.empty() || (once.front() != ' ' && once.back() != ' '));
    EXPECT_EQ(normalize_text(once, table), once) << text;
  }
}

TEST(Normalizer, ParallelMatchesSerial) {
  const auto table = bundled();
  std::vector<RawPost> posts;
  for (int i = 0; i < 2000; ++i) {
    posts.push_back({std::to_string(i), "Post " + std::to_string(i) + " lol China can't \xF0\x9F\x99\x82 #x" +
                                            std::string(static_cast<std::size_t>(i % 7), '!'),
                     testing::at(2021, 1, 1), *CountryCode::from_code("AU")});
  }
  omp_set_num_threads(4);
  EXPECT_EQ(normalize_corpus(posts, table), serial::normalize_corpus(posts, table));
}

TEST(SubstitutionTable, LoadRejectsBadFiles) {
  testing::TempDir dir;
  {
    std::ofstream(dir / "c.tsv") << "can't\tcan not\ncan't\tcannot\n";
    std::ofstream(dir / "a.tsv") << "lol\tlaughing out loud\n";
    std::ofstream(dir / "e.tsv") << "U+1F642\tsmile\n";
  }
  EXPECT_THROW(SubstitutionTable::load(dir / "c.tsv", dir / "a.tsv", dir / "e.tsv"), UsageError);
  std::ofstream(dir / "c.tsv") << "can't\tCan Not\n";
  EXPECT_THROW(SubstitutionTable::load(dir / "c.tsv", dir / "a.tsv", dir / "e.tsv"), UsageError);
  std::ofstream(dir / "c.tsv") << "can't\tcan not\n";
  std::ofstream(dir / "a.tsv") << "lol\tlol out loud\n";
  EXPECT_THROW(SubstitutionTable::load(dir / "c.tsv", dir / "a.tsv", dir / "e.tsv"), UsageError);
  EXPECT_THROW(SubstitutionTable::load(dir / "missing.tsv", dir / "a.tsv", dir / "e.tsv"), IoError);
}

TEST(Normalizer, ContractionsExpandBeforePunctuationGoes) {
  const auto table = bundled();
  EXPECT_EQ(normalize_text("Don't", table), "do not");
  EXPECT_EQ(normalize_text("don\xE2\x80\x99t stop", table), "do not stop");
  EXPECT_EQ(normalize_text("wouldn't be looking", table), "would not be looking");
  EXPECT_EQ(normalize_text("", table), "");
}

}  // namespace
}  // namespace longsent
