// Copyright 2026 The DISC Toolkit Authors
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

#include "disc/chardata.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "disc/errors.hpp"
#include "disc/unicode.hpp"
#include "test_util.hpp"

namespace disc {
namespace {

using testing::TempDir;
using testing::write_tables;

constexpr std::string_view kStrokeHeader = "#strokes: 一丨ノ、𠃌\n";

std::string load_error(const TempDir& dir) {
  try {
    load_tables(dir.path());
  } catch (const LoadError& e) {
    return e.what();
  }
  return "";
}

TEST(PinyinSeqTest, NormalizeStripsTones) {
  EXPECT_EQ(PinyinSeq::normalize("zhōng")->str(), "zhong");
  EXPECT_EQ(PinyinSeq::normalize("zhong4")->str(), "zhong");
  EXPECT_EQ(PinyinSeq::normalize("Xíng")->str(), "xing");
  EXPECT_EQ(PinyinSeq::normalize("nǚ")->str(), "nv");
  EXPECT_EQ(PinyinSeq::normalize("lü4")->str(), "lv");
  EXPECT_EQ(PinyinSeq::normalize("lu:")->str(), "lv");
  EXPECT_EQ(PinyinSeq::normalize("lv")->str(), "lv");
  EXPECT_EQ(PinyinSeq::normalize("zho\xCC\x84ng")->str(), "zhong");  // combining macron
  EXPECT_FALSE(PinyinSeq::normalize(""));
  EXPECT_FALSE(PinyinSeq::normalize("3"));
  EXPECT_FALSE(PinyinSeq::normalize("zh-ong"));
  EXPECT_THROW(PinyinSeq(""), ContractError);
  EXPECT_THROW(PinyinSeq("Zhong"), ContractError);
}

TEST(FourCornerCodeTest, ExactlyFourDigits) {
  EXPECT_EQ(FourCornerCode::parse("5033")->str(), "5033");
  EXPECT_FALSE(FourCornerCode::parse("503"));
  EXPECT_FALSE(FourCornerCode::parse("50336"));
  EXPECT_FALSE(FourCornerCode::parse("50a3"));
}

TEST(LoadTablesTest, FixtureRows) {
  const auto tables = load_tables(testing::fixture("tables"));
  EXPECT_EQ(tables.lookup(U'忠', TableKind::FourCorner), "5033");
  EXPECT_EQ(tables.lookup(U'行', TableKind::Pinyin), "xing,hang");
  ASSERT_NE(tables.pinyin(U'行'), nullptr);
  EXPECT_EQ(tables.pinyin(U'行')->size(), 2u);
  // Tone marks and digits are gone after loading.
  EXPECT_EQ(tables.lookup(U'忠', TableKind::Pinyin), "zhong");
  EXPECT_EQ(tables.lookup(U'仲', TableKind::Pinyin), "zhong");
  EXPECT_EQ(tables.lookup(U'女', TableKind::Pinyin), "nv,ru");
  EXPECT_EQ(tables.lookup(U'本', TableKind::Strokes), "一丨ノ、一");
  EXPECT_EQ(tables.strokes(U'本')->ids.size(), 5u);
  EXPECT_EQ(tables.lookup(U'忠', TableKind::Decomposition), "C中心");
  EXPECT_EQ(tables.lookup(U'木', TableKind::Decomposition), "A");
  EXPECT_TRUE(tables.warnings().empty());
}

TEST(LoadTablesTest, LookupIsTotal) {
  const auto& tables = testing::bundled();
  for (auto kind : {TableKind::Pinyin, TableKind::FourCorner, TableKind::Decomposition,
                    TableKind::Strokes}) {
    EXPECT_FALSE(tables.lookup(U',', kind));
    EXPECT_FALSE(tables.lookup(U'a', kind));
    EXPECT_FALSE(tables.lookup(U'\U0002A6D0', kind));  // Han, but not bundled
  }
  EXPECT_EQ(tables.four_corner(U','), nullptr);
  EXPECT_EQ(tables.lookup(U'忠', TableKind::FourCorner), "5033");
  EXPECT_EQ(tables.lookup(U'本', TableKind::Strokes), "一丨ノ、一");
}

TEST(LoadTablesTest, EmptyTables) {
  TempDir dir;
  write_tables(dir, "", "# nothing\n", "", "");
  const auto tables = load_tables(dir.path());
  EXPECT_TRUE(tables.characters().empty());
  EXPECT_FALSE(tables.lookup(U'忠', TableKind::FourCorner));
  EXPECT_EQ(tables.pinyin(U'忠'), nullptr);
}

TEST(LoadTablesTest, MissingFileNamed) {
  TempDir dir;
  dir.write("pinyin.tsv", "");
  dir.write("fourcorner.tsv", "");
  dir.write("strokes.tsv", "");
  EXPECT_NE(load_error(dir).find("decomp.tsv"), std::string::npos);
}

TEST(LoadTablesTest, MalformedRowsReportLine) {
  {
    TempDir dir;
    write_tables(dir, "", "忠\t5033\n仲\t252\n", "", "");
    const auto msg = load_error(dir);
    EXPECT_NE(msg.find("fourcorner.tsv:2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("4 digits"), std::string::npos) << msg;
  }
  {
    TempDir dir;
    write_tables(dir, "# c\n忠 zhong\n", "", "", "");
    EXPECT_NE(load_error(dir).find("pinyin.tsv:2"), std::string::npos);
  }
  {
    TempDir dir;
    write_tables(dir, ",\tdou\n", "", "", "");
    EXPECT_NE(load_error(dir).find("not a Han"), std::string::npos);
  }
  {
    TempDir dir;
    write_tables(dir, "忠\tzh0ng!\n", "", "", "");
    EXPECT_NE(load_error(dir).find("pinyin.tsv:1"), std::string::npos);
  }
  {
    TempDir dir;
    write_tables(dir, "", "", "忠\tA\t中心\n", "");
    EXPECT_NE(load_error(dir).find("decomp.tsv:1"), std::string::npos);
  }
  {
    TempDir dir;
    write_tables(dir, "", "", "忠\tC\t中\n", "");
    EXPECT_NE(load_error(dir).find("at least two"), std::string::npos);
  }
  {
    TempDir dir;
    write_tables(dir, "", "", "", std::string(kStrokeHeader) + "木\t一丨X、\n");
    EXPECT_NE(load_error(dir).find("strokes.tsv:2"), std::string::npos);
  }
  {
    TempDir dir;
    write_tables(dir, "", "", "", "木\t一丨ノ、\n");
    EXPECT_NE(load_error(dir).find("header"), std::string::npos);
  }
}

TEST(LoadTablesTest, StructureAlphabetHeader) {
  {
    TempDir dir;
    write_tables(dir, "", "", "#alphabet: C=LeftRight,B=UpDown\n", "");
    EXPECT_NE(load_error(dir).find("LeftRight must be B"), std::string::npos);
  }
  {
    TempDir dir;
    write_tables(dir, "", "", "#alphabet: B=LeftRight,C=UpDown,D=Foo,D=Bar\n", "");
    EXPECT_NE(load_error(dir).find("injective"), std::string::npos);
  }
  {
    TempDir dir;
    write_tables(dir, "", "中\t5000\n心\t3300\n",
                 "#alphabet: B=LeftRight,C=UpDown,L=EnclosureFull\n囚\tL\t中心\n忠\tQ\t中心\n",
                 "");
    const auto tables = load_tables(dir.path());
    EXPECT_EQ(tables.decomposition(U'囚')->kind, StructureKind::Enclosure);
    EXPECT_EQ(tables.decomposition(U'囚')->letter, 'L');
    // Undeclared letters fall back to Z with a warning.
    EXPECT_EQ(tables.decomposition(U'忠')->letter, 'Z');
    EXPECT_EQ(tables.decomposition(U'忠')->kind, StructureKind::Other);
    ASSERT_EQ(tables.warnings().size(), 1u);
    EXPECT_NE(tables.warnings()[0].find("undeclared"), std::string::npos);
  }
}

TEST(LoadTablesTest, DuplicateKeysLastWins) {
  TempDir dir;
  write_tables(dir, "", "忠\t1111\n忠\t5033\n", "", "");
  const auto tables = load_tables(dir.path());
  EXPECT_EQ(tables.lookup(U'忠', TableKind::FourCorner), "5033");
  ASSERT_EQ(tables.warnings().size(), 1u);
  EXPECT_NE(tables.warnings()[0].find("duplicate"), std::string::npos);
}

TEST(LoadTablesTest, DanglingComponentWarns) {
  TempDir dir;
  write_tables(dir, "", "中\t5000\n", "忠\tC\t中心\n", "");
  const auto tables = load_tables(dir.path());
  ASSERT_EQ(tables.warnings().size(), 1u);
  EXPECT_NE(tables.warnings()[0].find("心"), std::string::npos);
}

TEST(LoadTablesTest, CrlfTolerated) {
  TempDir dir;
  write_tables(dir, "忠\tzhong\r\n", "忠\t5033\r\n", "忠\tA\t\r\n",
               "#strokes: 一丨ノ、𠃌\r\n忠\t丨𠃌\r\n");
  const auto tables = load_tables(dir.path());
  EXPECT_EQ(tables.lookup(U'忠', TableKind::FourCorner), "5033");
  EXPECT_EQ(tables.lookup(U'忠', TableKind::Strokes), "丨𠃌");
}

TEST(LoadTablesTest, DeterministicSerialization) {
  const auto a = load_tables(testing::data_dir()).serialize();
  const auto b = load_tables(testing::data_dir()).serialize();
  EXPECT_EQ(a, b);
  EXPECT_GT(a.size(), 10000u);
}

// Every bundled character has all four entries unless missing.txt says so.
TEST(BundledDataTest, MissingManifestCoversGaps) {
  const auto& tables = testing::bundled();
  std::map<char32_t, std::set<std::string>> manifest;
  std::ifstream in(testing::data_dir() / "missing.txt");
  ASSERT_TRUE(in);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos);
    const char32_t c = single_scalar(line.substr(0, tab));
    std::stringstream kinds(line.substr(tab + 1));
    std::string kind;
    while (std::getline(kinds, kind, ',')) manifest[c].insert(kind);
  }

  std::set<char32_t> universe;
  for (char32_t c : tables.characters()) universe.insert(c);
  for (const auto& dec : tables.characters()) {
    if (const auto* d = tables.decomposition(dec)) {
      universe.insert(d->components.begin(), d->components.end());
    }
  }
  const std::pair<TableKind, const char*> kinds[] = {
      {TableKind::Pinyin, "pinyin"},
      {TableKind::FourCorner, "fourcorner"},
      {TableKind::Decomposition, "decomp"},
      {TableKind::Strokes, "strokes"}};
  for (char32_t c : universe) {
    for (const auto& [kind, name] : kinds) {
      if (!tables.lookup(c, kind)) {
        EXPECT_TRUE(manifest[c].contains(name))
            << utf8_encode(c) << " lacks " << name << " but is not in missing.txt";
      }
    }
  }
}

TEST(BundledDataTest, CharsetSizeAndReferenceCodes) {
  std::ifstream in(testing::data_dir() / "charset.txt");
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) n += line.empty() ? 0 : 1;
  EXPECT_GE(n, 3000u);

  const auto& t = testing::bundled();
  EXPECT_EQ(t.lookup(U'忠', TableKind::FourCorner), "5033");
  EXPECT_EQ(t.lookup(U'仲', TableKind::FourCorner), "2520");
  EXPECT_EQ(t.lookup(U'木', TableKind::FourCorner), "4090");
  EXPECT_EQ(t.lookup(U'本', TableKind::FourCorner), "5023");
  EXPECT_EQ(t.lookup(U'中', TableKind::FourCorner), "5000");
  EXPECT_EQ(t.lookup(U'心', TableKind::FourCorner), "3300");
  EXPECT_EQ(t.lookup(U'人', TableKind::FourCorner), "8000");
  EXPECT_EQ(t.lookup(U'木', TableKind::Strokes), "一丨ノ、");
  EXPECT_EQ(t.lookup(U'中', TableKind::Strokes), "丨𠃌一丨");
  EXPECT_EQ(t.strokes(U'心')->ids.size(), 4u);
  // Standard dictionary readings (cross-checked against pypinyin).
  const auto* xing = t.pinyin(U'行');
  ASSERT_NE(xing, nullptr);
  std::set<std::string> readings;
  for (const auto& r : *xing) readings.insert(r.str());
  EXPECT_TRUE(readings.contains("xing"));
  EXPECT_TRUE(readings.contains("hang"));
  EXPECT_EQ(t.lookup(U'绿', TableKind::Pinyin), "lv,lu");
}

}  // namespace
}  // namespace disc
