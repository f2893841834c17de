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

#include "disc/glyph.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace disc {
namespace {

class GlyphFixtureTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { tables_ = new CharTables(load_tables(testing::fixture("tables"))); }
  static void TearDownTestSuite() { delete tables_; }
  static const CharTables& t() { return *tables_; }
  static inline CharTables* tables_ = nullptr;
};

TEST_F(GlyphFixtureTest, StructureAwareCodes) {
  EXPECT_EQ(structure_aware_code(t(), U'忠'), "C5000C3300");
  EXPECT_EQ(structure_aware_code(t(), U'仲'), "B8000B5000");
  EXPECT_EQ(structure_aware_code(t(), U'木'), "4090");
  EXPECT_FALSE(structure_aware_code(t(), U'读'));
  EXPECT_FALSE(structure_aware_code(t(), U'，'));
}

TEST_F(GlyphFixtureTest, ZhongPair) {
  const auto g = glyph_components(t(), U'忠', U'仲');
  EXPECT_DOUBLE_EQ(g.four_corner, 0.0);
  EXPECT_DOUBLE_EQ(g.structure_code, 0.5);
  EXPECT_DOUBLE_EQ(g.stroke_distance, 1.0 - 6.0 / 14.0);
  EXPECT_DOUBLE_EQ(g.stroke_lcs, 0.5);
  EXPECT_DOUBLE_EQ(glyph_sim(t(), U'忠', U'仲'), 0.39285714285714285);
}

TEST_F(GlyphFixtureTest, MuBenPair) {
  const auto g = glyph_components(t(), U'木', U'本');
  EXPECT_DOUBLE_EQ(g.four_corner, 0.25);  // 4090 vs 5023 share the second digit
  EXPECT_DOUBLE_EQ(g.structure_code, 0.25);
  EXPECT_DOUBLE_EQ(g.stroke_distance, 8.0 / 9.0);
  EXPECT_DOUBLE_EQ(g.stroke_lcs, 0.8);
}

TEST_F(GlyphFixtureTest, SharedCodesAndMissing) {
  const auto g = glyph_components(t(), U'人', U'入');
  EXPECT_DOUBLE_EQ(g.mean(), 1.0);
  EXPECT_DOUBLE_EQ(glyph_sim1(t(), U'中', U'忠'), 0.5);  // 5000 vs 5033
  // 行 has a reading but no glyph entries.
  EXPECT_DOUBLE_EQ(glyph_sim(t(), U'行', U'木'), 0.0);
  EXPECT_DOUBLE_EQ(glyph_sim(t(), U'行', U'行'), 1.0);
  EXPECT_DOUBLE_EQ(glyph_sim(t(), U'a', U'b'), 0.0);
}

TEST(GlyphDanglingComponent, StructureCodeMissing) {
  testing::TempDir dir;
  testing::write_tables(dir, "", "中\t5000\n忠\t5033\n仲\t2520\n人\t8000\n",
                        "忠\tC\t中心\n仲\tB\t人中\n", "");
  const auto tables = load_tables(dir.path());
  EXPECT_FALSE(structure_aware_code(tables, U'忠'));
  EXPECT_EQ(glyph_sim2(tables, U'忠', U'仲'), 0.0);
  EXPECT_EQ(glyph_sim1(tables, U'忠', U'仲'), 0.0);
}

TEST(GlyphBundled, EnclosureCodes) {
  const auto& t = testing::bundled();
  EXPECT_EQ(structure_aware_code(t, U'忠'), "C5000C3300");
  EXPECT_EQ(structure_aware_code(t, U'仲'), "B8000B5000");
  EXPECT_EQ(structure_aware_code(t, U'读'), "B0060B4080");
  EXPECT_EQ(structure_aware_code(t, U'度'), "G0020G4477G7740");
  const auto g = glyph_components(t, U'读', U'度');
  EXPECT_DOUBLE_EQ(g.four_corner, 0.0);
  EXPECT_DOUBLE_EQ(g.structure_code, 0.4);
  EXPECT_DOUBLE_EQ(g.stroke_distance, 0.5263157894736843);
  EXPECT_DOUBLE_EQ(g.stroke_lcs, 0.5);
}

TEST(GlyphProperty, RangeSymmetryIdentity) {
  const auto& tables = testing::bundled();
  const auto chars = tables.characters();
  std::mt19937 rng(23);
  std::uniform_int_distribution<std::size_t> pick(0, chars.size() - 1);
  for (int trial = 0; trial < 1500; ++trial) {
    const char32_t a = chars[pick(rng)];
    const char32_t b = chars[pick(rng)];
    const auto ab = glyph_components(tables, a, b);
    const auto ba = glyph_components(tables, b, a);
    for (auto [x, y] : {std::pair{ab.four_corner, ba.four_corner},
                        std::pair{ab.structure_code, ba.structure_code},
                        std::pair{ab.stroke_distance, ba.stroke_distance},
                        std::pair{ab.stroke_lcs, ba.stroke_lcs}}) {
      ASSERT_GE(x, 0.0);
      ASSERT_LE(x, 1.0);
      ASSERT_EQ(x, y);
    }
    ASSERT_EQ(glyph_sim(tables, a, a), 1.0);
  }
}

}  // namespace
}  // namespace disc
