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

#include <algorithm>
#include <span>

#include "disc/edit_distance.hpp"

namespace disc {
namespace {

std::span<const std::uint8_t> view(const StrokeSeq& seq) { return seq.ids; }

}  // namespace

std::optional<std::string> structure_aware_code(const CharTables& tables, char32_t c) {
  const auto* dec = tables.decomposition(c);
  if (!dec || dec->atomic()) {
    const auto* code = tables.four_corner(c);
    if (!code) return std::nullopt;
    return std::string(code->str());
  }
  std::string out;
  out.reserve(dec->components.size() * 5);
  for (char32_t comp : dec->components) {
    const auto* code = tables.four_corner(comp);
    if (!code) return std::nullopt;
    out.push_back(dec->letter);
    out.append(code->str());
  }
  return out;
}

double glyph_sim1(const CharTables& tables, char32_t c1, char32_t c2) {
  if (c1 == c2) return 1.0;
  const auto* a = tables.four_corner(c1);
  const auto* b = tables.four_corner(c2);
  if (!a || !b) return 0.0;
  int matches = 0;
  for (std::size_t i = 0; i < 4; ++i) matches += (*a)[i] == (*b)[i] ? 1 : 0;
  return matches / 4.0;
}

double glyph_sim2(const CharTables& tables, char32_t c1, char32_t c2) {
  if (c1 == c2) return 1.0;
  const auto a = structure_aware_code(tables, c1);
  if (!a) return 0.0;
  const auto b = structure_aware_code(tables, c2);
  if (!b) return 0.0;
  return normalized_edit_similarity(std::span<const char>(*a),
                                    std::span<const char>(*b));
}

double glyph_sim3(const CharTables& tables, char32_t c1, char32_t c2) {
  if (c1 == c2) return 1.0;
  const auto* a = tables.strokes(c1);
  const auto* b = tables.strokes(c2);
  if (!a || !b) return 0.0;
  return normalized_edit_similarity(view(*a), view(*b));
}

double glyph_sim4(const CharTables& tables, char32_t c1, char32_t c2) {
  if (c1 == c2) return 1.0;
  const auto* a = tables.strokes(c1);
  const auto* b = tables.strokes(c2);
  if (!a || !b) return 0.0;
  const double lcs = lcs_length(view(*a), view(*b));
  return lcs / static_cast<double>(std::max(a->ids.size(), b->ids.size()));
}

GlyphSimilarity glyph_components(const CharTables& tables, char32_t c1, char32_t c2) {
  return {glyph_sim1(tables, c1, c2), glyph_sim2(tables, c1, c2),
          glyph_sim3(tables, c1, c2), glyph_sim4(tables, c1, c2)};
}

double glyph_sim(const CharTables& tables, char32_t c1, char32_t c2) {
  return glyph_components(tables, c1, c2).mean();
}

}  // namespace disc
