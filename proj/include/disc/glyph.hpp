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

#pragma once

#include <optional>
#include <string>

#include "disc/chardata.hpp"

namespace disc {

/// The four glyph views of a character pair, each in [0, 1].
struct GlyphSimilarity {
  double four_corner = 0.0;     // digit-wise four-corner match rate
  double structure_code = 0.0;  // edit similarity of structure-aware codes
  double stroke_distance = 0.0; // edit similarity of stroke sequences
  double stroke_lcs = 0.0;      // stroke LCS over the longer sequence

  /// Arithmetic mean, summed in declaration order.
  double mean() const {
    return (four_corner + structure_code + stroke_distance + stroke_lcs) / 4.0;
  }
};

/// Atomic characters encode as their bare four-corner code. Compound ones
/// concatenate (structure letter + component code) for each first-level
/// component, e.g. 忠 -> "C5000C3300". Returns nullopt when the character
/// has neither a decomposition nor a four-corner code, or when a component
/// lacks a four-corner code.
std::optional<std::string> structure_aware_code(const CharTables& tables, char32_t c);

// Each component: identical characters score 1.0; a missing table entry on
// either side scores 0.0.
double glyph_sim1(const CharTables& tables, char32_t c1, char32_t c2);
double glyph_sim2(const CharTables& tables, char32_t c1, char32_t c2);
double glyph_sim3(const CharTables& tables, char32_t c1, char32_t c2);
double glyph_sim4(const CharTables& tables, char32_t c1, char32_t c2);

GlyphSimilarity glyph_components(const CharTables& tables, char32_t c1, char32_t c2);

/// Mean of the four components.
double glyph_sim(const CharTables& tables, char32_t c1, char32_t c2);

}  // namespace disc
