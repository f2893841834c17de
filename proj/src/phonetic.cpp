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

#include "disc/phonetic.hpp"

#include <algorithm>
#include <span>

#include "disc/edit_distance.hpp"

namespace disc {

double pinyin_distance_sim(std::string_view p1, std::string_view p2) {
  return normalized_edit_similarity(std::span<const char>(p1.data(), p1.size()),
                                    std::span<const char>(p2.data(), p2.size()));
}

double pinyin_distance_sim(const PinyinSeq& p1, const PinyinSeq& p2) {
  return pinyin_distance_sim(std::string_view(p1.str()), std::string_view(p2.str()));
}

double phonetic_sim(const CharTables& tables, char32_t c1, char32_t c2) {
  if (c1 == c2) return 1.0;
  const auto* r1 = tables.pinyin(c1);
  const auto* r2 = tables.pinyin(c2);
  if (!r1 || !r2) return 0.0;
  double best = 0.0;
  for (const auto& a : *r1) {
    for (const auto& b : *r2) {
      best = std::max(best, pinyin_distance_sim(a, b));
      if (best == 1.0) return best;
    }
  }
  return best;
}

}  // namespace disc
