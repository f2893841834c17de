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

#include <string_view>

#include "disc/chardata.hpp"

namespace disc {

/// 1 - LD(p1, p2) / (len(p1) + len(p2)) with insert/delete/substitute costs
/// 1/1/2. Throws ContractError when either side is empty.
double pinyin_distance_sim(std::string_view p1, std::string_view p2);
double pinyin_distance_sim(const PinyinSeq& p1, const PinyinSeq& p2);

/// Phonetic similarity of two characters: the best pinyin_distance_sim over
/// every pairing of their readings. Characters without readings (including
/// all non-Han scalars) score 1.0 against themselves and 0.0 otherwise.
double phonetic_sim(const CharTables& tables, char32_t c1, char32_t c2);

}  // namespace disc
