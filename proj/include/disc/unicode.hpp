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

#include <string>
#include <string_view>

namespace disc {

/// True iff `cp` lies in one of the CJK Unified Ideographs blocks
/// (base block plus extensions A through I).
bool is_han(char32_t cp);

/// Decodes UTF-8. Throws disc::Error on malformed input.
std::u32string utf8_decode(std::string_view text);

std::string utf8_encode(std::u32string_view text);
std::string utf8_encode(char32_t cp);

/// Decodes a string that must hold exactly one scalar value.
/// Returns U+0000 when it holds zero or several.
char32_t single_scalar(std::string_view text);

}  // namespace disc
