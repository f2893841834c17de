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

// Weighted Levenshtein distance and longest common subsequence over
// arbitrary symbol sequences.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "disc/errors.hpp"

namespace disc {

/// Per-operation edit costs. Defaults are insert 1, delete 1, substitute 2.
struct EditCosts {
  int insert = 1;
  int remove = 1;
  int substitute = 2;

  /// Throws ContractError unless all costs are non-negative and
  /// substitute <= insert + remove.
  void validate() const {
    if (insert < 0 || remove < 0 || substitute < 0) {
      throw ContractError("edit costs must be non-negative");
    }
    if (substitute > insert + remove) {
      throw ContractError("substitute cost exceeds insert + delete");
    }
  }
};

namespace detail {

// Row buffer that stays on the stack for the short sequences this library
// actually sees (pinyin, four-corner codes, stroke lists).
class DpBuffer {
 public:
  explicit DpBuffer(std::size_t n) {
    if (n > kInline) {
      heap_.resize(n);
      data_ = heap_.data();
    } else {
      data_ = inline_.data();
    }
  }
  DpBuffer(const DpBuffer&) = delete;
  DpBuffer& operator=(const DpBuffer&) = delete;

  int* data() { return data_; }

 private:
  static constexpr std::size_t kInline = 192;
  std::array<int, kInline> inline_;
  std::vector<int> heap_;
  int* data_;
};

}  // namespace detail

/// Minimal total cost to turn `a` into `b`. Either side may be empty.
template <typename T>
int weighted_levenshtein(std::span<const T> a, std::span<const T> b,
                         const EditCosts& costs = {}) {
  costs.validate();
  const std::size_t m = b.size();
  detail::DpBuffer buffer(2 * (m + 1));
  int* prev = buffer.data();
  int* cur = prev + m + 1;
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j) * costs.insert;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i) * costs.remove;
    for (std::size_t j = 1; j <= m; ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : costs.substitute);
      const int del = prev[j] + costs.remove;
      const int ins = cur[j - 1] + costs.insert;
      cur[j] = std::min({sub, del, ins});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

inline int weighted_levenshtein(std::string_view a, std::string_view b,
                                const EditCosts& costs = {}) {
  return weighted_levenshtein(std::span<const char>(a.data(), a.size()),
                              std::span<const char>(b.data(), b.size()), costs);
}

inline int weighted_levenshtein(std::u32string_view a, std::u32string_view b,
                                const EditCosts& costs = {}) {
  return weighted_levenshtein(std::span<const char32_t>(a.data(), a.size()),
                              std::span<const char32_t>(b.data(), b.size()),
                              costs);
}

/// Length of a longest common subsequence of `a` and `b`.
template <typename T>
int lcs_length(std::span<const T> a, std::span<const T> b) {
  const std::size_t m = b.size();
  detail::DpBuffer buffer(2 * (m + 1));
  int* prev = buffer.data();
  int* cur = prev + m + 1;
  for (std::size_t j = 0; j <= m; ++j) prev[j] = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

inline int lcs_length(std::string_view a, std::string_view b) {
  return lcs_length(std::span<const char>(a.data(), a.size()),
                    std::span<const char>(b.data(), b.size()));
}

inline int lcs_length(std::u32string_view a, std::u32string_view b) {
  return lcs_length(std::span<const char32_t>(a.data(), a.size()),
                    std::span<const char32_t>(b.data(), b.size()));
}

/// A fixed left-hand sequence prepared for repeated LCS queries. Patterns
/// of up to 64 symbols use the bit-vector recurrence of Allison and Dix
/// (one word operation batch per symbol of the other sequence); longer ones
/// fall back to the dynamic program.
template <typename T>
class LcsPattern {
 public:
  LcsPattern() = default;
  explicit LcsPattern(std::span<const T> pattern) : symbols_(pattern.begin(), pattern.end()) {
    if (symbols_.size() > 64) return;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      auto it = std::find_if(masks_.begin(), masks_.end(),
                             [&](const auto& m) { return m.first == symbols_[i]; });
      if (it == masks_.end()) it = masks_.insert(masks_.end(), {symbols_[i], 0});
      it->second |= std::uint64_t{1} << i;
    }
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }

  int lcs(std::span<const T> other) const {
    const std::size_t m = symbols_.size();
    if (m > 64) return lcs_length(std::span<const T>(symbols_), other);
    if (m == 0) return 0;
    const std::uint64_t live = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    std::uint64_t v = ~std::uint64_t{0};
    for (const T& sym : other) {
      std::uint64_t match = 0;
      for (const auto& [s, mask] : masks_) {
        if (s == sym) {
          match = mask;
          break;
        }
      }
      const std::uint64_t u = v & match;
      v = (v + u) | (v - u);
    }
    return static_cast<int>(m) - std::popcount(v & live);
  }

  int lcs(const LcsPattern& other) const { return lcs(std::span<const T>(other.symbols_)); }

 private:
  std::vector<T> symbols_;
  std::vector<std::pair<T, std::uint64_t>> masks_;
};

/// 1 - ld / total, clamped to [0, 1].
inline double edit_similarity(int ld, std::size_t total) {
  return std::clamp(1.0 - static_cast<double>(ld) / static_cast<double>(total), 0.0, 1.0);
}

/// 1 - LD / (len(a) + len(b)) under the default costs, clamped to [0, 1].
/// Both sequences must be nonempty.
template <typename T>
double normalized_edit_similarity(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) {
    throw ContractError("edit similarity needs two nonempty sequences");
  }
  return edit_similarity(weighted_levenshtein(a, b), a.size() + b.size());
}

}  // namespace disc
