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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace disc {

/// A toneless pinyin syllable: nonempty, lowercase a-z, 'v' standing for u-umlaut.
class PinyinSeq {
 public:
  /// Throws ContractError if `letters` is empty or has anything but a-z.
  explicit PinyinSeq(std::string letters);

  /// Strips tone marks and tone digits, lowercases, and maps u-umlaut
  /// (as the letter, "u:" or "v") to 'v'. Returns nullopt if nothing
  /// pronounceable is left or a foreign symbol remains.
  static std::optional<PinyinSeq> normalize(std::string_view raw);

  const std::string& str() const { return letters_; }
  std::size_t size() const { return letters_.size(); }

  friend bool operator==(const PinyinSeq&, const PinyinSeq&) = default;

 private:
  std::string letters_;
};

/// Exactly four decimal digits.
class FourCornerCode {
 public:
  static std::optional<FourCornerCode> parse(std::string_view text);

  char operator[](std::size_t i) const { return digits_[i]; }
  std::string_view str() const { return {digits_.data(), digits_.size()}; }

  friend bool operator==(const FourCornerCode&, const FourCornerCode&) = default;

 private:
  std::array<char, 4> digits_{};
};

enum class StructureKind { Atomic, LeftRight, UpDown, Enclosure, Other };

/// Letter used for atomic rows in decomp.tsv. Never part of a code.
inline constexpr char kAtomicLetter = 'A';
/// Letter given to rows whose structure letter the header does not declare.
inline constexpr char kUnknownStructureLetter = 'Z';

/// One-level split of a character into components.
struct Decomposition {
  StructureKind kind = StructureKind::Atomic;
  char letter = kAtomicLetter;
  std::vector<char32_t> components;  // empty iff atomic

  bool atomic() const { return kind == StructureKind::Atomic; }
};

/// Strokes as indices into CharTables::stroke_alphabet().
struct StrokeSeq {
  std::vector<std::uint8_t> ids;
};

enum class TableKind { Pinyin, FourCorner, Decomposition, Strokes };

struct StructureLetter {
  char letter;
  std::string name;
  StructureKind kind;
};

/// Immutable per-character knowledge: readings, four-corner codes,
/// decompositions and stroke orders. Safe for concurrent readers.
class CharTables {
 public:
  CharTables();

  // Typed lookups. nullptr means "missing entry"; never throws.
  const std::vector<PinyinSeq>* pinyin(char32_t c) const;
  const FourCornerCode* four_corner(char32_t c) const;
  const Decomposition* decomposition(char32_t c) const;
  const StrokeSeq* strokes(char32_t c) const;

  /// Rendered entry in the on-disk notation, or nullopt when missing.
  std::optional<std::string> lookup(char32_t c, TableKind which) const;

  std::span<const char32_t> stroke_alphabet() const { return stroke_alphabet_; }
  std::span<const StructureLetter> structure_letters() const {
    return structure_letters_;
  }
  std::u32string render_strokes(const StrokeSeq& seq) const;

  /// Every character with at least one entry, ascending by codepoint.
  std::vector<char32_t> characters() const;

  /// Problems tolerated while loading (duplicate keys, dangling components).
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Canonical text form; identical inputs give byte-identical output.
  std::string serialize() const;

 private:
  friend CharTables load_tables(const std::filesystem::path& dir);
  friend class TablesLoader;

  std::unordered_map<char32_t, std::vector<PinyinSeq>> pinyin_;
  std::unordered_map<char32_t, FourCornerCode> four_corner_;
  std::unordered_map<char32_t, Decomposition> decomposition_;
  std::unordered_map<char32_t, StrokeSeq> strokes_;
  std::vector<char32_t> stroke_alphabet_;
  std::vector<StructureLetter> structure_letters_;
  std::vector<std::string> warnings_;
};

/// Reads pinyin.tsv, fourcorner.tsv, decomp.tsv and strokes.tsv from `dir`.
/// Throws LoadError naming the file (and line, for malformed rows).
CharTables load_tables(const std::filesystem::path& dir);

}  // namespace disc
