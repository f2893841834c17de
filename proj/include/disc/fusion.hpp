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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "disc/chardata.hpp"
#include "disc/edit_distance.hpp"
#include "disc/glyph.hpp"

namespace disc {

/// Knobs for scoring and confusion-set export.
struct SimilarityParams {
  double alpha = 1.1;               // weight of similarity in the decode score
  double beta = 0.7;                // phonetic share of the fused similarity
  double copy_penalty = 0.0;        // subtracted from the source character
  double confusion_threshold = 0.5; // pairs must score strictly above this

  /// Throws ParameterError on alpha < 0, beta outside [0,1],
  /// copy_penalty < 0 or a threshold outside [0,1].
  void validate() const;
};

/// beta * phonetic + (1 - beta) * glyph. Identical characters always score
/// 1.0; distinct non-Han characters score 0.0.
double sim(const CharTables& tables, char32_t c1, char32_t c2, double beta);

struct SimilarityBreakdown {
  double phonetic = 0.0;
  GlyphSimilarity glyph;
  double glyph_mean = 0.0;
  double fused = 0.0;
};

SimilarityBreakdown explain_similarity(const CharTables& tables, char32_t c1,
                                       char32_t c2, double beta);

/// Evaluates `sim` from per-character profiles compiled once up front, so
/// repeated queries skip the table lookups and code assembly. Results are
/// bit-identical to `sim`. Characters outside the tables are handled like
/// `sim` handles them. Thread-safe for concurrent queries.
class SimilarityEngine {
 public:
  SimilarityEngine(const CharTables& tables, double beta);

  double operator()(char32_t c1, char32_t c2) const;
  double beta() const { return beta_; }

 private:
  struct Profile {
    std::vector<LcsPattern<char>> readings;
    std::optional<FourCornerCode> four_corner;
    std::optional<LcsPattern<char>> structure_code;
    LcsPattern<std::uint8_t> strokes;  // empty when missing
  };

  const Profile* profile(char32_t c) const;

  double beta_;
  std::unordered_map<char32_t, Profile> profiles_;
};

struct Neighbor {
  char32_t ch;
  double score;
};

/// Unordered character pair with first < second.
struct CharPair {
  char32_t first;
  char32_t second;

  friend bool operator==(const CharPair&, const CharPair&) = default;
  friend auto operator<=>(const CharPair&, const CharPair&) = default;
};

/// Precomputed similarity neighborhoods over a character set. Only pairs
/// scoring at or above `store_floor` are kept; self pairs are implicit.
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::vector<char32_t> charset, double beta, double store_floor);

  std::span<const char32_t> charset() const { return charset_; }
  double beta() const { return beta_; }
  double store_floor() const { return store_floor_; }

  /// Neighbors of `c`, descending by score then ascending by codepoint.
  std::span<const Neighbor> neighbors(char32_t c) const;

  /// Stored score for the pair, 1.0 for identical characters, nullopt if
  /// the pair was not stored.
  std::optional<double> find(char32_t a, char32_t b) const;

  std::size_t pair_count() const { return pairs_.size(); }

  /// Stored pairs, ascending by (first, second).
  std::vector<std::pair<CharPair, double>> sorted_pairs() const;

  /// Adds a pair in both directions. Used by the builder and cache reader.
  void insert(char32_t a, char32_t b, double score);

  /// Restores neighbor ordering after a batch of inserts.
  void finalize();

 private:
  static std::uint64_t key(char32_t a, char32_t b);

  std::vector<char32_t> charset_;
  double beta_;
  double store_floor_;
  std::unordered_map<char32_t, std::vector<Neighbor>> neighbors_;
  std::unordered_map<std::uint64_t, double> pairs_;
};

/// Scores every unordered pair of `charset` (deduplicated, nonempty) and
/// keeps those with score >= store_floor. `threads` = 0 picks the hardware
/// concurrency. Output does not depend on the thread count.
SimilarityMatrix build_matrix(const CharTables& tables, std::span<const char32_t> charset,
                              double beta, double store_floor, unsigned threads = 0);

/// Cache file: "#beta=<b> floor=<f>" then "<c1>\t<c2>\t<score %.6f>" per
/// stored pair, smaller codepoint first, sorted.
void write_matrix_cache(std::ostream& out, const SimilarityMatrix& matrix);

/// Reads a cache file. Scores carry the file's six-decimal precision unless
/// `tables` is given, in which case stored pairs are rescored exactly.
SimilarityMatrix read_matrix_cache(std::istream& in, const CharTables* tables = nullptr);

/// Pairs with similarity strictly above `threshold`, sorted. Requires
/// threshold >= matrix.store_floor() (otherwise ParameterError).
std::vector<CharPair> confusion_set(const SimilarityMatrix& matrix, double threshold);

/// Brute-force variant over every pair of `charset`.
std::vector<CharPair> confusion_set(const CharTables& tables,
                                    std::span<const char32_t> charset, double beta,
                                    double threshold, unsigned threads = 0);

/// "#beta=<b> threshold=<t>" then "<c1>\t<c2>" per pair.
void write_confusion_set(std::ostream& out, std::span<const CharPair> pairs,
                         double beta, double threshold);

/// Reads a neighbor TSV (confusion export or matrix cache). The score column
/// is optional; comment lines are skipped.
std::vector<CharPair> read_pair_file(std::istream& in);

}  // namespace disc
