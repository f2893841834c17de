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

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disc/chardata.hpp"
#include "disc/fusion.hpp"

namespace disc {

struct Candidate {
  char32_t ch;
  double prob;
};

/// Model output at one position, restricted to an exported candidate list.
struct CandidateDistribution {
  std::size_t position = 0;
  char32_t source = 0;
  std::vector<Candidate> candidates;

  /// Probabilities in [0,1] summing to at most 1 + 1e-6, no duplicate
  /// characters, and the source character present. Throws IngestError.
  void validate() const;
};

struct SentenceDistributions {
  std::string id;
  std::u32string text;
  std::vector<CandidateDistribution> positions;  // positions[i].position == i

  void validate() const;
};

struct ScoredCandidate {
  char32_t ch;
  double model_prob;
  double similarity;
  double score;
};

struct Intervention {
  char32_t chosen;
  std::vector<ScoredCandidate> scored;  // same order as the input candidates
};

/// Similarity between the source character and a candidate.
using SimilarityFn = std::function<double(char32_t source, char32_t candidate)>;

/// Scores each candidate as p - copy_penalty * [is source] + alpha * sim and
/// picks the best. Ties go to the higher model probability, then to the
/// lower codepoint.
Intervention intervene(const CandidateDistribution& dist, const SimilarityParams& params,
                       const SimilarityFn& similarity);

struct Correction {
  std::u32string hypothesis;
  std::vector<std::vector<ScoredCandidate>> trace;
};

/// Position-wise intervention; the output has the input's length.
Correction correct_sentence(const SentenceDistributions& sentence,
                            const SimilarityParams& params, const SimilarityFn& similarity);

/// Similarity backed by a prebuilt matrix when given, exact on-demand
/// evaluation otherwise (and for pairs the matrix does not hold).
SimilarityFn make_similarity_fn(const CharTables& tables, double beta,
                                const SimilarityMatrix* matrix = nullptr);

/// Parses one interchange line. `line` is used in error messages.
SentenceDistributions parse_distribution_line(std::string_view json, std::size_t line = 0);

/// Streams SentenceDistributions out of JSONL, one record per nonblank line.
class DistributionReader {
 public:
  explicit DistributionReader(std::istream& in) : in_(in) {}

  /// Next record, or nullopt at end of input. Throws IngestError.
  std::optional<SentenceDistributions> next();

  /// Line number of the last record returned.
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

/// One output line: {"id":..,"src":..,"hyp":..} plus "trace" when requested.
std::string format_correction(const SentenceDistributions& sentence,
                              const Correction& correction, bool with_trace);

}  // namespace disc
