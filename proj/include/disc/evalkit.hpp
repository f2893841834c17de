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
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace disc {

struct SentencePair {
  std::string id;
  std::u32string source;
  std::u32string target;
};

struct EditPair {
  char32_t src;
  char32_t tgt;
  std::size_t position;

  friend bool operator==(const EditPair&, const EditPair&) = default;
};

/// One EditPair per differing index, ascending. Throws CorpusError (with
/// `id` in the message) when the lengths differ.
std::vector<EditPair> extract_edits(std::u32string_view source, std::u32string_view other,
                                    std::string_view id = {});

struct EvalTriple {
  std::string id;
  std::u32string source;
  std::u32string hypothesis;
  std::u32string target;
};

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalCounts {
  std::size_t sentences = 0;
  std::size_t changed = 0;          // hypothesis != source
  std::size_t gold_errored = 0;     // target != source
  std::size_t detection_hits = 0;
  std::size_t correction_hits = 0;
  std::size_t false_positives = 0;  // target == source, hypothesis != source
};

struct EvalReport {
  PrecisionRecall detection;
  PrecisionRecall correction;
  double fpr = 0.0;
  EvalCounts counts;
};

/// Sentence-level metrics, accumulated one sentence at a time.
///
/// Detection hit: the set of changed positions equals the gold set and is
/// nonempty. Correction hit: hypothesis equals a target that differs from
/// the source. Precision divides by sentences the system changed, recall by
/// sentences with gold errors. FPR is the share of error-free sentences the
/// system changed. Empty denominators give 0.
class EvalAccumulator {
 public:
  void add(const EvalTriple& triple);
  EvalReport report() const;

 private:
  EvalCounts counts_;
};

EvalReport evaluate(std::span<const EvalTriple> corpus);

struct SeenPairStats {
  std::size_t total = 0;
  std::size_t seen = 0;
  double proportion = 0.0;
};

using EditKey = std::pair<char32_t, char32_t>;

/// Counts test edit tokens whose (src, tgt) occurs in `train`.
SeenPairStats seen_pair_stats(const std::set<EditKey>& train, std::span<const EditKey> test);

/// Corpus TSV: "<id>\t<source>\t<target>" per line, '#' comments skipped.
std::vector<SentencePair> read_corpus(std::istream& in);

struct Hypothesis {
  std::string id;
  std::u32string text;
};

/// Hypotheses as correction JSONL ({"id", "hyp", ...}) or "<id>\t<hyp>" TSV.
/// The format is sniffed per line.
std::vector<Hypothesis> read_hypotheses(std::istream& in);

/// Pairs every corpus sentence with its hypothesis by id. Throws CorpusError
/// naming the first corpus id without a hypothesis (or the reverse).
std::vector<EvalTriple> align(std::span<const SentencePair> corpus,
                              std::span<const Hypothesis> hypotheses);

/// Aligned two-column text rendering and a JSON rendering of a report.
std::string format_report(const EvalReport& report);
std::string report_json(const EvalReport& report);

}  // namespace disc
