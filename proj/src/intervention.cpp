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

#include "disc/intervention.hpp"

#include <algorithm>
#include <istream>
#include <memory>

#include "disc/errors.hpp"
#include "disc/unicode.hpp"
#include "json.hpp"

namespace disc {
namespace {

using json = nlohmann::json;

constexpr double kProbabilitySlack = 1e-6;

std::string char_label(char32_t c) { return "'" + utf8_encode(c) + "'"; }

// Higher score wins, then higher model probability, then lower codepoint.
bool better(const ScoredCandidate& x, const ScoredCandidate& y) {
  if (x.score != y.score) return x.score > y.score;
  if (x.model_prob != y.model_prob) return x.model_prob > y.model_prob;
  return x.ch < y.ch;
}

}  // namespace

void CandidateDistribution::validate() const {
  const auto where = [&] { return "position " + std::to_string(position) + ": "; };
  if (candidates.empty()) {
    throw IngestError(where() + "empty candidate list", 0, {}, position);
  }
  double total = 0.0;
  bool has_source = false;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    if (!(c.prob >= 0.0 && c.prob <= 1.0)) {
      throw IngestError(where() + "probability of " + char_label(c.ch) +
                            " is outside [0, 1]",
                        0, {}, position);
    }
    total += c.prob;
    has_source = has_source || c.ch == source;
    for (std::size_t j = 0; j < i; ++j) {
      if (candidates[j].ch == c.ch) {
        throw IngestError(where() + "duplicate candidate " + char_label(c.ch), 0, {},
                          position);
      }
    }
  }
  if (total > 1.0 + kProbabilitySlack) {
    throw IngestError(where() + "candidate probabilities sum to " +
                          std::to_string(total) + " > 1",
                      0, {}, position);
  }
  if (!has_source) {
    throw IngestError(where() + "source character " + char_label(source) +
                          " missing from candidates",
                      0, {}, position);
  }
}

void SentenceDistributions::validate() const {
  if (positions.size() != text.size()) {
    throw IngestError("sentence " + id + ": " + std::to_string(positions.size()) +
                          " positions for " + std::to_string(text.size()) +
                          " characters",
                      0, id);
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i].position != i) {
      throw IngestError("sentence " + id + ": position " + std::to_string(i) +
                            " is missing",
                        0, id, i);
    }
    if (positions[i].source != text[i]) {
      throw IngestError("sentence " + id + ": position " + std::to_string(i) +
                            " source does not match the text",
                        0, id, i);
    }
    try {
      positions[i].validate();
    } catch (const IngestError& e) {
      throw IngestError("sentence " + id + ": " + e.what(), 0, id, i);
    }
  }
}

Intervention intervene(const CandidateDistribution& dist, const SimilarityParams& params,
                       const SimilarityFn& similarity) {
  Intervention out;
  out.scored.reserve(dist.candidates.size());
  bool has_source = false;
  for (const auto& c : dist.candidates) {
    const bool is_source = c.ch == dist.source;
    has_source = has_source || is_source;
    const double s = similarity(dist.source, c.ch);
    const double prob_term = is_source ? c.prob - params.copy_penalty : c.prob;
    out.scored.push_back({c.ch, c.prob, s, prob_term + params.alpha * s});
  }
  if (!has_source) {
    throw IngestError("position " + std::to_string(dist.position) + ": source character " +
                          char_label(dist.source) + " missing from candidates",
                      0, {}, dist.position);
  }
  out.chosen = std::min_element(out.scored.begin(), out.scored.end(), better)->ch;
  return out;
}

Correction correct_sentence(const SentenceDistributions& sentence,
                            const SimilarityParams& params, const SimilarityFn& similarity) {
  Correction out;
  out.hypothesis.reserve(sentence.text.size());
  out.trace.reserve(sentence.positions.size());
  for (const auto& dist : sentence.positions) {
    try {
      auto result = intervene(dist, params, similarity);
      out.hypothesis.push_back(result.chosen);
      out.trace.push_back(std::move(result.scored));
    } catch (const IngestError& e) {
      throw IngestError("sentence " + sentence.id + ": " + e.what(), 0, sentence.id,
                        dist.position);
    }
  }
  return out;
}

SimilarityFn make_similarity_fn(const CharTables& tables, double beta,
                                const SimilarityMatrix* matrix) {
  if (matrix && matrix->beta() != beta) {
    throw ParameterError("matrix was built with a different beta");
  }
  auto engine = std::make_shared<const SimilarityEngine>(tables, beta);
  if (!matrix) {
    return [engine](char32_t a, char32_t b) { return (*engine)(a, b); };
  }
  return [engine, matrix](char32_t a, char32_t b) {
    if (auto hit = matrix->find(a, b)) return *hit;
    return (*engine)(a, b);
  };
}

// ---------------------------------------------------------------------------

SentenceDistributions parse_distribution_line(std::string_view text, std::size_t line) {
  const auto fail = [&](const std::string& why, const std::string& id = {}) -> IngestError {
    std::string where = "line " + std::to_string(line);
    if (!id.empty()) where += " (sentence " + id + ")";
    return IngestError(where + ": " + why, line, id);
  };

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw fail("record is not a JSON object");

  SentenceDistributions out;
  try {
    const auto& id = doc.at("id");
    out.id = id.is_string() ? id.get<std::string>() : id.dump();
    out.text = utf8_decode(doc.at("text").get<std::string>());
  } catch (const std::exception& e) {
    throw fail(std::string("bad id/text: ") + e.what());
  }

  const auto positions = doc.find("positions");
  if (positions == doc.end() || !positions->is_array()) {
    throw fail("missing positions array", out.id);
  }
  std::vector<std::optional<CandidateDistribution>> slots(out.text.size());
  for (const auto& entry : *positions) {
    std::size_t index = 0;
    CandidateDistribution dist;
    try {
      index = entry.at("i").get<std::size_t>();
      if (index >= slots.size()) {
        throw fail("position " + std::to_string(index) + " is past the end of the text",
                   out.id);
      }
      if (slots[index]) {
        throw fail("position " + std::to_string(index) + " appears twice", out.id);
      }
      dist.position = index;
      dist.source = out.text[index];
      for (const auto& cand : entry.at("cands")) {
        if (!cand.is_array() || cand.size() != 2) {
          throw fail("candidate must be a [char, prob] pair", out.id);
        }
        const char32_t ch = single_scalar(cand[0].get<std::string>());
        if (ch == 0) {
          throw fail("candidate at position " + std::to_string(index) +
                         " is not a single character",
                     out.id);
        }
        dist.candidates.push_back({ch, cand[1].get<double>()});
      }
    } catch (const IngestError&) {
      throw;
    } catch (const std::exception& e) {
      throw fail(std::string("bad position entry: ") + e.what(), out.id);
    }
    try {
      dist.validate();
    } catch (const IngestError& e) {
      throw IngestError("line " + std::to_string(line) + " (sentence " + out.id +
                            "): " + e.what(),
                        line, out.id, index);
    }
    slots[index] = std::move(dist);
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      throw IngestError("line " + std::to_string(line) + " (sentence " + out.id +
                            "): position " + std::to_string(i) + " is missing",
                        line, out.id, i);
    }
    out.positions.push_back(std::move(*slots[i]));
  }
  return out;
}

std::optional<SentenceDistributions> DistributionReader::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    return parse_distribution_line(text, line_);
  }
  return std::nullopt;
}

std::string format_correction(const SentenceDistributions& sentence,
                              const Correction& correction, bool with_trace) {
  nlohmann::ordered_json out;
  out["id"] = sentence.id;
  out["src"] = utf8_encode(sentence.text);
  out["hyp"] = utf8_encode(correction.hypothesis);
  if (with_trace) {
    auto trace = nlohmann::ordered_json::array();
    for (const auto& position : correction.trace) {
      auto scored = nlohmann::ordered_json::array();
      for (const auto& c : position) {
        scored.push_back({{"char", utf8_encode(c.ch)},
                          {"p", c.model_prob},
                          {"sim", c.similarity},
                          {"score", c.score}});
      }
      trace.push_back(std::move(scored));
    }
    out["trace"] = std::move(trace);
  }
  return out.dump();
}

}  // namespace disc
