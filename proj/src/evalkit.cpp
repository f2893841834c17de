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

#include "disc/evalkit.hpp"

#include <cstdio>
#include <istream>
#include <unordered_map>

#include "disc/errors.hpp"
#include "disc/unicode.hpp"
#include "json.hpp"

namespace disc {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

PrecisionRecall prf(std::size_t hits, std::size_t predicted, std::size_t gold) {
  PrecisionRecall out;
  out.precision = ratio(hits, predicted);
  out.recall = ratio(hits, gold);
  const double sum = out.precision + out.recall;
  out.f1 = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

std::vector<std::size_t> positions(const std::vector<EditPair>& edits) {
  std::vector<std::size_t> out;
  out.reserve(edits.size());
  for (const auto& e : edits) out.push_back(e.position);
  return out;
}

std::u32string decode_field(std::string_view text, std::size_t line) {
  try {
    return utf8_decode(text);
  } catch (const Error& e) {
    throw CorpusError("line " + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace

std::vector<EditPair> extract_edits(std::u32string_view source, std::u32string_view other,
                                    std::string_view id) {
  if (source.size() != other.size()) {
    throw CorpusError("sentence " + std::string(id) + ": length mismatch (" +
                      std::to_string(source.size()) + " vs " +
                      std::to_string(other.size()) + ")");
  }
  std::vector<EditPair> out;
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (source[i] != other[i]) out.push_back({source[i], other[i], i});
  }
  return out;
}

void EvalAccumulator::add(const EvalTriple& t) {
  const auto predicted = extract_edits(t.source, t.hypothesis, t.id);
  const auto gold = extract_edits(t.source, t.target, t.id);
  ++counts_.sentences;
  if (!predicted.empty()) ++counts_.changed;
  if (!gold.empty()) {
    ++counts_.gold_errored;
  } else if (!predicted.empty()) {
    ++counts_.false_positives;
  }
  if (!predicted.empty() && positions(predicted) == positions(gold)) {
    ++counts_.detection_hits;
  }
  if (!gold.empty() && t.hypothesis == t.target) ++counts_.correction_hits;
}

EvalReport EvalAccumulator::report() const {
  EvalReport out;
  out.counts = counts_;
  out.detection = prf(counts_.detection_hits, counts_.changed, counts_.gold_errored);
  out.correction = prf(counts_.correction_hits, counts_.changed, counts_.gold_errored);
  out.fpr = ratio(counts_.false_positives, counts_.sentences - counts_.gold_errored);
  return out;
}

EvalReport evaluate(std::span<const EvalTriple> corpus) {
  EvalAccumulator acc;
  for (const auto& t : corpus) acc.add(t);
  return acc.report();
}

SeenPairStats seen_pair_stats(const std::set<EditKey>& train, std::span<const EditKey> test) {
  SeenPairStats out;
  out.total = test.size();
  for (const auto& pair : test) out.seen += train.contains(pair) ? 1 : 0;
  out.proportion = ratio(out.seen, out.total);
  return out;
}

std::vector<SentencePair> read_corpus(std::istream& in) {
  std::vector<SentencePair> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw CorpusError("corpus line " + std::to_string(number) +
                        ": expected <id>\\t<source>\\t<target>");
    }
    SentencePair pair;
    pair.id = line.substr(0, t1);
    pair.source = decode_field(std::string_view(line).substr(t1 + 1, t2 - t1 - 1), number);
    pair.target = decode_field(std::string_view(line).substr(t2 + 1), number);
    if (pair.source.size() != pair.target.size()) {
      throw CorpusError("sentence " + pair.id + ": source and target lengths differ");
    }
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<Hypothesis> read_hypotheses(std::istream& in) {
  std::vector<Hypothesis> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    Hypothesis h;
    if (line[first] == '{') {
      try {
        const auto doc = nlohmann::json::parse(line);
        const auto& id = doc.at("id");
        h.id = id.is_string() ? id.get<std::string>() : id.dump();
        h.text = decode_field(doc.at("hyp").get<std::string>(), number);
      } catch (const CorpusError&) {
        throw;
      } catch (const std::exception& e) {
        throw CorpusError("hypothesis line " + std::to_string(number) + ": " + e.what());
      }
    } else {
      const auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw CorpusError("hypothesis line " + std::to_string(number) +
                          ": expected <id>\\t<hypothesis>");
      }
      h.id = line.substr(0, tab);
      h.text = decode_field(std::string_view(line).substr(tab + 1), number);
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<EvalTriple> align(std::span<const SentencePair> corpus,
                              std::span<const Hypothesis> hypotheses) {
  std::unordered_map<std::string, const Hypothesis*> by_id;
  for (const auto& h : hypotheses) {
    if (!by_id.emplace(h.id, &h).second) {
      throw CorpusError("duplicate hypothesis id " + h.id);
    }
  }
  std::vector<EvalTriple> out;
  out.reserve(corpus.size());
  for (const auto& pair : corpus) {
    const auto it = by_id.find(pair.id);
    if (it == by_id.end()) throw CorpusError("no hypothesis for id " + pair.id);
    out.push_back({pair.id, pair.source, it->second->text, pair.target});
    by_id.erase(it);
  }
  if (!by_id.empty()) {
    for (const auto& h : hypotheses) {
      if (by_id.contains(h.id)) throw CorpusError("hypothesis id " + h.id + " not in corpus");
    }
  }
  return out;
}

std::string format_report(const EvalReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%-10s %8s %8s %8s\n"
                "%-10s %8.4f %8.4f %8.4f\n"
                "%-10s %8.4f %8.4f %8.4f\n"
                "%-10s %8.4f\n"
                "%-10s %8zu\n%-10s %8zu\n%-10s %8zu\n%-10s %8zu\n%-10s %8zu\n%-10s %8zu\n",
                "", "P", "R", "F1", "detection", r.detection.precision,
                r.detection.recall, r.detection.f1, "correction",
                r.correction.precision, r.correction.recall, r.correction.f1, "fpr",
                r.fpr, "sentences", r.counts.sentences, "changed", r.counts.changed,
                "errored", r.counts.gold_errored, "det_hits", r.counts.detection_hits,
                "cor_hits", r.counts.correction_hits, "false_pos",
                r.counts.false_positives);
  return buf;
}

std::string report_json(const EvalReport& r) {
  nlohmann::ordered_json out;
  auto block = [](const PrecisionRecall& p) {
    return nlohmann::ordered_json{{"p", p.precision}, {"r", p.recall}, {"f1", p.f1}};
  };
  out["detection"] = block(r.detection);
  out["correction"] = block(r.correction);
  out["fpr"] = r.fpr;
  out["counts"] = {{"sentences", r.counts.sentences},
                   {"changed", r.counts.changed},
                   {"gold_errored", r.counts.gold_errored},
                   {"det_hits", r.counts.detection_hits},
                   {"cor_hits", r.counts.correction_hits},
                   {"false_positives", r.counts.false_positives}};
  return out.dump();
}

}  // namespace disc
