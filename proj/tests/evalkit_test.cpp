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

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "disc/errors.hpp"
#include "disc/unicode.hpp"
#include "test_util.hpp"

namespace disc {
namespace {

std::vector<EvalTriple> toy_corpus() {
  return {{"e1", U"今天读假", U"今天度假", U"今天度假"},
          {"e2", U"记得戴眼睛", U"记得戴眼镜", U"记得戴眼镜"},
          {"c1", U"我很高兴", U"我很高兴", U"我很高兴"},
          {"c2", U"他在读书", U"他在度书", U"他在读书"}};
}

// Straight-line recomputation from the metric definitions.
EvalReport naive_report(const std::vector<EvalTriple>& corpus) {
  auto diff = [](const std::u32string& a, const std::u32string& b) {
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) out.insert(i);
    }
    return out;
  };
  double changed = 0, errored = 0, clean = 0, det = 0, cor = 0, fp = 0;
  for (const auto& t : corpus) {
    const auto pred = diff(t.source, t.hypothesis);
    const auto gold = diff(t.source, t.target);
    changed += !pred.empty();
    errored += !gold.empty();
    clean += gold.empty();
    det += !gold.empty() && pred == gold;
    cor += !gold.empty() && t.hypothesis == t.target;
    fp += gold.empty() && !pred.empty();
  }
  auto pr = [&](double hits) {
    PrecisionRecall p;
    p.precision = changed ? hits / changed : 0.0;
    p.recall = errored ? hits / errored : 0.0;
    p.f1 = p.precision + p.recall > 0
               ? 2 * p.precision * p.recall / (p.precision + p.recall)
               : 0.0;
    return p;
  };
  EvalReport r;
  r.detection = pr(det);
  r.correction = pr(cor);
  r.fpr = clean ? fp / clean : 0.0;
  r.counts.detection_hits = static_cast<std::size_t>(det);
  r.counts.correction_hits = static_cast<std::size_t>(cor);
  return r;
}

TEST(ExtractEditsTest, Positions) {
  const auto edits = extract_edits(U"记得戴眼睛", U"记得戴眼镜");
  ASSERT_EQ(edits.size(), 1u);
  EXPECT_EQ(edits[0], (EditPair{U'睛', U'镜', 4}));
  EXPECT_TRUE(extract_edits(U"", U"").empty());
  try {
    extract_edits(U"读书", U"读", "s7");
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("s7"), std::string::npos);
  }
}

TEST(EvaluateTest, ToyCorpus) {
  const auto corpus = toy_corpus();
  const auto r = evaluate(corpus);
  EXPECT_DOUBLE_EQ(r.correction.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.correction.recall, 1.0);
  EXPECT_DOUBLE_EQ(r.correction.f1, 0.8);
  EXPECT_DOUBLE_EQ(r.fpr, 0.5);
  EXPECT_DOUBLE_EQ(r.detection.f1, 0.8);
  EXPECT_EQ(r.counts.sentences, 4u);
  EXPECT_EQ(r.counts.changed, 3u);
  EXPECT_EQ(r.counts.gold_errored, 2u);
  EXPECT_EQ(r.counts.false_positives, 1u);
}

TEST(EvaluateTest, PerfectAndCopySystems) {
  auto corpus = toy_corpus();
  for (auto& t : corpus) t.hypothesis = t.target;
  auto r = evaluate(corpus);
  EXPECT_EQ(r.correction.f1, 1.0);
  EXPECT_EQ(r.detection.f1, 1.0);
  EXPECT_EQ(r.fpr, 0.0);

  for (auto& t : corpus) t.hypothesis = t.source;
  r = evaluate(corpus);
  EXPECT_EQ(r.correction.precision, 0.0);
  EXPECT_EQ(r.correction.recall, 0.0);
  EXPECT_EQ(r.correction.f1, 0.0);
  EXPECT_EQ(r.fpr, 0.0);

  EXPECT_EQ(evaluate({}).fpr, 0.0);
}

TEST(EvaluateTest, DetectionWithoutCorrection) {
  // Right position, wrong character: a detection hit only.
  const std::vector<EvalTriple> corpus = {{"a", U"读书", U"少书", U"度书"}};
  const auto r = evaluate(corpus);
  EXPECT_EQ(r.counts.detection_hits, 1u);
  EXPECT_EQ(r.counts.correction_hits, 0u);
}

TEST(EvaluateProperty, RandomCorporaAgreeWithNaiveOracle) {
  std::mt19937 rng(73);
  const std::u32string alphabet = U"读度少书人入";
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  std::bernoulli_distribution flip(0.15);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<EvalTriple> corpus;
    for (int n = 0; n < 20; ++n) {
      EvalTriple t;
      t.id = std::to_string(n);
      for (int i = 0; i < 5; ++i) t.source.push_back(alphabet[ch(rng)]);
      t.target = t.source;
      t.hypothesis = t.source;
      for (int i = 0; i < 5; ++i) {
        if (flip(rng)) t.target[i] = alphabet[ch(rng)];
        if (flip(rng)) t.hypothesis[i] = alphabet[ch(rng)];
        if (flip(rng)) t.hypothesis[i] = t.target[i];
      }
      corpus.push_back(std::move(t));
    }
    const auto r = evaluate(corpus);
    const auto want = naive_report(corpus);
    ASSERT_LE(r.counts.correction_hits, r.counts.detection_hits);
    ASSERT_EQ(r.counts.correction_hits, want.counts.correction_hits);
    ASSERT_EQ(r.counts.detection_hits, want.counts.detection_hits);
    ASSERT_DOUBLE_EQ(r.correction.f1, want.correction.f1);
    ASSERT_DOUBLE_EQ(r.detection.precision, want.detection.precision);
    ASSERT_DOUBLE_EQ(r.detection.recall, want.detection.recall);
    ASSERT_DOUBLE_EQ(r.fpr, want.fpr);
    for (double v : {r.correction.precision, r.correction.recall, r.correction.f1, r.fpr}) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }

    auto shuffled = corpus;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto s = evaluate(shuffled);
    ASSERT_EQ(report_json(s), report_json(r));
  }
}

TEST(SeenPairTest, Toy) {
  const std::set<EditKey> train = {{U'人', U'入'}};
  const std::vector<EditKey> test = {{U'人', U'入'}, {U'睛', U'镜'}};
  const auto s = seen_pair_stats(train, test);
  EXPECT_EQ(s.total, 2u);
  EXPECT_EQ(s.seen, 1u);
  EXPECT_EQ(s.proportion, 0.5);
  EXPECT_EQ(seen_pair_stats(train, {}).proportion, 0.0);
  // Tokens, not types: repeats count each time.
  const std::vector<EditKey> repeated = {{U'人', U'入'}, {U'人', U'入'}, {U'睛', U'镜'}};
  EXPECT_EQ(seen_pair_stats(train, repeated).seen, 2u);
  // Direction matters.
  const std::vector<EditKey> reversed = {{U'入', U'人'}};
  EXPECT_EQ(seen_pair_stats(train, reversed).seen, 0u);
}

TEST(CorpusIoTest, ReadAndAlign) {
  std::ifstream corpus_in(testing::fixture("eval/toy_corpus.tsv"));
  const auto corpus = read_corpus(corpus_in);
  ASSERT_EQ(corpus.size(), 4u);
  EXPECT_EQ(corpus[1].id, "e2");

  std::ifstream hyp_in(testing::fixture("eval/toy_hyp.jsonl"));
  const auto hyps = read_hypotheses(hyp_in);
  ASSERT_EQ(hyps.size(), 4u);
  const auto r = evaluate(align(corpus, hyps));
  EXPECT_DOUBLE_EQ(r.correction.f1, 0.8);
  EXPECT_DOUBLE_EQ(r.fpr, 0.5);

  std::ifstream missing_in(testing::fixture("eval/missing_hyp.tsv"));
  const auto partial = read_hypotheses(missing_in);
  try {
    align(corpus, partial);
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("c1"), std::string::npos);
  }

  std::vector<Hypothesis> extra = hyps;
  extra.push_back({"zz", U"多"});
  EXPECT_THROW(align(corpus, extra), CorpusError);
}

TEST(CorpusIoTest, MalformedCorpus) {
  std::istringstream two_fields("a\t读书\n");
  EXPECT_THROW(read_corpus(two_fields), CorpusError);
  std::istringstream lengths("a\t读书\t读\n");
  EXPECT_THROW(read_corpus(lengths), CorpusError);
  std::istringstream mixed("a\t度书\n{\"id\":\"b\",\"hyp\":\"读\"}\n");
  const auto h = read_hypotheses(mixed);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[1].text, U"读");
}

TEST(ReportTest, Renderings) {
  const auto corpus = toy_corpus();
  const auto r = evaluate(corpus);
  const auto text = format_report(r);
  EXPECT_NE(text.find("correction   0.6667   1.0000   0.8000"), std::string::npos) << text;
  EXPECT_NE(text.find("fpr          0.5000"), std::string::npos) << text;
  const auto json = report_json(r);
  EXPECT_NE(json.find("\"fpr\":0.5"), std::string::npos) << json;
  EXPECT_NE(json.find("\"cor_hits\":2"), std::string::npos) << json;
}

}  // namespace
}  // namespace disc
