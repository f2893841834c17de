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

#include "disc/fusion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <thread>

#include "disc/edit_distance.hpp"
#include "disc/errors.hpp"
#include "disc/phonetic.hpp"
#include "disc/unicode.hpp"

namespace disc {
namespace {

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw ParameterError("beta must lie in [0, 1], got " + std::to_string(beta));
  }
}

std::string shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

unsigned resolve_threads(unsigned threads, std::size_t rows) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(rows, 1)));
}

struct ScoredPair {
  char32_t a;
  char32_t b;
  double score;
};

// Evaluates all pairs i < j, keeping those accepted by `keep`. Rows are dealt
// round-robin to workers; results are sorted so order never depends on them.
template <typename Keep>
std::vector<ScoredPair> score_all_pairs(const SimilarityEngine& engine,
                                        std::span<const char32_t> charset,
                                        unsigned threads, Keep keep) {
  const std::size_t n = charset.size();
  const unsigned workers = resolve_threads(threads, n);
  std::vector<std::vector<ScoredPair>> partial(workers);
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += workers) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double s = engine(charset[i], charset[j]);
        if (keep(s)) partial[w].push_back({charset[i], charset[j], s});
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  std::vector<ScoredPair> all;
  for (auto& p : partial) all.insert(all.end(), p.begin(), p.end());
  for (auto& p : all) {
    if (p.a > p.b) std::swap(p.a, p.b);
  }
  std::sort(all.begin(), all.end(), [](const ScoredPair& x, const ScoredPair& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return all;
}

std::vector<char32_t> checked_charset(std::span<const char32_t> charset) {
  std::vector<char32_t> out(charset.begin(), charset.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw ContractError("charset contains duplicate characters");
  }
  return {charset.begin(), charset.end()};
}

}  // namespace

void SimilarityParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("alpha must be a finite value >= 0");
  }
  check_beta(beta);
  if (!(copy_penalty >= 0.0) || !std::isfinite(copy_penalty)) {
    throw ParameterError("copy penalty must be a finite value >= 0");
  }
  if (!(confusion_threshold >= 0.0 && confusion_threshold <= 1.0)) {
    throw ParameterError("confusion threshold must lie in [0, 1]");
  }
}

double sim(const CharTables& tables, char32_t c1, char32_t c2, double beta) {
  check_beta(beta);
  if (c1 == c2) return 1.0;
  return beta * phonetic_sim(tables, c1, c2) + (1.0 - beta) * glyph_sim(tables, c1, c2);
}

SimilarityBreakdown explain_similarity(const CharTables& tables, char32_t c1,
                                       char32_t c2, double beta) {
  SimilarityBreakdown out;
  out.phonetic = phonetic_sim(tables, c1, c2);
  out.glyph = glyph_components(tables, c1, c2);
  out.glyph_mean = out.glyph.mean();
  out.fused = sim(tables, c1, c2, beta);
  return out;
}

// ---------------------------------------------------------------------------

SimilarityEngine::SimilarityEngine(const CharTables& tables, double beta) : beta_(beta) {
  check_beta(beta);
  for (char32_t c : tables.characters()) {
    Profile p;
    if (const auto* readings = tables.pinyin(c)) {
      for (const auto& r : *readings) {
        p.readings.emplace_back(std::span<const char>(r.str().data(), r.str().size()));
      }
    }
    if (const auto* code = tables.four_corner(c)) p.four_corner = *code;
    if (const auto code = structure_aware_code(tables, c)) {
      p.structure_code.emplace(std::span<const char>(code->data(), code->size()));
    }
    if (const auto* seq = tables.strokes(c)) {
      p.strokes = LcsPattern<std::uint8_t>(std::span<const std::uint8_t>(seq->ids));
    }
    profiles_.emplace(c, std::move(p));
  }
}

const SimilarityEngine::Profile* SimilarityEngine::profile(char32_t c) const {
  const auto it = profiles_.find(c);
  return it == profiles_.end() ? nullptr : &it->second;
}

namespace {

// Under insert/delete 1 and substitute 2, LD = len(a) + len(b) - 2 LCS.
template <typename T>
double pattern_edit_similarity(const LcsPattern<T>& a, const LcsPattern<T>& b) {
  const std::size_t total = a.size() + b.size();
  return edit_similarity(static_cast<int>(total) - 2 * a.lcs(b), total);
}

}  // namespace

double SimilarityEngine::operator()(char32_t c1, char32_t c2) const {
  if (c1 == c2) return 1.0;
  const Profile* a = profile(c1);
  const Profile* b = profile(c2);
  if (!a || !b) return 0.0;  // no entries at all: every component falls back to 0

  double phonetic = 0.0;
  for (const auto& ra : a->readings) {
    for (const auto& rb : b->readings) {
      phonetic = std::max(phonetic, pattern_edit_similarity(ra, rb));
    }
  }

  GlyphSimilarity glyph;
  if (a->four_corner && b->four_corner) {
    int matches = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      matches += (*a->four_corner)[i] == (*b->four_corner)[i] ? 1 : 0;
    }
    glyph.four_corner = matches / 4.0;
  }
  if (a->structure_code && b->structure_code) {
    glyph.structure_code = pattern_edit_similarity(*a->structure_code, *b->structure_code);
  }
  if (!a->strokes.empty() && !b->strokes.empty()) {
    const int lcs = a->strokes.lcs(b->strokes);
    const std::size_t total = a->strokes.size() + b->strokes.size();
    glyph.stroke_distance = edit_similarity(static_cast<int>(total) - 2 * lcs, total);
    glyph.stroke_lcs =
        lcs / static_cast<double>(std::max(a->strokes.size(), b->strokes.size()));
  }
  return beta_ * phonetic + (1.0 - beta_) * glyph.mean();
}

// ---------------------------------------------------------------------------

SimilarityMatrix::SimilarityMatrix(std::vector<char32_t> charset, double beta,
                                   double store_floor)
    : charset_(std::move(charset)), beta_(beta), store_floor_(store_floor) {}

std::uint64_t SimilarityMatrix::key(char32_t a, char32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::span<const Neighbor> SimilarityMatrix::neighbors(char32_t c) const {
  const auto it = neighbors_.find(c);
  if (it == neighbors_.end()) return {};
  return it->second;
}

std::optional<double> SimilarityMatrix::find(char32_t a, char32_t b) const {
  if (a == b) return 1.0;
  const auto it = pairs_.find(key(a, b));
  if (it == pairs_.end()) return std::nullopt;
  return it->second;
}

void SimilarityMatrix::insert(char32_t a, char32_t b, double score) {
  if (a == b) return;
  const auto [it, inserted] = pairs_.emplace(key(a, b), score);
  if (!inserted) {
    it->second = score;
    for (auto* list : {&neighbors_[a], &neighbors_[b]}) {
      for (auto& n : *list) {
        if (n.ch == a || n.ch == b) n.score = score;
      }
    }
    return;
  }
  neighbors_[a].push_back({b, score});
  neighbors_[b].push_back({a, score});
}

void SimilarityMatrix::finalize() {
  for (auto& [_, list] : neighbors_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& x, const Neighbor& y) {
      if (x.score != y.score) return x.score > y.score;
      return x.ch < y.ch;
    });
  }
}

std::vector<std::pair<CharPair, double>> SimilarityMatrix::sorted_pairs() const {
  std::vector<std::pair<CharPair, double>> out;
  out.reserve(pairs_.size());
  for (const auto& [k, score] : pairs_) {
    out.push_back({CharPair{static_cast<char32_t>(k >> 32),
                            static_cast<char32_t>(k & 0xFFFFFFFFu)},
                   score});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

SimilarityMatrix build_matrix(const CharTables& tables, std::span<const char32_t> charset,
                              double beta, double store_floor, unsigned threads) {
  if (charset.empty()) throw ContractError("charset is empty");
  auto chars = checked_charset(charset);
  const SimilarityEngine engine(tables, beta);
  const auto pairs = score_all_pairs(engine, chars, threads,
                                     [&](double s) { return s >= store_floor; });
  SimilarityMatrix matrix(std::move(chars), beta, store_floor);
  for (const auto& p : pairs) matrix.insert(p.a, p.b, p.score);
  matrix.finalize();
  return matrix;
}

void write_matrix_cache(std::ostream& out, const SimilarityMatrix& matrix) {
  out << "#beta=" << shortest(matrix.beta()) << " floor=" << shortest(matrix.store_floor())
      << '\n';
  for (const auto& [pair, score] : matrix.sorted_pairs()) {
    out << utf8_encode(pair.first) << '\t' << utf8_encode(pair.second) << '\t'
        << fixed6(score) << '\n';
  }
}

SimilarityMatrix read_matrix_cache(std::istream& in, const CharTables* tables) {
  std::string line;
  std::size_t number = 0;
  std::optional<double> beta;
  std::optional<double> floor;
  std::vector<ScoredPair> rows;
  auto fail = [&](const std::string& why) {
    throw LoadError("matrix cache:" + std::to_string(number) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with("#beta=")) {
        double b = 0, f = 0;
        if (std::sscanf(line.c_str(), "#beta=%lf floor=%lf", &b, &f) != 2) {
          fail("bad header");
        }
        beta = b;
        floor = f;
      }
      continue;
    }
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) fail("expected 3 tab-separated fields");
    const char32_t a = single_scalar(std::string_view(line).substr(0, t1));
    const char32_t b = single_scalar(std::string_view(line).substr(t1 + 1, t2 - t1 - 1));
    if (a == 0 || b == 0) fail("pair fields must be single characters");
    double score = 0.0;
    const char* first = line.data() + t2 + 1;
    const auto res = std::from_chars(first, line.data() + line.size(), score);
    if (res.ec != std::errc() || res.ptr != line.data() + line.size()) fail("bad score");
    rows.push_back({a, b, score});
  }
  if (!beta) throw LoadError("matrix cache: missing '#beta=... floor=...' header");
  check_beta(*beta);

  std::set<char32_t> chars;
  for (const auto& r : rows) {
    chars.insert(r.a);
    chars.insert(r.b);
  }
  SimilarityMatrix matrix({chars.begin(), chars.end()}, *beta, *floor);
  std::optional<SimilarityEngine> engine;
  if (tables) engine.emplace(*tables, *beta);
  for (const auto& r : rows) {
    matrix.insert(r.a, r.b, engine ? (*engine)(r.a, r.b) : r.score);
  }
  matrix.finalize();
  return matrix;
}

std::vector<CharPair> confusion_set(const SimilarityMatrix& matrix, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ParameterError("threshold must lie in [0, 1]");
  }
  if (threshold < matrix.store_floor()) {
    throw ParameterError("threshold " + shortest(threshold) +
                         " is below the matrix store floor " +
                         shortest(matrix.store_floor()));
  }
  std::vector<CharPair> out;
  for (const auto& [pair, score] : matrix.sorted_pairs()) {
    if (score > threshold) out.push_back(pair);
  }
  return out;
}

std::vector<CharPair> confusion_set(const CharTables& tables,
                                    std::span<const char32_t> charset, double beta,
                                    double threshold, unsigned threads) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ParameterError("threshold must lie in [0, 1]");
  }
  const auto chars = checked_charset(charset);
  const SimilarityEngine engine(tables, beta);
  const auto pairs =
      score_all_pairs(engine, chars, threads, [&](double s) { return s > threshold; });
  std::vector<CharPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back({p.a, p.b});
  return out;
}

void write_confusion_set(std::ostream& out, std::span<const CharPair> pairs, double beta,
                         double threshold) {
  out << "#beta=" << shortest(beta) << " threshold=" << shortest(threshold) << '\n';
  for (const auto& p : pairs) {
    out << utf8_encode(p.first) << '\t' << utf8_encode(p.second) << '\n';
  }
}

std::vector<CharPair> read_pair_file(std::istream& in) {
  std::vector<CharPair> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto t1 = line.find('\t');
    if (t1 == std::string::npos) {
      throw LoadError("pair file:" + std::to_string(number) + ": expected a tab");
    }
    const auto t2 = line.find('\t', t1 + 1);
    const char32_t a = single_scalar(std::string_view(line).substr(0, t1));
    const char32_t b = single_scalar(std::string_view(line).substr(
        t1 + 1, t2 == std::string::npos ? std::string::npos : t2 - t1 - 1));
    if (a == 0 || b == 0) {
      throw LoadError("pair file:" + std::to_string(number) +
                      ": pair fields must be single characters");
    }
    out.push_back(a < b ? CharPair{a, b} : CharPair{b, a});
  }
  return out;
}

}  // namespace disc
