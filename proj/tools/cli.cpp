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

#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "disc/chardata.hpp"
#include "disc/errors.hpp"
#include "disc/evalkit.hpp"
#include "disc/fusion.hpp"
#include "disc/intervention.hpp"
#include "disc/unicode.hpp"
#include "json.hpp"

#ifndef DISC_DEFAULT_DATA_DIR
#define DISC_DEFAULT_DATA_DIR "data"
#endif

namespace disc::cli {
namespace {

struct Config {
  std::string data_dir;
  SimilarityParams params;
  bool json = false;
  bool trace = false;
};

struct SimArgs {
  std::string first;
  std::string second;
};

struct MatrixArgs {
  std::string charset;
  std::string out = "-";
  double floor = 0.4;
  unsigned threads = 0;
};

struct ConfuseArgs {
  std::string charset;
  std::string matrix;
  std::string out = "-";
  unsigned threads = 0;
};

struct CorrectArgs {
  std::string in = "-";
  std::string out = "-";
  std::string matrix;
};

struct EvalArgs {
  std::string corpus;
  std::string hyp;
};

struct StatsArgs {
  std::string train;
  std::string test;
};

// Raised for problems that are the caller's fault but only show up after
// parsing (e.g. a multi-character argument).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string default_data_dir() {
  if (const char* env = std::getenv("DISC_DATA_DIR"); env && *env) return env;
  return DISC_DEFAULT_DATA_DIR;
}

void add_global_flags(CLI::App& app, Config& cfg) {
  app.add_option("--data-dir", cfg.data_dir, "Directory holding the character tables");
  app.add_option("--alpha", cfg.params.alpha, "Similarity weight in the decode score");
  app.add_option("--beta", cfg.params.beta, "Phonetic share of the fused similarity");
  app.add_option("--copy-penalty", cfg.params.copy_penalty,
                 "Amount subtracted from the source character's probability");
  app.add_option("--threshold", cfg.params.confusion_threshold,
                 "Confusion pairs must score strictly above this");
  app.add_flag("--json", cfg.json, "Machine-readable output");
  app.add_flag("--trace", cfg.trace, "Emit scored candidates with corrections");
}

char32_t single_char_arg(const std::string& text, const char* what) {
  const char32_t c = single_scalar(text);
  if (c == 0) {
    throw UsageError(std::string(what) + " must be exactly one character, got '" + text +
                     "'");
  }
  return c;
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::vector<char32_t> read_charset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open charset file " + path);
  std::vector<char32_t> out;
  std::set<char32_t> seen;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const char32_t c = single_scalar(line);
    if (c == 0) {
      throw Error(path + ":" + std::to_string(number) + ": expected one character per line");
    }
    if (seen.insert(c).second) out.push_back(c);
  }
  if (out.empty()) throw Error("charset " + path + " is empty");
  return out;
}

// Output sink: a file, or the command's `out` stream for "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return in;
}

// ---------------------------------------------------------------------------

int cmd_sim(const Config& cfg, const SimArgs& args, std::ostream& out) {
  const char32_t a = single_char_arg(args.first, "first argument");
  const char32_t b = single_char_arg(args.second, "second argument");
  const auto tables = load_tables(cfg.data_dir);
  const auto r = explain_similarity(tables, a, b, cfg.params.beta);
  if (cfg.json) {
    nlohmann::ordered_json doc;
    doc["c1"] = args.first;
    doc["c2"] = args.second;
    doc["beta"] = cfg.params.beta;
    doc["phonetic"] = r.phonetic;
    doc["four_corner"] = r.glyph.four_corner;
    doc["structure_code"] = r.glyph.structure_code;
    doc["stroke_distance"] = r.glyph.stroke_distance;
    doc["stroke_lcs"] = r.glyph.stroke_lcs;
    doc["glyph"] = r.glyph_mean;
    doc["sim"] = r.fused;
    out << doc.dump() << '\n';
    return kExitOk;
  }
  const std::pair<const char*, double> rows[] = {
      {"phonetic", r.phonetic},
      {"four_corner", r.glyph.four_corner},
      {"structure_code", r.glyph.structure_code},
      {"stroke_distance", r.glyph.stroke_distance},
      {"stroke_lcs", r.glyph.stroke_lcs},
      {"glyph", r.glyph_mean},
      {"sim", r.fused},
  };
  for (const auto& [name, value] : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-16s %s\n", name, fmt4(value).c_str());
    out << buf;
  }
  return kExitOk;
}

int cmd_matrix(const Config& cfg, const MatrixArgs& args, std::ostream& out,
               std::ostream& err) {
  const auto charset = read_charset(args.charset);
  const auto tables = load_tables(cfg.data_dir);
  const auto matrix =
      build_matrix(tables, charset, cfg.params.beta, args.floor, args.threads);
  {
    Sink sink(args.out, out);
    write_matrix_cache(*sink, matrix);
  }
  const std::size_t n = charset.size();
  err << "charset " << n << ", evaluated " << n * (n - 1) / 2 << " pairs, stored "
      << matrix.pair_count() << '\n';
  return kExitOk;
}

int cmd_confuse(const Config& cfg, const ConfuseArgs& args, std::ostream& out,
                std::ostream& err) {
  std::vector<CharPair> pairs;
  const double threshold = cfg.params.confusion_threshold;
  std::size_t evaluated = 0;
  if (!args.matrix.empty()) {
    auto in = open_input(args.matrix);
    const auto matrix = read_matrix_cache(in);
    if (matrix.beta() != cfg.params.beta) {
      throw ParameterError("matrix cache was built with beta=" +
                           std::to_string(matrix.beta()));
    }
    pairs = confusion_set(matrix, threshold);
    evaluated = matrix.pair_count();
  } else {
    if (args.charset.empty()) throw UsageError("confuse needs --charset or --matrix");
    const auto charset = read_charset(args.charset);
    const auto tables = load_tables(cfg.data_dir);
    pairs = confusion_set(tables, charset, cfg.params.beta, threshold, args.threads);
    evaluated = charset.size() * (charset.size() - 1) / 2;
  }
  {
    Sink sink(args.out, out);
    write_confusion_set(*sink, pairs, cfg.params.beta, threshold);
  }
  err << "evaluated " << evaluated << " pairs, " << pairs.size() << " above "
      << threshold << '\n';
  return kExitOk;
}

int cmd_correct(const Config& cfg, const CorrectArgs& args, std::ostream& out) {
  const auto tables = load_tables(cfg.data_dir);
  std::optional<SimilarityMatrix> matrix;
  if (!args.matrix.empty()) {
    auto in = open_input(args.matrix);
    matrix = read_matrix_cache(in, &tables);
  }
  const auto similarity =
      make_similarity_fn(tables, cfg.params.beta, matrix ? &*matrix : nullptr);

  std::ifstream file;
  std::istream* in = &std::cin;
  if (args.in != "-") {
    file = open_input(args.in);
    in = &file;
  }
  Sink sink(args.out, out);
  DistributionReader reader(*in);
  while (auto sentence = reader.next()) {
    const auto correction = correct_sentence(*sentence, cfg.params, similarity);
    *sink << format_correction(*sentence, correction, cfg.trace) << '\n';
  }
  return kExitOk;
}

int cmd_eval(const Config& cfg, const EvalArgs& args, std::ostream& out) {
  auto corpus_in = open_input(args.corpus);
  auto hyp_in = open_input(args.hyp);
  const auto corpus = read_corpus(corpus_in);
  const auto hyps = read_hypotheses(hyp_in);
  const auto report = evaluate(align(corpus, hyps));
  out << (cfg.json ? report_json(report) + "\n" : format_report(report));
  return kExitOk;
}

int cmd_stats(const Config& cfg, const StatsArgs& args, std::ostream& out) {
  auto train_in = open_input(args.train);
  std::set<EditKey> train;
  for (const auto& pair : read_corpus(train_in)) {
    for (const auto& e : extract_edits(pair.source, pair.target, pair.id)) {
      train.insert({e.src, e.tgt});
    }
  }
  auto test_in = open_input(args.test);
  std::vector<EditKey> test;
  for (const auto& pair : read_corpus(test_in)) {
    for (const auto& e : extract_edits(pair.source, pair.target, pair.id)) {
      test.push_back({e.src, e.tgt});
    }
  }
  const auto stats = seen_pair_stats(train, test);
  if (cfg.json) {
    nlohmann::ordered_json doc{{"total", stats.total},
                               {"seen", stats.seen},
                               {"proportion", stats.proportion}};
    out << doc.dump() << '\n';
  } else {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-10s %8zu\n%-10s %8zu\n%-10s %8.4f\n", "total",
                  stats.total, "seen", stats.seen, "proportion", stats.proportion);
    out << buf;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  cfg.data_dir = default_data_dir();

  CLI::App app{"Character-similarity decoding intervention for Chinese spelling check"};
  app.name("disc");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  add_global_flags(app, cfg);

  SimArgs sim_args;
  auto* sim = app.add_subcommand("sim", "Print phonetic, glyph and fused similarity");
  add_global_flags(*sim, cfg);
  sim->add_option("c1", sim_args.first, "First character")->required();
  sim->add_option("c2", sim_args.second, "Second character")->required();

  MatrixArgs matrix_args;
  auto* matrix = app.add_subcommand("matrix", "Precompute a similarity neighborhood cache");
  add_global_flags(*matrix, cfg);
  matrix->add_option("--charset", matrix_args.charset, "One character per line")
      ->required()
      ->check(CLI::ExistingFile);
  matrix->add_option("--out", matrix_args.out, "Cache TSV path, '-' for stdout");
  matrix->add_option("--floor", matrix_args.floor, "Smallest score kept in the cache");
  matrix->add_option("--threads", matrix_args.threads, "Worker threads, 0 = all cores");

  ConfuseArgs confuse_args;
  auto* confuse = app.add_subcommand("confuse", "Export pairs scoring above --threshold");
  add_global_flags(*confuse, cfg);
  confuse->add_option("--charset", confuse_args.charset, "One character per line")
      ->check(CLI::ExistingFile);
  confuse->add_option("--matrix", confuse_args.matrix, "Read pairs from a matrix cache")
      ->check(CLI::ExistingFile);
  confuse->add_option("--out", confuse_args.out, "Confusion TSV path, '-' for stdout");
  confuse->add_option("--threads", confuse_args.threads, "Worker threads, 0 = all cores");

  CorrectArgs correct_args;
  auto* correct = app.add_subcommand("correct", "Rescore model distributions (JSONL)");
  add_global_flags(*correct, cfg);
  correct->add_option("--in", correct_args.in, "Distribution JSONL, '-' for stdin");
  correct->add_option("--out", correct_args.out, "Output JSONL, '-' for stdout");
  correct->add_option("--matrix", correct_args.matrix, "Prebuilt matrix cache")
      ->check(CLI::ExistingFile);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Sentence-level P/R/F1 and FPR");
  add_global_flags(*eval, cfg);
  eval->add_option("--corpus", eval_args.corpus, "Corpus TSV <id> <source> <target>")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--hyp", eval_args.hyp, "Hypotheses (correct JSONL or <id> <hyp> TSV)")
      ->required()
      ->check(CLI::ExistingFile);

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Share of test edit pairs seen in training");
  add_global_flags(*stats, cfg);
  stats->add_option("--train", stats_args.train, "Training corpus TSV")
      ->required()
      ->check(CLI::ExistingFile);
  stats->add_option("--test", stats_args.test, "Test corpus TSV")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.params.validate();
    if (*sim) return cmd_sim(cfg, sim_args, out);
    if (*matrix) return cmd_matrix(cfg, matrix_args, out, err);
    if (*confuse) return cmd_confuse(cfg, confuse_args, out, err);
    if (*correct) return cmd_correct(cfg, correct_args, out);
    if (*eval) return cmd_eval(cfg, eval_args, out);
    if (*stats) return cmd_stats(cfg, stats_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace disc::cli
