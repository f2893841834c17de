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

#include "disc/chardata.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "disc/errors.hpp"
#include "disc/unicode.hpp"

namespace disc {
namespace {

// Tone-marked (and u-umlaut) letters folded to their bare ASCII letter.
constexpr std::pair<char32_t, char> kToneFold[] = {
    {U'ā', 'a'}, {U'á', 'a'}, {U'ǎ', 'a'}, {U'à', 'a'}, {U'Ā', 'a'},
    {U'Á', 'a'}, {U'Ǎ', 'a'}, {U'À', 'a'}, {U'ē', 'e'}, {U'é', 'e'},
    {U'ě', 'e'}, {U'è', 'e'}, {U'Ē', 'e'}, {U'É', 'e'}, {U'Ě', 'e'},
    {U'È', 'e'}, {U'ê', 'e'}, {U'ế', 'e'}, {U'ề', 'e'}, {U'ī', 'i'},
    {U'í', 'i'}, {U'ǐ', 'i'}, {U'ì', 'i'}, {U'Ī', 'i'}, {U'Í', 'i'},
    {U'Ǐ', 'i'}, {U'Ì', 'i'}, {U'ō', 'o'}, {U'ó', 'o'}, {U'ǒ', 'o'},
    {U'ò', 'o'}, {U'Ō', 'o'}, {U'Ó', 'o'}, {U'Ǒ', 'o'}, {U'Ò', 'o'},
    {U'ū', 'u'}, {U'ú', 'u'}, {U'ǔ', 'u'}, {U'ù', 'u'}, {U'Ū', 'u'},
    {U'Ú', 'u'}, {U'Ǔ', 'u'}, {U'Ù', 'u'}, {U'ü', 'v'}, {U'ǖ', 'v'},
    {U'ǘ', 'v'}, {U'ǚ', 'v'}, {U'ǜ', 'v'}, {U'Ü', 'v'}, {U'Ǖ', 'v'},
    {U'Ǘ', 'v'}, {U'Ǚ', 'v'}, {U'Ǜ', 'v'}, {U'ń', 'n'}, {U'ň', 'n'},
    {U'ǹ', 'n'}, {U'ḿ', 'm'},
};

std::optional<char> fold_letter(char32_t cp) {
  if (cp >= U'a' && cp <= U'z') return static_cast<char>(cp);
  if (cp >= U'A' && cp <= U'Z') return static_cast<char>(cp - U'A' + U'a');
  for (const auto& [marked, bare] : kToneFold) {
    if (marked == cp) return bare;
  }
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

StructureKind kind_for_name(std::string_view name) {
  if (name == "LeftRight") return StructureKind::LeftRight;
  if (name == "UpDown") return StructureKind::UpDown;
  if (name.starts_with("Enclosure")) return StructureKind::Enclosure;
  return StructureKind::Other;
}

std::vector<StructureLetter> default_structure_letters() {
  return {{'B', "LeftRight", StructureKind::LeftRight},
          {'C', "UpDown", StructureKind::UpDown}};
}

struct Line {
  std::size_t number;
  std::string text;
};

}  // namespace

// ---------------------------------------------------------------------------

PinyinSeq::PinyinSeq(std::string letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw ContractError("empty pinyin sequence");
  for (char ch : letters_) {
    if (ch < 'a' || ch > 'z') {
      throw ContractError("pinyin must be lowercase a-z: " + letters_);
    }
  }
}

std::optional<PinyinSeq> PinyinSeq::normalize(std::string_view raw) {
  std::u32string decoded;
  try {
    decoded = utf8_decode(raw);
  } catch (const Error&) {
    return std::nullopt;
  }
  std::string out;
  for (char32_t cp : decoded) {
    if (cp >= U'0' && cp <= U'9') continue;  // numbered tones
    if (cp >= 0x0300 && cp <= 0x036F) {      // combining marks
      if (cp == 0x0308 && !out.empty() && out.back() == 'u') out.back() = 'v';
      continue;
    }
    if (cp == U':') {
      if (out.empty() || out.back() != 'u') return std::nullopt;
      out.back() = 'v';
      continue;
    }
    const auto letter = fold_letter(cp);
    if (!letter) return std::nullopt;
    out.push_back(*letter);
  }
  if (out.empty()) return std::nullopt;
  return PinyinSeq(std::move(out));
}

std::optional<FourCornerCode> FourCornerCode::parse(std::string_view text) {
  if (text.size() != 4) return std::nullopt;
  FourCornerCode code;
  for (std::size_t i = 0; i < 4; ++i) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
    code.digits_[i] = text[i];
  }
  return code;
}

// ---------------------------------------------------------------------------

CharTables::CharTables() : structure_letters_(default_structure_letters()) {}

const std::vector<PinyinSeq>* CharTables::pinyin(char32_t c) const {
  const auto it = pinyin_.find(c);
  return it == pinyin_.end() ? nullptr : &it->second;
}

const FourCornerCode* CharTables::four_corner(char32_t c) const {
  const auto it = four_corner_.find(c);
  return it == four_corner_.end() ? nullptr : &it->second;
}

const Decomposition* CharTables::decomposition(char32_t c) const {
  const auto it = decomposition_.find(c);
  return it == decomposition_.end() ? nullptr : &it->second;
}

const StrokeSeq* CharTables::strokes(char32_t c) const {
  const auto it = strokes_.find(c);
  return it == strokes_.end() ? nullptr : &it->second;
}

std::u32string CharTables::render_strokes(const StrokeSeq& seq) const {
  std::u32string out;
  out.reserve(seq.ids.size());
  for (auto id : seq.ids) out.push_back(stroke_alphabet_.at(id));
  return out;
}

std::optional<std::string> CharTables::lookup(char32_t c, TableKind which) const {
  switch (which) {
    case TableKind::Pinyin: {
      const auto* readings = pinyin(c);
      if (!readings) return std::nullopt;
      std::string out;
      for (const auto& r : *readings) {
        if (!out.empty()) out += ',';
        out += r.str();
      }
      return out;
    }
    case TableKind::FourCorner: {
      const auto* code = four_corner(c);
      if (!code) return std::nullopt;
      return std::string(code->str());
    }
    case TableKind::Decomposition: {
      const auto* dec = decomposition(c);
      if (!dec) return std::nullopt;
      std::string out(1, dec->letter);
      for (char32_t comp : dec->components) out += utf8_encode(comp);
      return out;
    }
    case TableKind::Strokes: {
      const auto* seq = strokes(c);
      if (!seq) return std::nullopt;
      return utf8_encode(render_strokes(*seq));
    }
  }
  return std::nullopt;
}

std::vector<char32_t> CharTables::characters() const {
  std::set<char32_t> all;
  for (const auto& [c, _] : pinyin_) all.insert(c);
  for (const auto& [c, _] : four_corner_) all.insert(c);
  for (const auto& [c, _] : decomposition_) all.insert(c);
  for (const auto& [c, _] : strokes_) all.insert(c);
  return {all.begin(), all.end()};
}

std::string CharTables::serialize() const {
  auto sorted_keys = [](const auto& map) {
    std::vector<char32_t> keys;
    keys.reserve(map.size());
    for (const auto& [c, _] : map) keys.push_back(c);
    std::sort(keys.begin(), keys.end());
    return keys;
  };

  std::ostringstream out;
  out << "[pinyin]\n";
  for (char32_t c : sorted_keys(pinyin_)) {
    out << utf8_encode(c) << '\t' << *lookup(c, TableKind::Pinyin) << '\n';
  }
  out << "[fourcorner]\n";
  for (char32_t c : sorted_keys(four_corner_)) {
    out << utf8_encode(c) << '\t' << four_corner_.at(c).str() << '\n';
  }
  out << "[decomp]\n#alphabet: ";
  for (std::size_t i = 0; i < structure_letters_.size(); ++i) {
    if (i) out << ',';
    out << structure_letters_[i].letter << '=' << structure_letters_[i].name;
  }
  out << '\n';
  for (char32_t c : sorted_keys(decomposition_)) {
    const auto& dec = decomposition_.at(c);
    out << utf8_encode(c) << '\t' << dec.letter << '\t';
    for (char32_t comp : dec.components) out << utf8_encode(comp);
    out << '\n';
  }
  out << "[strokes]\n#strokes: " << utf8_encode(std::u32string_view(
                                        stroke_alphabet_.data(),
                                        stroke_alphabet_.size()))
      << '\n';
  for (char32_t c : sorted_keys(strokes_)) {
    out << utf8_encode(c) << '\t' << utf8_encode(render_strokes(strokes_.at(c)))
        << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

class TablesLoader {
 public:
  explicit TablesLoader(std::filesystem::path dir) : dir_(std::move(dir)) {}

  CharTables load() {
    // Open all four up front so a missing file is reported before parsing.
    auto pinyin = read_lines("pinyin.tsv");
    auto fourcorner = read_lines("fourcorner.tsv");
    auto decomp = read_lines("decomp.tsv");
    auto strokes = read_lines("strokes.tsv");

    load_pinyin(pinyin);
    load_four_corner(fourcorner);
    load_decomposition(decomp);
    load_strokes(strokes);
    check_components();
    return std::move(tables_);
  }

 private:
  std::vector<Line> read_lines(const std::string& name) {
    const auto path = dir_ / name;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open table file " + path.string());
    std::vector<Line> lines;
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
      ++number;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      lines.push_back({number, std::move(text)});
    }
    return lines;
  }

  [[noreturn]] void fail(const std::string& file, std::size_t line,
                         const std::string& message) const {
    throw LoadError(file + ":" + std::to_string(line) + ": " + message);
  }

  void warn(const std::string& file, std::size_t line, const std::string& message) {
    tables_.warnings_.push_back(file + ":" + std::to_string(line) + ": " + message);
  }

  static bool is_row(const Line& line) {
    return !line.text.empty() && line.text.front() != '#';
  }

  std::vector<std::string_view> fields(const std::string& file, const Line& line,
                                       std::size_t expected) const {
    auto parts = split(line.text, '\t');
    if (parts.size() != expected) {
      fail(file, line.number,
           "expected " + std::to_string(expected) + " tab-separated fields, got " +
               std::to_string(parts.size()));
    }
    return parts;
  }

  char32_t key(const std::string& file, const Line& line, std::string_view text) const {
    const char32_t c = single_scalar(text);
    if (c == 0) fail(file, line.number, "key must be a single character");
    if (!is_han(c)) fail(file, line.number, "key is not a Han character");
    return c;
  }

  template <typename Map, typename Value>
  void store(Map& map, char32_t c, Value value, const std::string& file,
             const Line& line) {
    auto [it, inserted] = map.try_emplace(c, value);
    if (!inserted) {
      warn(file, line.number, "duplicate key " + utf8_encode(c) + ", keeping last");
      it->second = std::move(value);
    }
  }

  void load_pinyin(const std::vector<Line>& lines) {
    const std::string file = "pinyin.tsv";
    for (const auto& line : lines) {
      if (!is_row(line)) continue;
      const auto parts = fields(file, line, 2);
      const char32_t c = key(file, line, parts[0]);
      std::vector<PinyinSeq> readings;
      for (auto raw : split(parts[1], ',')) {
        auto syllable = PinyinSeq::normalize(trim(raw));
        if (!syllable) {
          fail(file, line.number, "bad pinyin syllable '" + std::string(raw) + "'");
        }
        if (std::find(readings.begin(), readings.end(), *syllable) == readings.end()) {
          readings.push_back(std::move(*syllable));
        }
      }
      store(tables_.pinyin_, c, std::move(readings), file, line);
    }
  }

  void load_four_corner(const std::vector<Line>& lines) {
    const std::string file = "fourcorner.tsv";
    for (const auto& line : lines) {
      if (!is_row(line)) continue;
      const auto parts = fields(file, line, 2);
      const char32_t c = key(file, line, parts[0]);
      const auto code = FourCornerCode::parse(trim(parts[1]));
      if (!code) {
        fail(file, line.number, "four-corner code must be exactly 4 digits, got '" +
                                    std::string(parts[1]) + "'");
      }
      store(tables_.four_corner_, c, *code, file, line);
    }
  }

  void parse_alphabet_header(const std::string& file, const Line& line) {
    std::vector<StructureLetter> letters;
    const std::string_view body =
        trim(std::string_view(line.text).substr(std::string_view("#alphabet:").size()));
    for (auto entry : split(body, ',')) {
      entry = trim(entry);
      if (entry.empty()) continue;
      const auto eq = entry.find('=');
      if (eq != 1 || entry.size() < 3 || entry[0] < 'A' || entry[0] > 'Z') {
        fail(file, line.number, "bad alphabet entry '" + std::string(entry) + "'");
      }
      const char letter = entry[0];
      const std::string name(trim(entry.substr(2)));
      if (letter == kAtomicLetter || letter == kUnknownStructureLetter) {
        fail(file, line.number,
             std::string("structure letter ") + letter + " is reserved");
      }
      for (const auto& existing : letters) {
        if (existing.letter == letter || existing.name == name) {
          fail(file, line.number, "structure alphabet is not injective at '" +
                                      std::string(entry) + "'");
        }
      }
      const StructureKind kind = kind_for_name(name);
      if ((kind == StructureKind::LeftRight && letter != 'B') ||
          (kind == StructureKind::UpDown && letter != 'C')) {
        fail(file, line.number, "LeftRight must be B and UpDown must be C");
      }
      letters.push_back({letter, name, kind});
    }
    tables_.structure_letters_ = std::move(letters);
  }

  void load_decomposition(const std::vector<Line>& lines) {
    const std::string file = "decomp.tsv";
    for (const auto& line : lines) {
      if (line.text.starts_with("#alphabet:")) {
        parse_alphabet_header(file, line);
        continue;
      }
      if (!is_row(line)) continue;
      auto parts = split(line.text, '\t');
      if (parts.size() == 2) parts.emplace_back();  // atomic row without trailing tab
      if (parts.size() != 3) {
        fail(file, line.number, "expected 3 tab-separated fields, got " +
                                    std::to_string(parts.size()));
      }
      const char32_t c = key(file, line, parts[0]);
      const auto letter_text = trim(parts[1]);
      if (letter_text.size() != 1) fail(file, line.number, "bad structure letter");

      Decomposition dec;
      std::u32string comps;
      try {
        comps = utf8_decode(trim(parts[2]));
      } catch (const Error& e) {
        fail(file, line.number, e.what());
      }
      if (letter_text[0] == kAtomicLetter) {
        if (!comps.empty()) fail(file, line.number, "atomic row lists components");
      } else {
        if (comps.size() < 2) {
          fail(file, line.number, "compound row needs at least two components");
        }
        const auto& known = tables_.structure_letters_;
        const auto it = std::find_if(known.begin(), known.end(), [&](const auto& s) {
          return s.letter == letter_text[0];
        });
        if (it == known.end()) {
          warn(file, line.number,
               "undeclared structure letter " + std::string(letter_text) + ", using Z");
          dec.kind = StructureKind::Other;
          dec.letter = kUnknownStructureLetter;
        } else {
          dec.kind = it->kind;
          dec.letter = it->letter;
        }
        dec.components.assign(comps.begin(), comps.end());
      }
      store(tables_.decomposition_, c, std::move(dec), file, line);
    }
  }

  void load_strokes(const std::vector<Line>& lines) {
    const std::string file = "strokes.tsv";
    bool have_header = false;
    for (const auto& line : lines) {
      if (line.text.starts_with("#strokes:")) {
        std::u32string symbols;
        try {
          symbols = utf8_decode(trim(
              std::string_view(line.text).substr(std::string_view("#strokes:").size())));
        } catch (const Error& e) {
          fail(file, line.number, e.what());
        }
        std::vector<char32_t> alphabet;
        for (char32_t s : symbols) {
          if (s == U' ') continue;
          if (std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end()) {
            fail(file, line.number, "duplicate stroke symbol " + utf8_encode(s));
          }
          alphabet.push_back(s);
        }
        if (alphabet.empty() || alphabet.size() > 255) {
          fail(file, line.number, "stroke alphabet must have 1 to 255 symbols");
        }
        tables_.stroke_alphabet_ = std::move(alphabet);
        have_header = true;
        continue;
      }
      if (!is_row(line)) continue;
      if (!have_header) fail(file, line.number, "row before '#strokes:' header");
      const auto parts = fields(file, line, 2);
      const char32_t c = key(file, line, parts[0]);
      std::u32string symbols;
      try {
        symbols = utf8_decode(trim(parts[1]));
      } catch (const Error& e) {
        fail(file, line.number, e.what());
      }
      if (symbols.empty()) fail(file, line.number, "empty stroke sequence");
      StrokeSeq seq;
      const auto& alphabet = tables_.stroke_alphabet_;
      for (char32_t s : symbols) {
        const auto it = std::find(alphabet.begin(), alphabet.end(), s);
        if (it == alphabet.end()) {
          fail(file, line.number, "stroke " + utf8_encode(s) + " not in alphabet");
        }
        seq.ids.push_back(static_cast<std::uint8_t>(it - alphabet.begin()));
      }
      store(tables_.strokes_, c, std::move(seq), file, line);
    }
  }

  void check_components() {
    std::vector<char32_t> keys;
    for (const auto& [c, dec] : tables_.decomposition_) {
      if (!dec.atomic()) keys.push_back(c);
    }
    std::sort(keys.begin(), keys.end());
    for (char32_t c : keys) {
      for (char32_t comp : tables_.decomposition_.at(c).components) {
        if (!tables_.four_corner_.contains(comp)) {
          tables_.warnings_.push_back("decomp.tsv: component " + utf8_encode(comp) +
                                      " of " + utf8_encode(c) +
                                      " has no four-corner entry");
        }
      }
    }
  }

  std::filesystem::path dir_;
  CharTables tables_;
};

CharTables load_tables(const std::filesystem::path& dir) {
  return TablesLoader(dir).load();
}

}  // namespace disc
