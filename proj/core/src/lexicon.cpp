#include "power/lexicon.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "power/builtin_tables.hpp"
#include "power/numbers.hpp"
#include "power/text_io.hpp"

namespace power {

namespace {

// Lax vowels cannot end a non-final syllable; they keep one coda consonant.
constexpr std::array<std::string_view, 5> kLaxVowels = {"AE", "AH", "EH", "IH", "UH"};

bool is_lax(Phoneme p) {
  return std::find(kLaxVowels.begin(), kLaxVowels.end(), p.symbol()) != kLaxVowels.end();
}

bool is_comment_or_blank(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

// "WORD(2)" -> "WORD"
std::string_view strip_alternate_marker(std::string_view head) {
  if (head.size() < 4 || head.back() != ')') return head;
  const auto open = head.rfind('(');
  if (open == std::string_view::npos || open == 0) return head;
  const auto digits = head.substr(open + 1, head.size() - open - 2);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return head;
  }
  return head.substr(0, open);
}

bool is_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Joins pronunciations of the parts of one written word: the parts keep their
// own syllables and are separated by syllable boundaries only.
Pronunciation join_parts(const std::vector<Pronunciation>& parts, std::string_view word, bool oov) {
  Pronunciation out;
  out.source_word = std::string(word);
  out.oov = oov;
  out.tokens.push_back(PronToken::word_boundary());
  for (const auto& part : parts) {
    out.tokens.insert(out.tokens.end(), part.tokens.begin() + 1, part.tokens.end() - 1);
  }
  out.tokens.push_back(PronToken::word_boundary());
  return out;
}

}  // namespace

std::string fold_case(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pronunciation

std::size_t Pronunciation::syllable_count() const {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const PronToken& t) { return t.kind == TokenKind::SyllableBoundary; }));
}

PhoneString Pronunciation::phones() const {
  PhoneString out;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Phone) out.push_back(t.phone);
  }
  return out;
}

std::string Pronunciation::to_string() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    switch (t.kind) {
      case TokenKind::WordBoundary: out += '|'; break;
      case TokenKind::SyllableBoundary: out += '#'; break;
      case TokenKind::Phone: out += t.phone.symbol(); break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rule tables

OnsetTable OnsetTable::parse(std::string_view text) {
  OnsetTable table;
  for (auto line : split_lines(text)) {
    if (is_comment_or_blank(line)) continue;
    auto phones = parse_phones(line);
    if (std::any_of(phones.begin(), phones.end(), [](Phoneme p) { return p.is_vowel(); })) {
      throw LoadError(fmt::format("onset '{}' contains a vowel", trim(line)));
    }
    table.onsets_.insert(std::move(phones));
  }
  return table;
}

OnsetTable OnsetTable::load(const std::filesystem::path& path) { return parse(read_text_file(path)); }

const OnsetTable& OnsetTable::builtin() {
  static const OnsetTable table = parse(builtin::onset_table());
  return table;
}

bool OnsetTable::is_legal(std::span<const Phoneme> onset) const {
  if (onset.empty()) return true;
  return onsets_.contains(PhoneString(onset.begin(), onset.end()));
}

LetterTable LetterTable::parse(std::string_view text) {
  LetterTable table;
  for (auto line : split_lines(text)) {
    if (is_comment_or_blank(line)) continue;
    auto fields = split_whitespace(line);
    if (fields.size() < 2 || fields[0].size() != 1) {
      throw LoadError(fmt::format("malformed letter rule '{}'", trim(line)));
    }
    char key = fold_case(fields[0])[0];
    PhoneString phones;
    for (std::size_t i = 1; i < fields.size(); ++i) phones.push_back(Phoneme::parse(fields[i]));
    table.letters_[key] = std::move(phones);
  }
  return table;
}

LetterTable LetterTable::load(const std::filesystem::path& path) { return parse(read_text_file(path)); }

const LetterTable& LetterTable::builtin() {
  static const LetterTable table = parse(builtin::letter_table());
  return table;
}

const PhoneString* LetterTable::find(char c) const {
  if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  auto it = letters_.find(c);
  return it == letters_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Syllabification

Pronunciation syllabify(std::span<const Phoneme> phones, const OnsetTable& onsets) {
  if (phones.empty()) throw ArgumentError("cannot syllabify an empty phone string");

  std::vector<std::size_t> nuclei;
  for (std::size_t i = 0; i < phones.size(); ++i) {
    if (phones[i].is_vowel()) nuclei.push_back(i);
  }

  // First phone index of each syllable.
  std::vector<std::size_t> starts{0};
  for (std::size_t v = 0; v + 1 < nuclei.size(); ++v) {
    const std::size_t left = nuclei[v];
    const std::size_t right = nuclei[v + 1];
    const std::size_t cluster = right - left - 1;
    std::size_t limit = cluster;
    if (cluster > 0 && is_lax(phones[left])) --limit;
    std::size_t onset = 0;
    for (std::size_t k = limit; k > 0; --k) {
      if (onsets.is_legal(phones.subspan(right - k, k))) {
        onset = k;
        break;
      }
    }
    starts.push_back(right - onset);
  }

  Pronunciation out;
  out.tokens.reserve(phones.size() + starts.size() + 2);
  out.tokens.push_back(PronToken::word_boundary());
  std::size_t next = 0;
  for (std::size_t i = 0; i < phones.size(); ++i) {
    if (next < starts.size() && starts[next] == i) {
      out.tokens.push_back(PronToken::syllable_boundary());
      ++next;
    }
    out.tokens.push_back(PronToken::of(phones[i]));
  }
  out.tokens.push_back(PronToken::word_boundary());
  return out;
}

// ---------------------------------------------------------------------------
// Lexicon

Lexicon::Lexicon() : onsets_(OnsetTable::builtin()), letters_(LetterTable::builtin()) {}

Lexicon::Lexicon(std::unordered_map<std::string, std::vector<PhoneString>> entries, OnsetTable onsets,
                 LetterTable letters)
    : entries_(std::move(entries)), onsets_(std::move(onsets)), letters_(std::move(letters)) {}

const std::vector<PhoneString>* Lexicon::lookup(std::string_view word) const {
  auto it = entries_.find(fold_case(word));
  return it == entries_.end() ? nullptr : &it->second;
}

PhoneString Lexicon::spell(std::string_view run) const {
  PhoneString out;
  for (char c : run) {
    if (const auto* phones = letters_.find(c)) out.insert(out.end(), phones->begin(), phones->end());
  }
  return out;
}

std::vector<Pronunciation> Lexicon::pronounce_parts(std::string_view word, bool& any_oov) const {
  std::vector<Pronunciation> parts;

  if (auto numeral = expand_numeral(word)) {
    for (const auto& w : *numeral) {
      parts.push_back(pronounce(w));
      any_oov = any_oov || parts.back().oov;
    }
    return parts;
  }

  if (word.find_first_of("-'") != std::string_view::npos) {
    std::size_t pos = 0;
    bool after_apostrophe = false;
    while (pos <= word.size()) {
      std::size_t sep = word.find_first_of("-'", pos);
      if (sep == std::string_view::npos) sep = word.size();
      const std::string_view piece = word.substr(pos, sep - pos);
      if (!piece.empty()) {
        if (after_apostrophe && piece == "s" && !parts.empty()) {
          // possessive / contracted 's attaches to the preceding syllable
          auto& tokens = parts.back().tokens;
          tokens.insert(tokens.end() - 1, PronToken::of(Phoneme::parse("Z")));
        } else {
          parts.push_back(pronounce(piece));
          any_oov = any_oov || parts.back().oov;
        }
      }
      after_apostrophe = sep < word.size() && word[sep] == '\'';
      pos = sep + 1;
    }
    if (!parts.empty()) return parts;
  }

  // Spell the remainder run by run: letters (dictionary first), digits, symbols.
  any_oov = true;
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i + 1;
    const bool letters = is_letter(word[i]);
    const bool digits = is_digit(word[i]);
    if (letters || digits) {
      while (j < word.size() && (letters ? is_letter(word[j]) : is_digit(word[j]))) ++j;
    }
    const std::string_view run = word.substr(i, j - i);
    PhoneString phones;
    if (letters && run.size() < word.size()) {
      if (const auto* hit = lookup(run)) phones = hit->front();
    } else if (digits) {
      if (auto numeral = expand_numeral(run)) {
        for (const auto& w : *numeral) {
          auto p = pronounce(w).phones();
          phones.insert(phones.end(), p.begin(), p.end());
        }
      }
    }
    if (phones.empty()) phones = spell(run);
    if (!phones.empty()) {
      parts.push_back(syllabify(phones, onsets_));
    }
    i = j;
  }
  return parts;
}

Pronunciation Lexicon::pronounce(std::string_view word) const {
  const std::string key = fold_case(trim(word));
  if (key.empty()) throw ArgumentError("cannot pronounce an empty word");

  if (const auto* hit = lookup(key)) {
    Pronunciation p = syllabify(hit->front(), onsets_);
    p.source_word = key;
    return p;
  }

  bool any_oov = false;
  auto parts = pronounce_parts(key, any_oov);
  if (parts.empty()) throw ArgumentError(fmt::format("'{}' has no pronounceable characters", key));
  if (parts.size() == 1 && any_oov) {
    parts.front().source_word = key;
    parts.front().oov = true;
    return parts.front();
  }
  return join_parts(parts, key, any_oov);
}

// ---------------------------------------------------------------------------
// Dictionary loading

Lexicon parse_dictionary(std::istream& in, const std::string& source_name, Diagnostics* warnings, OnsetTable onsets,
                         LetterTable letters) {
  std::unordered_map<std::string, std::vector<PhoneString>> entries;
  auto warn = [&](std::size_t line_no, std::string message) {
    if (warnings) warnings->push_back({Severity::Warning, source_name, line_no, std::move(message)});
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.starts_with(";;;")) continue;
    if (auto hash = view.find(" #"); hash != std::string_view::npos) view = trim(view.substr(0, hash));

    auto fields = split_whitespace(view);
    if (fields.size() < 2) {
      warn(line_no, "malformed entry: expected a word followed by phones");
      continue;
    }
    PhoneString phones;
    phones.reserve(fields.size() - 1);
    bool ok = true;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto p = Phoneme::from_symbol(fields[i]);
      if (!p) {
        warn(line_no, fmt::format("malformed entry: unknown phone '{}'", fields[i]));
        ok = false;
        break;
      }
      phones.push_back(*p);
    }
    if (!ok) continue;
    entries[fold_case(strip_alternate_marker(fields[0]))].push_back(std::move(phones));
  }
  if (in.bad()) throw LoadError(fmt::format("error reading dictionary '{}'", source_name));
  return Lexicon(std::move(entries), std::move(onsets), std::move(letters));
}

Lexicon load_dictionary(const std::filesystem::path& path, Diagnostics* warnings, OnsetTable onsets,
                        LetterTable letters) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(fmt::format("cannot open dictionary '{}'", path.string()));
  return parse_dictionary(in, path.string(), warnings, std::move(onsets), std::move(letters));
}

}  // namespace power
