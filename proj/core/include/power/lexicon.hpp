#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "power/error.hpp"
#include "power/phoneme.hpp"

namespace power {

enum class TokenKind : std::uint8_t { Phone, WordBoundary, SyllableBoundary };

// One element of a boundary-annotated pronunciation. Boundary tokens carry
// no phone; `phone` is only meaningful when kind == Phone.
struct PronToken {
  TokenKind kind = TokenKind::Phone;
  Phoneme phone{};

  static constexpr PronToken word_boundary() { return {TokenKind::WordBoundary, {}}; }
  static constexpr PronToken syllable_boundary() { return {TokenKind::SyllableBoundary, {}}; }
  static constexpr PronToken of(Phoneme p) { return {TokenKind::Phone, p}; }

  constexpr bool is_boundary() const noexcept { return kind != TokenKind::Phone; }

  friend constexpr bool operator==(const PronToken& a, const PronToken& b) noexcept {
    return a.kind == b.kind && (a.kind != TokenKind::Phone || a.phone == b.phone);
  }
};

// Token sequence of the form | # p p # p p |  (| word, # syllable boundary).
struct Pronunciation {
  std::vector<PronToken> tokens;
  std::string source_word;
  bool oov = false;

  std::size_t syllable_count() const;
  // Phones only, boundaries stripped.
  PhoneString phones() const;
  // "| # AH N # AE T |"
  std::string to_string() const;
};

// Legal syllable onsets for maximal-onset syllabification.
class OnsetTable {
 public:
  OnsetTable() = default;
  static OnsetTable parse(std::string_view text);
  static OnsetTable load(const std::filesystem::path& path);
  static const OnsetTable& builtin();

  bool is_legal(std::span<const Phoneme> onset) const;
  std::size_t size() const noexcept { return onsets_.size(); }

 private:
  std::set<PhoneString> onsets_;
};

// Character -> phone sequence table used for out-of-vocabulary spelling.
class LetterTable {
 public:
  LetterTable() = default;
  static LetterTable parse(std::string_view text);
  static LetterTable load(const std::filesystem::path& path);
  static const LetterTable& builtin();

  const PhoneString* find(char c) const;

 private:
  std::map<char, PhoneString> letters_;
};

// Splits a stress-free phone string into syllables: one per vowel nucleus,
// intervocalic consonants assigned by maximal onset against `onsets`, except
// that a lax vowel (AE AH EH IH UH) keeps at least one consonant as coda.
// A vowel-less input becomes a single syllable.
Pronunciation syllabify(std::span<const Phoneme> phones, const OnsetTable& onsets = OnsetTable::builtin());

// Pronunciation dictionary plus the rule tables needed to pronounce any word.
// Immutable once constructed; safe to share across threads.
class Lexicon {
 public:
  Lexicon();
  Lexicon(std::unordered_map<std::string, std::vector<PhoneString>> entries,
          OnsetTable onsets = OnsetTable::builtin(), LetterTable letters = LetterTable::builtin());

  // All pronunciations for a word in dictionary order, or nullptr.
  // Lookup is case-insensitive.
  const std::vector<PhoneString>* lookup(std::string_view word) const;
  std::size_t size() const noexcept { return entries_.size(); }

  const OnsetTable& onsets() const noexcept { return onsets_; }
  const LetterTable& letters() const noexcept { return letters_; }

  // Dictionary hit: first listed pronunciation. Otherwise the fallback chain:
  // numbers/ordinals, then hyphen/apostrophe splitting, then spelling with
  // the letter table (oov = true). Throws ArgumentError for empty input or a
  // string with nothing pronounceable.
  Pronunciation pronounce(std::string_view word) const;

 private:
  PhoneString spell(std::string_view run) const;
  std::vector<Pronunciation> pronounce_parts(std::string_view word, bool& any_oov) const;

  std::unordered_map<std::string, std::vector<PhoneString>> entries_;
  OnsetTable onsets_;
  LetterTable letters_;
};

// Parses a CMU-format dictionary: ";;;" comment lines, "WORD  PH1 PH2 ...",
// alternates as "WORD(2)". Trailing "# ..." remarks are ignored. Malformed
// lines are skipped and reported to `warnings` with their line number.
Lexicon parse_dictionary(std::istream& in, const std::string& source_name, Diagnostics* warnings = nullptr,
                         OnsetTable onsets = OnsetTable::builtin(), LetterTable letters = LetterTable::builtin());

// Throws LoadError when the file cannot be read.
Lexicon load_dictionary(const std::filesystem::path& path, Diagnostics* warnings = nullptr,
                        OnsetTable onsets = OnsetTable::builtin(), LetterTable letters = LetterTable::builtin());

// Lowercases ASCII letters.
std::string fold_case(std::string_view s);

}  // namespace power
