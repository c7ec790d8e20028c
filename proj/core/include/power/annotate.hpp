#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "power/error.hpp"
#include "power/word_align.hpp"

namespace power {

enum class WordClass : std::uint8_t { Open, Closed };

// Closed iff the word is in the function-word list.
class WordClassifier {
 public:
  WordClassifier() = default;
  static WordClassifier parse(std::string_view text);
  static WordClassifier load(const std::filesystem::path& path);
  static const WordClassifier& builtin();

  WordClass classify(std::string_view word) const;
  std::size_t size() const noexcept { return closed_.size(); }

 private:
  std::unordered_set<std::string> closed_;
};

// Suffix-stripping English lemmatizer with an optional word->lemma override map.
// lemmatize() is idempotent.
class Lemmatizer {
 public:
  Lemmatizer() = default;
  // TSV "word<TAB>lemma", '#' comments. Throws LoadError if unreadable.
  static Lemmatizer load(const std::filesystem::path& path, Diagnostics* warnings = nullptr);
  static Lemmatizer parse(std::string_view text, const std::string& source_name, Diagnostics* warnings = nullptr);

  std::string lemmatize(std::string_view word) const;

 private:
  std::unordered_map<std::string, std::string> map_;
  std::unordered_set<std::string> lemmas_;
};

// Rule part of Lemmatizer: s/es/ies, ed, ing, er/est with consonant
// undoubling and e-restoration, applied until nothing changes.
std::string lemmatize_by_rules(std::string_view word);

// The word-class typed error partition. S keys carry a morphology flag;
// closed->open substitutions have a single key.
enum class TypedKey : std::uint8_t {
  D_closed,
  D_open,
  I_closed,
  I_open,
  S_closed_closed_morph,
  S_closed_closed_nomorph,
  S_closed_open_nomorph,
  S_open_closed_morph,
  S_open_closed_nomorph,
  S_open_open_morph,
  S_open_open_nomorph,
  SS_closed_span,
  SS_open_span,
  SS_span_closed,
  SS_span_open,
  SS_span_span,
};

inline constexpr std::size_t kTypedKeyCount = 16;

// "D.closed", "S.open_open.morph", "SS.open_span", ...
std::string_view key_name(TypedKey key);
std::array<TypedKey, kTypedKeyCount> all_typed_keys();
bool is_span_key(TypedKey key);

// Error weight per typed key; SS keys count max(|ref|, |hyp|).
struct TypedCounts {
  std::array<std::size_t, kTypedKeyCount> counts{};

  std::size_t& operator[](TypedKey k) { return counts[static_cast<std::size_t>(k)]; }
  std::size_t operator[](TypedKey k) const { return counts[static_cast<std::size_t>(k)]; }
  std::size_t total() const;
  TypedCounts& operator+=(const TypedCounts& other);
  friend bool operator==(const TypedCounts&, const TypedCounts&) = default;
};

struct Annotator {
  WordClassifier classes = WordClassifier::builtin();
  Lemmatizer lemmas;
};

// Key for one error block; throws ArgumentError for a Correct block.
TypedKey classify_error(const AlignedBlock& block, std::span<const std::string> ref,
                        std::span<const std::string> hyp, const Annotator& annotator);

TypedCounts type_errors(const WordAlignment& alignment, std::span<const std::string> ref,
                        std::span<const std::string> hyp, const Annotator& annotator);

struct ConfusionPair {
  std::string ref;  // words joined by single spaces
  std::string hyp;
  std::size_t count = 0;

  friend bool operator==(const ConfusionPair&, const ConfusionPair&) = default;
};

// Counts Sub and SubSpan pairs across utterances.
class ConfusionCounter {
 public:
  void add(const WordAlignment& alignment, std::span<const std::string> ref, std::span<const std::string> hyp);
  // By count descending, then ref, then hyp.
  std::vector<ConfusionPair> ranked() const;

 private:
  std::unordered_map<std::string, std::size_t> counts_;  // key: ref + '\t' + hyp
};

}  // namespace power
