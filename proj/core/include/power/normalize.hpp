#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "power/error.hpp"
#include "power/lexicon.hpp"
#include "power/word_align.hpp"

namespace power {

// word -> canonical spelling (e.g. British -> American). A canonical form is
// never itself a variant, so applying the map twice equals applying it once.
class VariantMap {
 public:
  VariantMap() = default;
  // "variant<TAB>canonical" lines, '#' comments. Malformed lines are reported
  // and skipped; a chained entry (canonical is also a variant) is a LoadError.
  static VariantMap parse(std::string_view text, const std::string& source_name, Diagnostics* warnings = nullptr);
  static VariantMap load(const std::filesystem::path& path, Diagnostics* warnings = nullptr);
  static const VariantMap& builtin();

  std::string_view apply(std::string_view word) const;
  std::size_t size() const noexcept { return map_.size(); }

 private:
  std::unordered_map<std::string, std::string> map_;
};

struct NormRules {
  VariantMap variants = VariantMap::builtin();
  bool lowercase = true;
  bool split_hyphens = false;
};

// Whitespace tokenization, case folding, removal of leading and trailing
// punctuation (internal hyphens and apostrophes survive), variant mapping.
Words normalize_tokens(std::string_view text, const NormRules& rules);

// Rewrites hypothesis words to the reference surface form wherever a Sub or
// SubSpan pairs word runs with identical phone strings. Repeats on the
// re-aligned result until nothing changes, so a second call is a no-op.
// The reference is never modified.
Words oracle_normalize(std::span<const std::string> ref, std::span<const std::string> hyp,
                       const WordAlignment& recombined, const Lexicon& lexicon, std::size_t* rewrites = nullptr);

}  // namespace power
