#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace power {

enum class PhoneClass : std::uint8_t { Vowel, Consonant };

// The 39-symbol ARPAbet inventory, stress digits stripped. Vowels first.
inline constexpr std::array<std::string_view, 39> kPhoneInventory = {
    "AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY", "IH",
    "IY", "OW", "OY", "UH", "UW",
    "B",  "CH", "D",  "DH", "F",  "G",  "HH", "JH", "K",  "L",
    "M",  "N",  "NG", "P",  "R",  "S",  "SH", "T",  "TH", "V",
    "W",  "Y",  "Z",  "ZH"};

inline constexpr std::size_t kVowelCount = 15;

// A phone from the fixed inventory, stored as its inventory index.
class Phoneme {
 public:
  constexpr Phoneme() = default;

  // Accepts upper- or lower-case symbols with an optional trailing stress
  // digit ("ae1" -> AE). Returns nullopt for anything outside the inventory.
  static std::optional<Phoneme> from_symbol(std::string_view symbol);
  // Same as from_symbol but throws ClassificationError.
  static Phoneme parse(std::string_view symbol);

  constexpr std::uint8_t id() const noexcept { return id_; }
  constexpr std::string_view symbol() const noexcept { return kPhoneInventory[id_]; }
  constexpr PhoneClass phone_class() const noexcept {
    return id_ < kVowelCount ? PhoneClass::Vowel : PhoneClass::Consonant;
  }
  constexpr bool is_vowel() const noexcept { return id_ < kVowelCount; }

  friend constexpr auto operator<=>(Phoneme, Phoneme) = default;

 private:
  constexpr explicit Phoneme(std::uint8_t id) : id_(id) {}
  std::uint8_t id_ = 0;
};

using PhoneString = std::vector<Phoneme>;

// Vowel iff the symbol is one of the 15 vowels (r-coloured ER included);
// semivowels W and Y are consonants. Throws ClassificationError.
PhoneClass classify_phoneme(std::string_view symbol);

// Parses a whitespace-separated phone list, e.g. "AH0 N AE1 T".
PhoneString parse_phones(std::string_view text);

std::string to_string(const PhoneString& phones);

}  // namespace power
