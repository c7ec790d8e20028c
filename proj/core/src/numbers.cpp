#include "power/numbers.hpp"

#include <array>
#include <charconv>

namespace power {

namespace {

constexpr std::array<const char*, 20> kOnes = {
    "zero",    "one",     "two",       "three",    "four",     "five",    "six",
    "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
    "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen"};

constexpr std::array<const char*, 10> kTens = {"",      "",      "twenty",  "thirty", "forty",
                                               "fifty", "sixty", "seventy", "eighty", "ninety"};

// Irregular ordinals; everything else takes "th" (or y -> ieth).
struct OrdinalForm {
  std::string_view cardinal;
  std::string_view ordinal;
};
constexpr std::array<OrdinalForm, 6> kIrregularOrdinals = {{{"one", "first"},
                                                            {"two", "second"},
                                                            {"three", "third"},
                                                            {"five", "fifth"},
                                                            {"eight", "eighth"},
                                                            {"nine", "ninth"}}};

void below_thousand(std::uint32_t n, std::vector<std::string>& out) {
  if (n >= 100) {
    out.emplace_back(kOnes[n / 100]);
    out.emplace_back("hundred");
    n %= 100;
    if (n == 0) return;
  }
  if (n >= 20) {
    out.emplace_back(kTens[n / 10]);
    if (n % 10 != 0) out.emplace_back(kOnes[n % 10]);
  } else {
    out.emplace_back(kOnes[n]);
  }
}

std::string to_ordinal(const std::string& cardinal) {
  for (const auto& form : kIrregularOrdinals) {
    if (cardinal == form.cardinal) return std::string(form.ordinal);
  }
  if (cardinal == "twelve") return "twelfth";
  if (!cardinal.empty() && cardinal.back() == 'y') return cardinal.substr(0, cardinal.size() - 1) + "ieth";
  return cardinal + "th";
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<std::string>> number_to_words(std::uint32_t n) {
  if (n > kMaxSpelledNumber) return std::nullopt;
  std::vector<std::string> out;
  if (n == 0) {
    out.emplace_back("zero");
    return out;
  }
  if (n >= 1000) {
    below_thousand(n / 1000, out);
    out.emplace_back("thousand");
    n %= 1000;
    if (n == 0) return out;
  }
  below_thousand(n, out);
  return out;
}

std::optional<std::vector<std::string>> expand_numeral(std::string_view token) {
  std::string_view digits = token;
  std::string_view suffix;
  if (token.size() > 2 && !all_digits(token)) {
    digits = token.substr(0, token.size() - 2);
    suffix = token.substr(token.size() - 2);
  }
  if (!all_digits(digits) || digits.size() > 6) return std::nullopt;

  std::uint32_t value = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), value);
  auto words = number_to_words(value);
  if (!words || suffix.empty()) return words;

  // The suffix must agree with the last digit(s): 1st, 2nd, 3rd, 11th, 12th, 13th.
  const std::uint32_t last_two = value % 100;
  const std::uint32_t last = value % 10;
  std::string_view expected = "th";
  if (last_two < 11 || last_two > 13) {
    if (last == 1) expected = "st";
    else if (last == 2) expected = "nd";
    else if (last == 3) expected = "rd";
  }
  if (suffix != expected) return std::nullopt;
  words->back() = to_ordinal(words->back());
  return words;
}

}  // namespace power
