#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace power {

inline constexpr std::uint32_t kMaxSpelledNumber = 999'999;

// 0..999,999 -> English words ("twenty", "one", ...). nullopt above the limit.
std::optional<std::vector<std::string>> number_to_words(std::uint32_t n);

// "21" -> {"twenty", "one"}; "3rd" -> {"third"}; "21st" -> {"twenty", "first"}.
// nullopt for anything that is not an in-range cardinal or a well-formed ordinal.
std::optional<std::vector<std::string>> expand_numeral(std::string_view token);

}  // namespace power
