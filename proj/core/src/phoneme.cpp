#include "power/phoneme.hpp"

#include <cctype>

#include "power/error.hpp"
#include "power/text_io.hpp"

namespace power {

std::optional<Phoneme> Phoneme::from_symbol(std::string_view symbol) {
  if (!symbol.empty() && symbol.back() >= '0' && symbol.back() <= '2') symbol.remove_suffix(1);
  if (symbol.empty() || symbol.size() > 2) return std::nullopt;
  char buf[2];
  for (std::size_t i = 0; i < symbol.size(); ++i) {
    buf[i] = static_cast<char>(std::toupper(static_cast<unsigned char>(symbol[i])));
  }
  const std::string_view upper(buf, symbol.size());
  for (std::size_t id = 0; id < kPhoneInventory.size(); ++id) {
    if (kPhoneInventory[id] == upper) return Phoneme(static_cast<std::uint8_t>(id));
  }
  return std::nullopt;
}

Phoneme Phoneme::parse(std::string_view symbol) {
  if (auto p = from_symbol(symbol)) return *p;
  throw ClassificationError(std::string(symbol));
}

PhoneClass classify_phoneme(std::string_view symbol) { return Phoneme::parse(symbol).phone_class(); }

PhoneString parse_phones(std::string_view text) {
  PhoneString out;
  for (auto sym : split_whitespace(text)) out.push_back(Phoneme::parse(sym));
  return out;
}

std::string to_string(const PhoneString& phones) {
  std::string out;
  for (const auto& p : phones) {
    if (!out.empty()) out += ' ';
    out += p.symbol();
  }
  return out;
}

}  // namespace power
