#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "power/lexicon.hpp"
#include "power/normalize.hpp"
#include "power/phone_align.hpp"
#include "power/text_io.hpp"

namespace power::fixture {

inline const std::filesystem::path kDictPath = POWER_TEST_DICT;
inline const std::filesystem::path kDataDir = POWER_TEST_DATA_DIR;

inline const Lexicon& shipped_lexicon() {
  static const Lexicon lexicon = load_dictionary(kDictPath);
  return lexicon;
}

inline Words words(std::string_view text) {
  Words out;
  for (auto w : split_whitespace(text)) out.emplace_back(w);
  return out;
}

inline PhoneSequence phones(std::string_view text) { return build_phone_sequence(words(text), shipped_lexicon()); }

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("power_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace power::fixture
