#pragma once

#include <string_view>

// Text of the rule tables shipped in core/data, embedded at build time.
namespace power::builtin {

std::string_view onset_table();
std::string_view letter_table();
std::string_view closed_class_list();
std::string_view variant_table();

}  // namespace power::builtin
