#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cogmorf {

// Morphs, words and edits are handled as sequences of Unicode scalar values
// so that characters like 'ü' or 'õ' count as one symbol.
using UString = std::u32string;

// Throws Error(format) on malformed UTF-8.
UString utf8_to_u32(std::string_view text);
std::string u32_to_utf8(std::u32string_view text);

// Unicode general category P* (any punctuation) or Nd (decimal digit).
bool is_punct_or_digit(char32_t c) noexcept;
bool contains_punct_or_digit(std::u32string_view word) noexcept;

bool is_space(char32_t c) noexcept;

// Splits a line on ASCII/Unicode whitespace, dropping empty fields.
std::vector<std::string> split_tokens(std::string_view line);

}  // namespace cogmorf
