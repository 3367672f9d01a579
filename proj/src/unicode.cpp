#include "cogmorf/unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "cogmorf/error.hpp"

namespace cogmorf {

UString utf8_to_u32(std::string_view text) {
  UString out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t offset = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0)
      fail(ErrorCode::format,
           "invalid UTF-8 at byte " + std::to_string(offset));
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string u32_to_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error)
      fail(ErrorCode::format, "cannot encode code point as UTF-8");
    out.append(reinterpret_cast<const char*>(buf), static_cast<size_t>(n));
  }
  return out;
}

bool is_punct_or_digit(char32_t c) noexcept {
  const auto mask = U_GET_GC_MASK(static_cast<UChar32>(c));
  return (mask & (U_GC_P_MASK | U_GC_ND_MASK)) != 0;
}

bool contains_punct_or_digit(std::u32string_view word) noexcept {
  for (char32_t c : word)
    if (is_punct_or_digit(c)) return true;
  return false;
}

bool is_space(char32_t c) noexcept {
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

namespace {
bool ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}
}  // namespace

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && ascii_space(line[i])) ++i;
    size_t j = i;
    while (j < line.size() && !ascii_space(line[j])) ++j;
    if (j > i) tokens.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace cogmorf
