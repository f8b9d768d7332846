#include "propaganda/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "propaganda/errors.hpp"

namespace propaganda::unicode {

namespace {

[[noreturn]] void bad_utf8(std::size_t offset) {
  throw EncodingError("invalid UTF-8 at byte offset " + std::to_string(offset));
}

std::uint32_t category_mask(char32_t cp) {
  return U_GET_GC_MASK(static_cast<UChar32>(cp));
}

}  // namespace

std::u32string from_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len;
    char32_t cp;
    char32_t min;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4, cp = b0 & 0x07, min = 0x10000;
    } else {
      bad_utf8(i);
    }
    if (i + len > n) bad_utf8(i);
    for (int k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) bad_utf8(i);
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) bad_utf8(i);
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string to_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append_utf8(out, cp);
  return out;
}

bool is_letter(char32_t cp) { return category_mask(cp) & U_GC_L_MASK; }
bool is_digit(char32_t cp) { return category_mask(cp) & U_GC_ND_MASK; }
bool is_number(char32_t cp) { return category_mask(cp) & U_GC_N_MASK; }
bool is_mark(char32_t cp) { return category_mask(cp) & U_GC_M_MASK; }
bool is_punctuation(char32_t cp) { return category_mask(cp) & U_GC_P_MASK; }
bool is_symbol(char32_t cp) { return category_mask(cp) & U_GC_S_MASK; }
bool is_upper(char32_t cp) { return u_isupper(static_cast<UChar32>(cp)); }
bool is_lower(char32_t cp) { return u_islower(static_cast<UChar32>(cp)); }
bool is_alnum(char32_t cp) { return category_mask(cp) & (U_GC_L_MASK | U_GC_N_MASK); }

bool is_space(char32_t cp) {
  if (cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\v' || cp == U'\f') return true;
  return category_mask(cp) & U_GC_Z_MASK;
}

bool is_control(char32_t cp) {
  return !is_space(cp) && (category_mask(cp) & (U_GC_CC_MASK | U_GC_CF_MASK));
}

char32_t to_lower(char32_t cp) { return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))); }

std::u32string to_lower(std::u32string_view text) {
  std::u32string out(text);
  for (auto& cp : out) cp = to_lower(cp);
  return out;
}

std::u32string lower_strip_accents(std::u32string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfd = icu::Normalizer2::getNFDInstance(status);
  std::u32string out;
  out.reserve(text.size());
  if (U_FAILURE(status)) {
    for (char32_t cp : text) out.push_back(to_lower(cp));
    return out;
  }
  for (char32_t cp : text) {
    icu::UnicodeString decomposed;
    if (!nfd->getDecomposition(static_cast<UChar32>(cp), decomposed)) {
      if (!is_mark(cp)) out.push_back(to_lower(cp));
      continue;
    }
    for (int32_t i = 0; i < decomposed.length();) {
      const UChar32 c = decomposed.char32At(i);
      i += U16_LENGTH(c);
      if (!is_mark(static_cast<char32_t>(c))) out.push_back(to_lower(static_cast<char32_t>(c)));
    }
  }
  return out;
}

}  // namespace propaganda::unicode
