#include "igt/text.hpp"

#include <unicode/bytestream.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "igt/error.hpp"

namespace igt {
namespace {

const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr)
    throw Error("ICU NFC normalizer unavailable");
  return *n;
}

bool is_ascii(std::string_view s) {
  for (unsigned char c : s)
    if (c >= 0x80) return false;
  return true;
}

template <typename F>
void for_each_code_point(std::string_view s, F&& f) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const auto len = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < len) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(p, i, len, c);
    if (c < 0) throw InputError("invalid UTF-8 byte sequence at offset " + std::to_string(start));
    f(static_cast<char32_t>(c), start, i);
  }
}

}  // namespace

bool is_valid_utf8(std::string_view s) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const auto len = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < len) {
    UChar32 c;
    U8_NEXT(p, i, len, c);
    if (c < 0) return false;
  }
  return true;
}

void require_utf8(std::string_view s) {
  if (!is_valid_utf8(s)) throw InputError("invalid UTF-8 input");
}

std::string nfc(std::string_view s) {
  if (is_ascii(s)) return std::string(s);
  require_utf8(s);
  const auto& norm = nfc_instance();
  UErrorCode status = U_ZERO_ERROR;
  const icu::StringPiece piece(s.data(), static_cast<int32_t>(s.size()));
  if (norm.isNormalizedUTF8(piece, status) && U_SUCCESS(status)) return std::string(s);
  status = U_ZERO_ERROR;
  std::string out;
  icu::StringByteSink<std::string> sink(&out);
  norm.normalizeUTF8(0, piece, sink, nullptr, status);
  if (U_FAILURE(status)) throw InputError("NFC normalization failed");
  return out;
}

std::u32string code_points(std::string_view s) {
  std::u32string out;
  if (is_ascii(s)) {
    out.assign(s.begin(), s.end());
    return out;
  }
  const std::string normalized = nfc(s);
  out.reserve(normalized.size());
  for_each_code_point(normalized, [&](char32_t c, int32_t, int32_t) { out.push_back(c); });
  return out;
}

bool is_unicode_whitespace(char32_t c) {
  if (c < 0x80) return c == ' ' || (c >= '\t' && c <= '\r');
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

bool is_unicode_punctuation(char32_t c) { return u_ispunct(static_cast<UChar32>(c)); }

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  int32_t word_start = -1;
  for_each_code_point(s, [&](char32_t c, int32_t start, int32_t) {
    if (is_unicode_whitespace(c)) {
      if (word_start >= 0) {
        out.push_back(s.substr(word_start, start - word_start));
        word_start = -1;
      }
    } else if (word_start < 0) {
      word_start = start;
    }
  });
  if (word_start >= 0) out.push_back(s.substr(word_start));
  return out;
}

std::string normalize_space(std::string_view s) {
  const std::string normalized = nfc(s);
  std::string out;
  out.reserve(normalized.size());
  for (auto w : split_whitespace(normalized)) {
    if (!out.empty()) out.push_back(' ');
    out.append(w);
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto words = split_whitespace(s);
  if (words.empty()) return {};
  const auto* begin = words.front().data();
  const auto* end = words.back().data() + words.back().size();
  return std::string(begin, end);
}

}  // namespace igt
