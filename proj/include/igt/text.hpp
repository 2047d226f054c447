#pragma once

// UTF-8 helpers shared by every module. All functions expect well-formed
// UTF-8 and throw igt::InputError otherwise.

#include <string>
#include <string_view>
#include <vector>

namespace igt {

std::string nfc(std::string_view s);

// Decodes to Unicode scalar values; the input is NFC-normalized first.
std::u32string code_points(std::string_view s);

bool is_valid_utf8(std::string_view s);
void require_utf8(std::string_view s);

bool is_unicode_whitespace(char32_t c);
bool is_unicode_punctuation(char32_t c);

// Splits on runs of Unicode whitespace; views point into `s`.
std::vector<std::string_view> split_whitespace(std::string_view s);

// NFC, trims, and collapses whitespace runs to a single ASCII space.
std::string normalize_space(std::string_view s);

std::string trim(std::string_view s);

}  // namespace igt
