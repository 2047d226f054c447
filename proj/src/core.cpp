#include "igt/core.hpp"

#include "igt/text.hpp"

namespace igt {

std::string_view to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::eval: return "eval";
    case Split::test: return "test";
  }
  return "train";
}

Split parse_split(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "eval") return Split::eval;
  if (s == "test") return Split::test;
  throw InputError("unknown split value \"" + std::string(s) + "\"");
}

void validate(const IgtRecord& rec) {
  if (trim(rec.transcription).empty())
    throw InputError("record " + rec.id + ": transcription is empty");
  if (trim(rec.glosses).empty()) throw InputError("record " + rec.id + ": glosses is empty");
}

char boundary_char(Boundary b) {
  switch (b) {
    case Boundary::affix: return '-';
    case Boundary::clitic: return '=';
    case Boundary::none: break;
  }
  return '\0';
}

std::size_t MorphStructure::morpheme_count() const {
  std::size_t n = 0;
  for (const auto& w : words) n += w.size();
  return n;
}

Word parse_word(std::string_view word) {
  Word out;
  Morpheme current;
  for (char c : word) {
    if (c == '-' || c == '=') {
      out.push_back(std::move(current));
      current = Morpheme{{}, c == '-' ? Boundary::affix : Boundary::clitic};
    } else {
      current.form.push_back(c);
    }
  }
  out.push_back(std::move(current));
  return out;
}

MorphStructure parse_line(std::string_view line) {
  const std::string normalized = nfc(line);
  MorphStructure ms;
  for (auto w : split_whitespace(normalized)) ms.words.push_back(parse_word(w));
  return ms;
}

std::string detokenize(const Word& w) {
  std::string out;
  for (const auto& m : w) {
    if (m.before != Boundary::none) out.push_back(boundary_char(m.before));
    out += m.form;
  }
  return out;
}

std::string detokenize(const MorphStructure& ms) {
  std::string out;
  for (std::size_t i = 0; i < ms.words.size(); ++i) {
    if (i) out.push_back(' ');
    out += detokenize(ms.words[i]);
  }
  return out;
}

bool is_punctuation_token(std::string_view tok) {
  if (tok.empty() || tok == "-" || tok == "=" || tok == kNullMorpheme || tok == kUnknownGloss)
    return false;
  for (char32_t c : code_points(tok))
    if (!is_unicode_punctuation(c)) return false;
  return true;
}

AbstractSequence::AbstractSequence(std::string value) : value_(std::move(value)) {}

}  // namespace igt
