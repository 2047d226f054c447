#pragma once

// Domain types for interlinear glossed text and the morphological line parser.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "igt/error.hpp"

namespace igt {

enum class Split { train, eval, test };

std::string_view to_string(Split s);
// Throws InputError for anything other than "train", "eval", "test".
Split parse_split(std::string_view s);

struct IgtRecord {
  std::string id;
  std::string transcription;
  std::optional<std::string> segmentation;
  std::string glosses;
  std::optional<std::string> translation;
  std::optional<std::string> glottocode;
  std::optional<std::string> metalang_glottocode;
  std::optional<std::string> language_name;
  std::string source;
  Split split = Split::train;

  bool operator==(const IgtRecord&) const = default;
};

// Throws InputError when transcription or glosses is blank.
void validate(const IgtRecord& rec);

enum class Boundary : char { none, affix, clitic };

// '-' for affix, '=' for clitic, '\0' for none.
char boundary_char(Boundary b);

struct Morpheme {
  std::string form;
  Boundary before = Boundary::none;

  bool operator==(const Morpheme&) const = default;
};

using Word = std::vector<Morpheme>;

// A line as words of boundary-joined morphemes. The first morpheme of every
// word has Boundary::none; forms may be empty only when the source line had
// adjacent or dangling boundary markers ("a--b", "-x").
struct MorphStructure {
  std::vector<Word> words;

  std::size_t morpheme_count() const;
  bool operator==(const MorphStructure&) const = default;
};

// Splits on whitespace, then on '-' and '='. '.' is never a boundary. The line
// is NFC-normalized first. Total: never throws on valid UTF-8.
MorphStructure parse_line(std::string_view line);
Word parse_word(std::string_view word);

std::string detokenize(const MorphStructure& ms);
std::string detokenize(const Word& w);

// Literal null morpheme.
inline constexpr std::string_view kNullMorpheme = "0";
// Placeholder gloss emitted by the lookup glosser for unknown material.
inline constexpr std::string_view kUnknownGloss = "???";

// True iff every character is Unicode punctuation (P*). The boundary markers
// standing alone, the null morpheme and the unknown-gloss placeholder are
// never punctuation tokens.
bool is_punctuation_token(std::string_view tok);

// Structure-only rendering over {x, -, =, ' '}.
class AbstractSequence {
 public:
  AbstractSequence() = default;
  explicit AbstractSequence(std::string value);

  const std::string& value() const { return value_; }
  std::size_t size() const { return value_.size(); }
  bool empty() const { return value_.empty(); }
  bool operator==(const AbstractSequence&) const = default;

 private:
  std::string value_;
};

}  // namespace igt
