#pragma once

// Prompt/target encodings for joint segmentation and glossing, and decoders
// for model output.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "igt/core.hpp"

namespace igt {

enum class TaskFormat { multitask_gloss, multitask_seg, concatenated, interleaved };

// CLI spellings: multitask-gloss, multitask-seg, concat, interleaved.
std::string_view to_string(TaskFormat f);
TaskFormat parse_task_format(std::string_view s);

struct DecodedPrediction {
  std::optional<std::string> segmentation;
  std::string glosses;
  bool well_formed = false;
  std::vector<std::string> diagnostics;

  bool operator==(const DecodedPrediction&) const = default;
};

// Malformed model output under DecodeMode::strict.
class FormatError : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

enum class DecodeMode { lenient, strict };

struct EncodedExample {
  std::string prompt;  // instruction, text and translation lines
  std::string target;  // label line(s), e.g. "Glosses: ..."
  std::string full() const { return prompt + "\n" + target; }
};

// language_name, else glottocode, else "unknown".
std::string language_display_name(const IgtRecord& rec);
// Known metalanguage glottocodes map to names; otherwise the raw code.
std::string metalanguage_display_name(const IgtRecord& rec);

// Throws InvariantError when the format needs a segmentation the record lacks
// or the record is misaligned.
EncodedExample encode_example(const IgtRecord& rec, TaskFormat fmt);
std::string encode(const IgtRecord& rec, TaskFormat fmt);

// "<gloss>(<morpheme>)" units joined by the shared boundary, words by spaces.
// Literal '(' ')' '\' are backslash-escaped. Throws InvariantError naming the
// first word whose structure differs.
std::string encode_interleaved_body(const MorphStructure& seg, const MorphStructure& gloss);

// Total in lenient mode: malformed units are dropped (each word keeps its
// parseable prefix) and well_formed is false. Strict mode throws FormatError
// instead. A leading "Output:" label is accepted.
DecodedPrediction decode_interleaved(std::string_view output,
                                     DecodeMode mode = DecodeMode::lenient);

// Looks for a "Segmentation:" line followed by a "Glosses:" line.
DecodedPrediction decode_concatenated(std::string_view output,
                                      DecodeMode mode = DecodeMode::lenient);

}  // namespace igt
