#pragma once

// Frequency-lexicon fallback glosser: most frequent segmentation per word,
// most frequent gloss per morpheme.

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "igt/codecs.hpp"
#include "igt/core.hpp"

namespace igt {

using FrequencyMap = std::map<std::string, std::size_t>;
// glottocode -> key -> candidate -> count
using LexiconTable = std::map<std::string, std::map<std::string, FrequencyMap>>;

struct GlossLexicon {
  LexiconTable morpheme_to_gloss;
  LexiconTable word_to_seg;
  LexiconTable word_to_gloss;

  bool operator==(const GlossLexicon&) const = default;
};

// Highest count wins; ties go to the lexicographically smallest candidate.
// Returns nullptr for an empty map.
const std::string* most_frequent(const FrequencyMap& candidates);

// Accumulates train-split records only. Word maps need transcription words to
// pair one-to-one with segmentation/gloss words; morpheme glosses come from
// aligned segmentation/gloss pairs.
class LexiconBuilder {
 public:
  void add(const IgtRecord& rec);
  const GlossLexicon& lexicon() const& { return lex_; }
  GlossLexicon lexicon() && { return std::move(lex_); }

 private:
  GlossLexicon lex_;
};

GlossLexicon build_lexicon(std::span<const IgtRecord> records);

// Three tiers per word: known segmentation with per-morpheme glosses, known
// whole-word gloss, unknown placeholder. Output is aligned by construction.
DecodedPrediction predict(const GlossLexicon& lex, std::string_view glottocode,
                          std::string_view transcription);

}  // namespace igt
