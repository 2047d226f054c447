#include "igt/baseline.hpp"

#include "igt/corpus.hpp"
#include "igt/text.hpp"

namespace igt {
namespace {

std::string language_key(const IgtRecord& rec) {
  return rec.glottocode && !rec.glottocode->empty() ? *rec.glottocode
                                                     : std::string(kUndeterminedLanguage);
}

const FrequencyMap* lookup(const LexiconTable& table, std::string_view lang,
                           std::string_view key) {
  auto l = table.find(std::string(lang));
  if (l == table.end()) return nullptr;
  auto k = l->second.find(std::string(key));
  return k == l->second.end() ? nullptr : &k->second;
}

// A whole-word gloss placed on an unsegmented word: inner boundaries become
// '.' so the gloss stays a single unit.
std::string fuse(std::string gloss) {
  for (char& c : gloss)
    if (c == '-' || c == '=') c = '.';
  return gloss;
}

}  // namespace

const std::string* most_frequent(const FrequencyMap& candidates) {
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  // std::map iterates in lexicographic order, so strict > keeps the smallest.
  for (const auto& [cand, count] : candidates) {
    if (best == nullptr || count > best_count) {
      best = &cand;
      best_count = count;
    }
  }
  return best;
}

void LexiconBuilder::add(const IgtRecord& rec) {
  if (rec.split != Split::train) return;
  const std::string lang = language_key(rec);

  const std::string transcription = nfc(rec.transcription);
  const auto words = split_whitespace(transcription);
  const MorphStructure gloss = parse_line(rec.glosses);
  const Alignment a = detect_misalignment(rec);

  if (a == Alignment::aligned) {
    const MorphStructure seg = parse_line(*rec.segmentation);
    bool same_shape = seg.words.size() == gloss.words.size();
    for (std::size_t i = 0; same_shape && i < seg.words.size(); ++i)
      same_shape = seg.words[i].size() == gloss.words[i].size();
    if (same_shape) {
      for (std::size_t i = 0; i < seg.words.size(); ++i)
        for (std::size_t j = 0; j < seg.words[i].size(); ++j)
          ++lex_.morpheme_to_gloss[lang][seg.words[i][j].form][gloss.words[i][j].form];
      if (words.size() == seg.words.size()) {
        for (std::size_t i = 0; i < words.size(); ++i) {
          const std::string w(words[i]);
          ++lex_.word_to_seg[lang][w][detokenize(seg.words[i])];
          ++lex_.word_to_gloss[lang][w][detokenize(gloss.words[i])];
        }
      }
    }
  } else if (a == Alignment::no_segmentation && words.size() == gloss.words.size()) {
    for (std::size_t i = 0; i < words.size(); ++i)
      ++lex_.word_to_gloss[lang][std::string(words[i])][detokenize(gloss.words[i])];
  }
}

GlossLexicon build_lexicon(std::span<const IgtRecord> records) {
  LexiconBuilder b;
  for (const auto& r : records) b.add(r);
  return std::move(b).lexicon();
}

DecodedPrediction predict(const GlossLexicon& lex, std::string_view glottocode,
                          std::string_view transcription) {
  const std::string lang = glottocode.empty() ? std::string(kUndeterminedLanguage)
                                              : std::string(glottocode);
  const std::string text = nfc(transcription);
  MorphStructure seg_out, gloss_out;

  for (auto word : split_whitespace(text)) {
    Word seg_w, gloss_w;
    if (is_punctuation_token(word)) {
      seg_w = gloss_w = Word{{std::string(word), Boundary::none}};
    } else if (const auto* segs = lookup(lex.word_to_seg, lang, word)) {
      seg_w = parse_word(*most_frequent(*segs));
      for (const auto& m : seg_w) {
        const auto* glosses = lookup(lex.morpheme_to_gloss, lang, m.form);
        const std::string* g = glosses ? most_frequent(*glosses) : nullptr;
        gloss_w.push_back({g ? *g : std::string(kUnknownGloss), m.before});
      }
    } else if (const auto* groups = lookup(lex.word_to_gloss, lang, word)) {
      seg_w = Word{{std::string(word), Boundary::none}};
      gloss_w = Word{{fuse(*most_frequent(*groups)), Boundary::none}};
    }

    // Anything that would break alignment falls back to the placeholder.
    if (seg_w.empty() ||
        is_punctuation_token(detokenize(seg_w)) != is_punctuation_token(detokenize(gloss_w))) {
      seg_w = Word{{std::string(word), Boundary::none}};
      gloss_w = Word{{std::string(kUnknownGloss), Boundary::none}};
    }
    seg_out.words.push_back(std::move(seg_w));
    gloss_out.words.push_back(std::move(gloss_w));
  }

  DecodedPrediction d;
  d.well_formed = true;
  d.glosses = detokenize(gloss_out);
  d.segmentation = detokenize(seg_out);
  return d;
}

}  // namespace igt
